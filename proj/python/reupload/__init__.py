# Copyright 2026 The reupload Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Single-qubit data re-uploading classifier."""

import json

from ._core import (
    ConfigError,
    EmulatorExecutor,
    ExactExecutor,
    InvalidArgument,
    ParameterSet,
    TrainingError,
    accuracy,
    class_balance,
    execute,
    fuse,
    label_point,
    match_width,
    predict,
    problem_shape,
    problems,
    sample_dataset,
    train,
)
from ._core import run_experiment as _run_experiment


def run_experiment(config="", **overrides):
    """Runs one experiment. `config` is key=value text; keyword overrides use
    the same keys with dots replaced by double underscores."""
    lines = [config] + [f"{k.replace('__', '.')} = {v}" for k, v in overrides.items()]
    return json.loads(_run_experiment("\n".join(lines)))["rows"][0]


__all__ = [
    "ConfigError",
    "EmulatorExecutor",
    "ExactExecutor",
    "InvalidArgument",
    "ParameterSet",
    "TrainingError",
    "accuracy",
    "class_balance",
    "execute",
    "fuse",
    "label_point",
    "match_width",
    "predict",
    "problem_shape",
    "problems",
    "run_experiment",
    "sample_dataset",
    "train",
]
