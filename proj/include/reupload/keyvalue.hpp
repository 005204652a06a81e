// Copyright 2026 The reupload Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace reupload {

/// Plain-text `key = value` file with dotted section names. Blank lines and
/// lines starting with '#' are ignored. Entry order is preserved.
class KeyValueFile {
 public:
  static KeyValueFile parse(std::istream& in);

  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }
  bool has(const std::string& key) const;

  /// Typed getters throw ConfigError naming the key on malformed values.
  const std::string& get(const std::string& key) const;
  double get_double(const std::string& key) const;
  std::int64_t get_int(const std::string& key) const;
  bool get_bool(const std::string& key) const;

  void set(const std::string& key, std::string value);
  /// Writes with 17 significant digits so values round-trip.
  void set_double(const std::string& key, double value);

  void write(std::ostream& out) const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

std::string format_double(double v);

}  // namespace reupload
