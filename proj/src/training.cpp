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

#include "reupload/training.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>

#include "reupload/errors.hpp"
#include "reupload/optimize.hpp"
#include "reupload/rng.hpp"

namespace reupload {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBound = 4.0 * kPi;

// Counts evaluations across restarts and records best-so-far improvements.
class TrackedObjective {
 public:
  TrackedObjective(const ParameterSet& shape, const Dataset& data, const LabelStateSet& labels)
      : shape_(shape), data_(data), labels_(labels), best_(shape), last_valid_(shape) {}

  double operator()(std::span<const double> flat) {
    const double loss = loss_unchecked(flat);
    ++evaluations_;
    if (!std::isfinite(loss)) throw TrainingFailure("chi^2 evaluated to a non-finite value", last_valid_);
    last_valid_ = shape_.with_flat(flat);
    if (loss < best_loss_) {
      best_loss_ = loss;
      best_ = last_valid_;
      history_.push_back({evaluations_, loss});
    }
    return loss;
  }

  std::vector<double> gradient(std::span<const double> flat, double step) {
    std::vector<double> g(flat.size());
    std::vector<double> probe(flat.begin(), flat.end());
    for (std::size_t i = 0; i < probe.size(); ++i) {
      const double keep = probe[i];
      probe[i] = keep + step;
      const double up = (*this)(probe);
      probe[i] = keep - step;
      const double down = (*this)(probe);
      probe[i] = keep;
      g[i] = (up - down) / (2.0 * step);
    }
    return g;
  }

  const ParameterSet& best() const { return best_; }
  double best_loss() const { return best_loss_; }
  std::vector<LossPoint>& history() { return history_; }

 private:
  double loss_unchecked(std::span<const double> flat) const {
    for (double v : flat)
      if (!std::isfinite(v)) return std::numeric_limits<double>::quiet_NaN();
    return chi2_loss(shape_.with_flat(flat), data_, labels_, exact_);
  }

  const ParameterSet& shape_;
  const Dataset& data_;
  const LabelStateSet& labels_;
  ExactExecutor exact_;
  ParameterSet best_;
  ParameterSet last_valid_;
  double best_loss_ = std::numeric_limits<double>::infinity();
  std::size_t evaluations_ = 0;
  std::vector<LossPoint> history_;
};

void run_once(TrackedObjective& objective, std::vector<double> x0, const OptimizerConfig& cfg,
              std::uint64_t stream) {
  opt::Objective f = [&](std::span<const double> x) { return objective(x); };
  if (cfg.method == OptimizerMethod::Evolutionary) {
    opt::CmaOptions o;
    o.population = cfg.population;
    o.sigma0 = cfg.initial_spread;
    o.max_evaluations = cfg.max_evaluations;
    o.tolerance = cfg.convergence_tol;
    o.seed = stream;
    opt::sep_cma_es(f, std::move(x0), o);
  } else {
    opt::LbfgsOptions o;
    o.max_evaluations = cfg.max_evaluations;
    o.gradient_cost = 2 * x0.size();
    o.tolerance = cfg.convergence_tol;
    o.lower.assign(x0.size(), -kBound);
    o.upper.assign(x0.size(), kBound);
    opt::Gradient g = [&](std::span<const double> x) { return objective.gradient(x, cfg.fd_step); };
    opt::lbfgs_b(f, g, std::move(x0), o);
  }
}

TrainReport finish_report(TrackedObjective& objective, const Dataset& train, const LabelStateSet& labels,
                          std::uint64_t seed, const Dataset* test,
                          std::chrono::steady_clock::time_point start) {
  ExactExecutor exact;
  TrainReport report{objective.best(), std::move(objective.history()), objective.best_loss(), 0.0, 0.0, 0.0, seed};
  report.train_accuracy = accuracy(report.theta_sim, train, labels, exact);
  if (test != nullptr && !test->empty()) report.test_accuracy = accuracy(report.theta_sim, *test, labels, exact);
  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace

std::string_view to_string(OptimizerMethod m) {
  return m == OptimizerMethod::Evolutionary ? "evolutionary" : "quasi-newton";
}

OptimizerMethod parse_optimizer_method(std::string_view s) {
  if (s == "evolutionary" || s == "derivative-free-evolutionary" || s == "cma") return OptimizerMethod::Evolutionary;
  if (s == "quasi-newton" || s == "quasi-newton-bounded" || s == "lbfgsb") return OptimizerMethod::QuasiNewton;
  throw InvalidArgument("unknown optimizer method '" + std::string(s) + "'");
}

void OptimizerConfig::validate() const {
  if (max_evaluations == 0) throw InvalidArgument("max_evaluations must be positive");
  if (!(initial_spread > 0.0)) throw InvalidArgument("initial_spread must be positive");
  if (restarts == 0) throw InvalidArgument("restarts must be positive");
  if (population < 2) throw InvalidArgument("population must be at least 2");
  if (!(fd_step > 0.0)) throw InvalidArgument("fd_step must be positive");
  if (!(convergence_tol >= 0.0)) throw InvalidArgument("convergence_tol must be non-negative");
}

void ScanConfig::validate() const {
  if (grid < 3 || grid % 2 == 0) throw InvalidArgument("scan grid must be odd and at least 3");
  if (!(half_width > 0.0)) throw InvalidArgument("scan half_width must be positive");
  if (passes < 1) throw InvalidArgument("scan passes must be positive");
  if (shots_per_point < 1) throw InvalidArgument("shots_per_point must be positive");
}

TrainReport train_simulated(Problem problem, std::size_t layers, Ansatz ansatz, const Dataset& train,
                            const OptimizerConfig& cfg, std::uint64_t seed, const Dataset* test) {
  const auto start = std::chrono::steady_clock::now();
  cfg.validate();
  if (train.empty()) throw InvalidArgument("training set is empty");
  if (layers == 0) throw InvalidArgument("at least one layer is required");
  const LabelStateSet labels = label_states(problem_classes(problem));
  const ParameterSet shape = ParameterSet::zeros(ansatz, problem_dim(problem), layers);

  TrackedObjective objective(shape, train, labels);
  for (std::size_t r = 0; r < cfg.restarts; ++r) {
    CounterRng init(mix_key({seed, 0x1A17ull, r}));
    std::vector<double> x0(shape.size());
    for (double& v : x0) v = init.uniform(-kPi, kPi);
    run_once(objective, std::move(x0), cfg, mix_key({seed, 0x0B7ull, r}));
  }
  return finish_report(objective, train, labels, seed, test, start);
}

TrainReport train_from(const ParameterSet& start_point, const Dataset& train, const LabelStateSet& labels,
                       const OptimizerConfig& cfg, std::uint64_t seed, const Dataset* test) {
  const auto start = std::chrono::steady_clock::now();
  cfg.validate();
  if (train.empty()) throw InvalidArgument("training set is empty");
  TrackedObjective objective(start_point, train, labels);
  objective(start_point.flat());
  const auto flat = start_point.flat();
  run_once(objective, std::vector<double>(flat.begin(), flat.end()), cfg, mix_key({seed, 0x0B7ull}));
  return finish_report(objective, train, labels, seed, test, start);
}

std::vector<double> fd_gradient(const ParameterSet& theta, const Dataset& data, const LabelStateSet& labels,
                                double step) {
  if (!(step > 0.0)) throw InvalidArgument("finite-difference step must be positive");
  ExactExecutor exact;
  std::vector<double> flat(theta.flat().begin(), theta.flat().end());
  std::vector<double> g(flat.size());
  for (std::size_t i = 0; i < flat.size(); ++i) {
    const double keep = flat[i];
    flat[i] = keep + step;
    const double up = chi2_loss(theta.with_flat(flat), data, labels, exact);
    flat[i] = keep - step;
    const double down = chi2_loss(theta.with_flat(flat), data, labels, exact);
    flat[i] = keep;
    g[i] = (up - down) / (2.0 * step);
  }
  return g;
}

FineTuneResult fine_tune(const ParameterSet& theta_sim, const Executor& executor, const Dataset& eval_data,
                         const LabelStateSet& labels, const ScanConfig& cfg, std::uint64_t scan_seed) {
  cfg.validate();
  if (eval_data.empty()) throw InvalidArgument("evaluation set is empty");
  const auto measuring = executor.with_shots(cfg.shots_per_point);
  const std::size_t n = theta_sim.size();

  std::vector<double> offsets(static_cast<std::size_t>(cfg.grid));
  for (int k = 0; k < cfg.grid; ++k) offsets[k] = cfg.half_width * (2.0 * k / (cfg.grid - 1) - 1.0);

  std::vector<double> current(theta_sim.flat().begin(), theta_sim.flat().end());
  std::uint64_t step = 0;
  auto measure = [&](const std::vector<double>& flat, std::uint64_t point) {
    return accuracy(theta_sim.with_flat(flat), eval_data, labels, *measuring, mix_key({scan_seed, step, point}));
  };

  FineTuneResult result{theta_sim, {}, 0.0, 0.0};
  result.trace.push_back({0, 0, measure(current, 0), false});

  // A single parameter scans alone.
  const std::size_t pair_count = n >= 2 ? n - 1 : 1;
  for (int pass = 1; pass <= cfg.passes; ++pass) {
    const std::vector<double> anchor = current;
    bool any_move = false;
    for (std::size_t p = 0; p < pair_count; ++p) {
      ++step;
      const std::size_t q = n >= 2 ? p + 1 : p;
      const double cp = current[p], cq = current[q];
      double best_acc = -1.0, best_move = 0.0;
      double best_p = cp, best_q = cq;
      std::vector<double> candidate = current;
      std::uint64_t point = 0;
      for (double da : offsets) {
        for (double db : offsets) {
          if (q == p && db != 0.0) continue;
          candidate[p] = std::clamp(cp + da, anchor[p] - cfg.half_width, anchor[p] + cfg.half_width);
          candidate[q] = q == p ? candidate[p]
                                : std::clamp(cq + db, anchor[q] - cfg.half_width, anchor[q] + cfg.half_width);
          const double acc = measure(candidate, point++);
          const double move = std::hypot(candidate[p] - cp, candidate[q] - cq);
          if (acc > best_acc || (acc == best_acc && move < best_move)) {
            best_acc = acc;
            best_move = move;
            best_p = candidate[p];
            best_q = candidate[q];
          }
        }
      }
      const bool moved = best_p != cp || best_q != cq;
      current[p] = best_p;
      current[q] = best_q;
      any_move = any_move || moved;
      result.trace.push_back({pass, p, best_acc, moved});
    }
    if (!any_move) break;
  }

  ++step;
  const ParameterSet tuned = theta_sim.with_flat(current);
  const std::uint64_t final_key = mix_key({scan_seed, 0xF1A1ull});
  result.accuracy_final = accuracy(tuned, eval_data, labels, *measuring, final_key);
  result.accuracy_start = accuracy(theta_sim, eval_data, labels, *measuring, final_key);
  if (result.accuracy_final < result.accuracy_start) {
    result.theta_q = theta_sim;
    result.accuracy_final = result.accuracy_start;
  } else {
    result.theta_q = tuned;
  }
  return result;
}

Evaluation evaluate(const ParameterSet& theta, const Dataset& data, const LabelStateSet& labels,
                    const Executor& executor, int shots, std::uint64_t stream_seed) {
  if (data.empty()) throw InvalidArgument("evaluation set is empty");
  if (!executor.exact() && shots < 1) throw InvalidArgument("shots must be >= 1 for a noisy executor");
  const auto run = executor.exact() ? nullptr : executor.with_shots(shots);
  const Executor& ex = run ? *run : executor;
  Evaluation out;
  out.predictions.reserve(data.size());
  std::size_t correct = 0;
  for (std::size_t i = 0; i < data.samples.size(); ++i) {
    const Sample& s = data.samples[i];
    out.predictions.push_back(predict(theta, s.x, labels, ex, stream_seed, i));
    if (out.predictions.back().guess == s.c) ++correct;
  }
  out.accuracy = static_cast<double>(correct) / static_cast<double>(data.size());
  return out;
}

}  // namespace reupload
