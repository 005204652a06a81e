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

#include "reupload/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

#include "reupload/errors.hpp"
#include "reupload/rng.hpp"

namespace reupload::opt {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace

Result sep_cma_es(const Objective& f, std::vector<double> mean, const CmaOptions& o) {
  const std::size_t n = mean.size();
  if (n == 0) throw InvalidArgument("cannot optimize zero parameters");
  if (o.population < 2) throw InvalidArgument("population must be at least 2");
  if (!(o.sigma0 > 0.0)) throw InvalidArgument("initial spread must be positive");

  const auto lambda = static_cast<std::size_t>(o.population);
  const std::size_t mu = lambda / 2;
  std::vector<double> w(mu);
  for (std::size_t i = 0; i < mu; ++i) w[i] = std::log(mu + 0.5) - std::log(static_cast<double>(i + 1));
  const double wsum = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& v : w) v /= wsum;
  const double mueff = 1.0 / std::inner_product(w.begin(), w.end(), w.begin(), 0.0);

  const double dn = static_cast<double>(n);
  const double cs = (mueff + 2.0) / (dn + mueff + 5.0);
  const double ds = 1.0 + 2.0 * std::max(0.0, std::sqrt((mueff - 1.0) / (dn + 1.0)) - 1.0) + cs;
  const double cc = (4.0 + mueff / dn) / (dn + 4.0 + 2.0 * mueff / dn);
  double c1 = 2.0 / ((dn + 1.3) * (dn + 1.3) + mueff);
  double cmu = std::min(1.0 - c1, 2.0 * (mueff - 2.0 + 1.0 / mueff) / ((dn + 2.0) * (dn + 2.0) + mueff));
  // The diagonal model tolerates faster learning rates.
  const double boost = (dn + 2.0) / 3.0;
  c1 = std::min(1.0, c1 * boost);
  cmu = std::min(1.0 - c1, cmu * boost);
  const double chi_n = std::sqrt(dn) * (1.0 - 1.0 / (4.0 * dn) + 1.0 / (21.0 * dn * dn));

  std::vector<double> diag_c(n, 1.0), ps(n, 0.0), pc(n, 0.0);
  double sigma = o.sigma0;
  CounterRng rng(o.seed);

  Result best;
  best.x = mean;
  best.f = std::numeric_limits<double>::infinity();

  const std::size_t window = 10 + static_cast<std::size_t>(std::ceil(30.0 * dn / static_cast<double>(lambda)));
  std::deque<double> recent;

  std::vector<std::vector<double>> z(lambda, std::vector<double>(n)), y(lambda, std::vector<double>(n));
  std::vector<std::vector<double>> x(lambda, std::vector<double>(n));
  std::vector<double> fit(lambda);
  std::vector<std::size_t> order(lambda);

  for (std::size_t gen = 0; best.evaluations + lambda <= o.max_evaluations; ++gen) {
    for (std::size_t k = 0; k < lambda; ++k) {
      for (std::size_t j = 0; j < n; ++j) {
        z[k][j] = rng.normal();
        y[k][j] = std::sqrt(diag_c[j]) * z[k][j];
        x[k][j] = mean[j] + sigma * y[k][j];
      }
      fit[k] = f(x[k]);
      ++best.evaluations;
      if (fit[k] < best.f) {
        best.f = fit[k];
        best.x = x[k];
      }
    }
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fit[a] < fit[b]; });

    std::vector<double> ymean(n, 0.0), zmean(n, 0.0);
    for (std::size_t i = 0; i < mu; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        ymean[j] += w[i] * y[order[i]][j];
        zmean[j] += w[i] * z[order[i]][j];
      }
    for (std::size_t j = 0; j < n; ++j) mean[j] += sigma * ymean[j];

    const double csn = std::sqrt(cs * (2.0 - cs) * mueff);
    for (std::size_t j = 0; j < n; ++j) ps[j] = (1.0 - cs) * ps[j] + csn * zmean[j];
    const double ps_norm = norm(ps);
    const double decay = 1.0 - std::pow(1.0 - cs, 2.0 * static_cast<double>(gen + 1));
    const bool hsig = ps_norm / std::sqrt(decay) < (1.4 + 2.0 / (dn + 1.0)) * chi_n;
    const double ccn = std::sqrt(cc * (2.0 - cc) * mueff);
    for (std::size_t j = 0; j < n; ++j) pc[j] = (1.0 - cc) * pc[j] + (hsig ? ccn * ymean[j] : 0.0);

    for (std::size_t j = 0; j < n; ++j) {
      double rank_mu = 0.0;
      for (std::size_t i = 0; i < mu; ++i) rank_mu += w[i] * y[order[i]][j] * y[order[i]][j];
      const double rank_one = pc[j] * pc[j] + (hsig ? 0.0 : cc * (2.0 - cc) * diag_c[j]);
      diag_c[j] = (1.0 - c1 - cmu) * diag_c[j] + c1 * rank_one + cmu * rank_mu;
    }
    sigma *= std::exp((cs / ds) * (ps_norm / chi_n - 1.0));

    recent.push_back(fit[order[0]]);
    if (recent.size() > window) recent.pop_front();
    if (recent.size() == window) {
      const auto [lo, hi] = std::minmax_element(recent.begin(), recent.end());
      if (*hi - *lo < o.tolerance) {
        best.converged = true;
        break;
      }
    }
    const double max_c = *std::max_element(diag_c.begin(), diag_c.end());
    if (sigma * std::sqrt(max_c) < 1e-12) {
      best.converged = true;
      break;
    }
  }
  return best;
}

Result lbfgs_b(const Objective& f, const Gradient& grad, std::vector<double> x, const LbfgsOptions& o) {
  const std::size_t n = x.size();
  if (n == 0) throw InvalidArgument("cannot optimize zero parameters");
  std::vector<double> lo = o.lower.empty() ? std::vector<double>(n, -std::numeric_limits<double>::infinity()) : o.lower;
  std::vector<double> hi = o.upper.empty() ? std::vector<double>(n, std::numeric_limits<double>::infinity()) : o.upper;
  if (lo.size() != n || hi.size() != n) throw InvalidArgument("bound vectors must match the parameter count");
  auto project = [&](std::vector<double>& v) {
    for (std::size_t i = 0; i < n; ++i) v[i] = std::clamp(v[i], lo[i], hi[i]);
  };
  project(x);

  Result r;
  double fx = f(x);
  ++r.evaluations;
  std::vector<double> g = grad(x);
  r.evaluations += o.gradient_cost;

  std::deque<std::vector<double>> s_hist, y_hist;
  std::deque<double> rho_hist;
  std::vector<double> free_mask(n), d(n), xn(n), alpha_buf;

  while (r.evaluations + o.gradient_cost + 1 <= o.max_evaluations) {
    double pg_inf = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const bool pinned = (x[i] <= lo[i] && g[i] > 0.0) || (x[i] >= hi[i] && g[i] < 0.0);
      free_mask[i] = pinned ? 0.0 : 1.0;
      pg_inf = std::max(pg_inf, std::abs(g[i] * free_mask[i]));
    }
    if (pg_inf < o.gradient_tolerance) {
      r.converged = true;
      break;
    }

    // Two-loop recursion restricted to free variables.
    for (std::size_t i = 0; i < n; ++i) d[i] = -g[i] * free_mask[i];
    alpha_buf.assign(s_hist.size(), 0.0);
    for (std::size_t k = s_hist.size(); k-- > 0;) {
      double a = 0.0;
      for (std::size_t i = 0; i < n; ++i) a += s_hist[k][i] * free_mask[i] * d[i];
      a *= rho_hist[k];
      alpha_buf[k] = a;
      for (std::size_t i = 0; i < n; ++i) d[i] -= a * y_hist[k][i] * free_mask[i];
    }
    if (!s_hist.empty()) {
      const auto& s = s_hist.back();
      const auto& y = y_hist.back();
      const double gamma = dot(s, y) / dot(y, y);
      for (double& v : d) v *= gamma;
    }
    for (std::size_t k = 0; k < s_hist.size(); ++k) {
      double b = 0.0;
      for (std::size_t i = 0; i < n; ++i) b += y_hist[k][i] * free_mask[i] * d[i];
      b *= rho_hist[k];
      for (std::size_t i = 0; i < n; ++i) d[i] += (alpha_buf[k] - b) * s_hist[k][i] * free_mask[i];
    }
    double slope = 0.0;
    for (std::size_t i = 0; i < n; ++i) slope += d[i] * g[i];
    if (!(slope < 0.0)) {
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
      for (std::size_t i = 0; i < n; ++i) d[i] = -g[i] * free_mask[i];
    }

    double step = s_hist.empty() ? std::min(1.0, 1.0 / std::max(norm(d), 1e-12)) : 1.0;
    bool accepted = false;
    double fn = fx;
    for (int bt = 0; bt < 40 && r.evaluations + 1 <= o.max_evaluations; ++bt) {
      for (std::size_t i = 0; i < n; ++i) xn[i] = x[i] + step * d[i];
      project(xn);
      fn = f(xn);
      ++r.evaluations;
      double decrease = 0.0;
      for (std::size_t i = 0; i < n; ++i) decrease += g[i] * (xn[i] - x[i]);
      if (fn <= fx + 1e-4 * decrease) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (s_hist.empty()) {
        r.converged = true;
        break;
      }
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
      continue;
    }
    if (r.evaluations + o.gradient_cost > o.max_evaluations) {
      if (fn < fx) {
        x = xn;
        fx = fn;
      }
      break;
    }
    std::vector<double> gn = grad(xn);
    r.evaluations += o.gradient_cost;
    std::vector<double> s(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = xn[i] - x[i];
      y[i] = gn[i] - g[i];
    }
    const double sy = dot(s, y);
    if (sy > 1e-10 * norm(s) * norm(y)) {
      s_hist.push_back(std::move(s));
      y_hist.push_back(std::move(y));
      rho_hist.push_back(1.0 / sy);
      if (s_hist.size() > o.memory) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
    }
    const double change = fx - fn;
    x = xn;
    g = std::move(gn);
    fx = fn;
    if (change < o.tolerance * std::max(1.0, std::abs(fx))) {
      r.converged = true;
      break;
    }
  }
  r.x = std::move(x);
  r.f = fx;
  return r;
}

}  // namespace reupload::opt
