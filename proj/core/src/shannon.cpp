// Copyright 2026 The voi Authors
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

#include "voi/shannon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include <fmt/format.h>

#include "parallel.hpp"
#include "voi/errors.hpp"

namespace voi {
namespace {

constexpr double kFlushToZero = 1e-300;
// Doubling of the beta bracket stops at 2^60 / (utility scale).
constexpr int kMaxBetaDoublings = 60;
// Bisection aims to pin the attained information this tightly before the
// bracket endpoints are mixed.
constexpr double kBracketInformation = 1e-10;
constexpr double kSaturationSlack = 1e-13;
constexpr int kMixingSteps = 100;

// Alternating updates for a fixed non-negative kernel K(a, b) (one row per
// state, row maximum 1):
//   P(b|a) = r(b) K(a,b) / sum_b' r(b') K(a,b'),   r(b) <- sum_a Q(a) P(b|a).
// With K = exp(beta (u - max u)) this maximizes beta*EU - I; with a 0/1 mask
// it minimizes I over channels supported on the mask.
//
// Both are the concave dual g(r) = sum_a Q(a) ln (K r)_a over the simplex,
// with gradient c(b) = sum_a Q(a) K(a,b) / (K r)_a (the update is
// r(b) <- r(b) c(b)). By Jensen, g(r*) - g(r) <= ln max_b c(b), and the
// channel built from r is at least that close to the best Lagrangian; that
// bound is the stopping rule.
//
// Plain updates crawl near a change of support, so a short extrapolated
// (SQUAREM) warm-up is followed by active-set Newton steps on g.
class DualObjective {
 public:
  DualObjective(const Distribution& prior, std::span<const double> kernel,
                std::size_t n_actions)
      : prior_(prior),
        kernel_(kernel),
        n_states_(prior.size()),
        n_actions_(n_actions),
        z_(n_states_) {}

  std::size_t n_states() const noexcept { return n_states_; }
  std::size_t n_actions() const noexcept { return n_actions_; }
  double kernel(std::size_t a, std::size_t b) const noexcept {
    return kernel_[a * n_actions_ + b];
  }
  double prior(std::size_t a) const noexcept { return prior_[a]; }
  std::span<const double> normalizers() const noexcept { return z_; }

  double value(std::span<const double> r) const {
    double g = 0.0;
    for (std::size_t a = 0; a < n_states_; ++a) {
      if (prior_[a] == 0.0) continue;
      double z = 0.0;
      for (std::size_t b = 0; b < n_actions_; ++b) z += r[b] * kernel(a, b);
      if (z <= 0.0) return -std::numeric_limits<double>::infinity();
      g += prior_[a] * std::log(z);
    }
    return g;
  }

  // Gradient at r; also caches (K r)_a. Returns the gap bound.
  double gradient(std::span<const double> r, std::vector<double>& grad) {
    std::fill(grad.begin(), grad.end(), 0.0);
    for (std::size_t a = 0; a < n_states_; ++a) {
      double z = 0.0;
      for (std::size_t b = 0; b < n_actions_; ++b) z += r[b] * kernel(a, b);
      if (z <= 0.0) {
        throw SolverError("alternating updates: a state lost all support");
      }
      z_[a] = z;
      for (std::size_t b = 0; b < n_actions_; ++b) {
        grad[b] += prior_[a] * kernel(a, b) / z;
      }
    }
    const double top = *std::max_element(grad.begin(), grad.end());
    return std::max(0.0, std::log(top));
  }

  // r <- r * grad, renormalized, with tiny masses flushed.
  void update(std::span<const double> r, std::span<const double> grad,
              std::vector<double>& next) const {
    double total = 0.0;
    for (std::size_t b = 0; b < n_actions_; ++b) {
      double p = r[b] * grad[b];
      if (p < kFlushToZero) p = 0.0;
      next[b] = p;
      total += p;
    }
    for (double& p : next) p /= total;
  }

  std::vector<double> channel_rows(std::span<const double> r) const {
    std::vector<double> rows(n_states_ * n_actions_);
    for (std::size_t a = 0; a < n_states_; ++a) {
      double* row = rows.data() + a * n_actions_;
      double z = 0.0;
      for (std::size_t b = 0; b < n_actions_; ++b) {
        double w = r[b] * kernel(a, b);
        if (w < kFlushToZero) w = 0.0;
        row[b] = w;
        z += w;
      }
      if (z <= 0.0) {
        throw SolverError("alternating updates: a state lost all support");
      }
      for (std::size_t b = 0; b < n_actions_; ++b) row[b] /= z;
    }
    return rows;
  }

 private:
  const Distribution& prior_;
  std::span<const double> kernel_;
  std::size_t n_states_;
  std::size_t n_actions_;
  std::vector<double> z_;
};

constexpr std::size_t kWarmupMaps = 300;
constexpr int kExtrapolationBacktracks = 12;
constexpr int kLineSearchSteps = 60;
constexpr double kArmijo = 1e-4;
constexpr double kNewtonRidge = 1e-13;

// Solves the dense system M x = rhs in place (partial pivoting). Returns
// false when M is numerically singular.
bool solve_dense(std::vector<double>& m, std::vector<double>& rhs,
                 std::size_t n) {
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t i = col + 1; i < n; ++i) {
      if (std::abs(m[i * n + col]) > std::abs(m[pivot * n + col])) pivot = i;
    }
    if (!(std::abs(m[pivot * n + col]) > 0.0)) return false;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m[col * n + j], m[pivot * n + j]);
      std::swap(rhs[col], rhs[pivot]);
    }
    for (std::size_t i = col + 1; i < n; ++i) {
      const double f = m[i * n + col] / m[col * n + col];
      if (f == 0.0) continue;
      for (std::size_t j = col; j < n; ++j) m[i * n + j] -= f * m[col * n + j];
      rhs[i] -= f * rhs[col];
    }
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = rhs[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= m[i * n + j] * rhs[j];
    rhs[i] = s / m[i * n + i];
  }
  return std::all_of(rhs.begin(), rhs.end(), [](double x) { return std::isfinite(x); });
}

// One Newton step on g restricted to the face {r_b > 0} plus any zero
// coordinate whose gradient exceeds 1. Coordinates that the step drives to
// zero leave the support. Returns false when no ascent was found.
bool newton_step(DualObjective& dual, std::vector<double>& r,
                 std::span<const double> grad) {
  const std::size_t n = dual.n_actions();
  std::vector<std::size_t> active;
  for (std::size_t b = 0; b < n; ++b) {
    if (r[b] > 0.0 || grad[b] > 1.0) active.push_back(b);
  }

  std::vector<double> dir(n, 0.0);
  for (int attempt = 0; attempt < static_cast<int>(n); ++attempt) {
    const std::size_t k = active.size();
    const std::size_t dim = k + 1;
    std::vector<double> m(dim * dim, 0.0);
    std::vector<double> rhs(dim, 0.0);
    const auto z = dual.normalizers();
    for (std::size_t a = 0; a < dual.n_states(); ++a) {
      const double w = dual.prior(a) / (z[a] * z[a]);
      if (w == 0.0) continue;
      for (std::size_t i = 0; i < k; ++i) {
        const double ki = dual.kernel(a, active[i]);
        if (ki == 0.0) continue;
        for (std::size_t j = 0; j < k; ++j) {
          m[i * dim + j] -= w * ki * dual.kernel(a, active[j]);
        }
      }
    }
    double diag = 0.0;
    for (std::size_t i = 0; i < k; ++i) diag = std::max(diag, -m[i * dim + i]);
    for (std::size_t i = 0; i < k; ++i) {
      m[i * dim + i] -= kNewtonRidge * std::max(diag, 1.0);
      m[i * dim + k] = -1.0;
      m[k * dim + i] = 1.0;
      rhs[i] = -grad[active[i]];
    }
    if (!solve_dense(m, rhs, dim)) return false;

    // A zero coordinate may not move inward; drop it and solve again.
    std::size_t blocked = k;
    for (std::size_t i = 0; i < k; ++i) {
      if (r[active[i]] == 0.0 && rhs[i] < 0.0) {
        blocked = i;
        break;
      }
    }
    if (blocked == k) {
      std::fill(dir.begin(), dir.end(), 0.0);
      for (std::size_t i = 0; i < k; ++i) dir[active[i]] = rhs[i];
      break;
    }
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(blocked));
    if (active.empty()) return false;
  }

  double slope = 0.0;
  double reach = 1.0;
  std::size_t hits = n;
  for (std::size_t b = 0; b < n; ++b) {
    slope += grad[b] * dir[b];
    if (dir[b] < 0.0 && -r[b] / dir[b] < reach) {
      reach = -r[b] / dir[b];
      hits = b;
    }
  }
  if (!(slope > 0.0)) return false;

  const double g0 = dual.value(r);
  std::vector<double> trial(n);
  double t = reach;
  for (int k = 0; k < kLineSearchSteps; ++k) {
    double total = 0.0;
    for (std::size_t b = 0; b < n; ++b) {
      trial[b] = std::max(0.0, r[b] + t * dir[b]);
      if (t == reach && b == hits) trial[b] = 0.0;
      total += trial[b];
    }
    for (double& x : trial) x /= total;
    if (dual.value(trial) >= g0 + kArmijo * t * slope) {
      r.swap(trial);
      return true;
    }
    t *= 0.5;
  }
  return false;
}

TiltSolution alternate(const Distribution& prior, std::span<const double> kernel,
                       std::size_t n_actions, std::size_t max_iterations,
                       double tolerance) {
  DualObjective dual(prior, kernel, n_actions);
  std::vector<double> r(n_actions, 1.0 / static_cast<double>(n_actions));
  std::vector<double> grad(n_actions), r1(n_actions), r2(n_actions),
      trial(n_actions);

  TiltSolution out{Channel::identity(1), {}, 0.0, 0, false};
  auto finish = [&](bool converged) {
    out.converged = converged;
    out.channel = Channel(prior.size(), n_actions, dual.channel_rows(r));
    out.marginal = std::move(r);
    return std::move(out);
  };
  // Evaluates the gap at r; true when done.
  auto check = [&]() {
    out.gap = dual.gradient(r, grad);
    ++out.iterations;
    return out.gap <= tolerance || out.iterations >= max_iterations;
  };

  bool newton = false;
  while (true) {
    if (check()) return finish(out.gap <= tolerance);
    if (newton) {
      if (newton_step(dual, r, grad)) continue;
      newton = false;  // fall back to the plain map from here on
    }
    if (!newton && out.iterations >= kWarmupMaps && out.iterations < 2 * kWarmupMaps) {
      newton = true;
      if (newton_step(dual, r, grad)) continue;
      newton = false;
    }

    // Extrapolated step: r1 = F(r), r2 = F(r1).
    dual.update(r, grad, r1);
    std::vector<double> r0 = r;
    r.swap(r1);
    if (check()) return finish(out.gap <= tolerance);
    dual.update(r, grad, r2);
    double s_norm = 0.0, v_norm = 0.0;
    for (std::size_t b = 0; b < n_actions; ++b) {
      const double s = r[b] - r0[b];
      const double v = r2[b] - 2.0 * r[b] + r0[b];
      s_norm += s * s;
      v_norm += v * v;
    }
    bool accepted = false;
    if (v_norm > 0.0 && s_norm > 0.0) {
      double alpha = std::min(-1.0, -std::sqrt(s_norm / v_norm));
      const double g2 = dual.value(r2);
      for (int k = 0; k < kExtrapolationBacktracks && alpha < -1.0; ++k) {
        bool positive = true;
        double total = 0.0;
        for (std::size_t b = 0; b < n_actions; ++b) {
          const double s = r[b] - r0[b];
          const double v = r2[b] - 2.0 * r[b] + r0[b];
          double x = r0[b] - 2.0 * alpha * s + alpha * alpha * v;
          if (r2[b] == 0.0) {
            x = 0.0;
          } else if (!(x > 0.0)) {
            positive = false;
            break;
          }
          trial[b] = x;
          total += x;
        }
        if (positive) {
          for (double& x : trial) x /= total;
          if (dual.value(trial) >= g2) {
            accepted = true;
            break;
          }
        }
        alpha = 0.5 * (alpha - 1.0);
      }
    }
    r.swap(accepted ? trial : r2);
  }
}

std::vector<double> tilt_kernel(const DecisionProblem& prob, double beta) {
  const std::size_t n_a = prob.n_actions();
  std::vector<double> kernel(prob.n_states() * n_a);
  for (std::size_t a = 0; a < prob.n_states(); ++a) {
    const auto row = prob.utility_row(a);
    const double top = beta * *std::max_element(row.begin(), row.end());
    for (std::size_t b = 0; b < n_a; ++b) {
      const double w = std::exp(beta * row[b] - top);
      kernel[a * n_a + b] = w < kFlushToZero ? 0.0 : w;
    }
  }
  return kernel;
}

Channel constant_channel(const DecisionProblem& prob) {
  const std::vector<std::size_t> assignment(prob.n_states(),
                                            prob.best_constant_action());
  return Channel::deterministic(assignment, prob.n_actions());
}

void require_lambda(double lambda) {
  if (!std::isfinite(lambda) || lambda < 0.0) {
    throw InputError(fmt::format("lambda must be finite and >= 0, got {}",
                                 lambda));
  }
}

// A channel with its attained information at a given beta.
struct Sample {
  double beta = 0.0;
  Channel channel;
  double information = 0.0;
  double value = 0.0;
  double gap = 0.0;

  // By duality, no channel with information lambda beats this.
  double supporting_line(double lambda) const {
    if (beta == 0.0) return std::numeric_limits<double>::infinity();
    if (!std::isfinite(beta)) return value + gap;
    return value + (lambda - information + gap) / beta;
  }
};

Sample sample_at(const DecisionProblem& prob, double beta,
                 const SolverOptions& options, std::size_t& iterations) {
  const auto kernel = tilt_kernel(prob, beta);
  TiltSolution sol = alternate(prob.prior(), kernel, prob.n_actions(),
                               options.max_iterations, options.tolerance);
  iterations += sol.iterations;
  const double info = mutual_information(prob.prior(), sol.channel);
  const double value = joint_expected_utility(prob, sol.channel);
  return {beta, std::move(sol.channel), info, value, sol.gap};
}

ValuePoint make_point(const DecisionProblem& prob, double lambda, double beta,
                      Channel channel, std::size_t iterations, bool converged) {
  const double info = mutual_information(prob.prior(), channel);
  const double value = joint_expected_utility(prob, channel);
  return ValuePoint{lambda, info,       value, beta, std::move(channel),
                    iterations, converged, false, {}};
}

ValuePoint upper_value_with(const DecisionProblem& prob, double lambda,
                            const FullInformation& full,
                            const SolverOptions& options) {
  require_lambda(lambda);

  if (lambda >= full.information - kSaturationSlack) {
    ValuePoint p{lambda,           full.information, full.value,
                 kInfiniteBeta,    full.channel,     full.iterations,
                 full.converged,   true,             "full information"};
    return p;
  }
  if (lambda == 0.0) {
    return make_point(prob, lambda, 0.0, constant_channel(prob), 0, true);
  }

  const double scale = prob.utility_scale();
  std::size_t iterations = 0;
  const Channel constant = constant_channel(prob);
  Sample lo{0.0, constant, 0.0, joint_expected_utility(prob, constant), 0.0};
  std::optional<Sample> hi;

  double beta = 1.0 / scale;
  for (int doubling = 0; doubling <= kMaxBetaDoublings; ++doubling) {
    Sample s = sample_at(prob, beta, options, iterations);
    if (s.information >= lambda) {
      hi = std::move(s);
      break;
    }
    lo = std::move(s);
    beta *= 2.0;
  }
  std::string note;
  if (!hi) {
    hi = Sample{kInfiniteBeta, full.channel, full.information, full.value, 0.0};
    note = "beta bracket reached its cap";
  }

  for (std::size_t step = 0; step < options.max_bisections; ++step) {
    if (hi->information - lo.information <= kBracketInformation) break;
    if (!std::isfinite(hi->beta)) break;
    const double mid = 0.5 * (lo.beta + hi->beta);
    if (mid <= lo.beta || mid >= hi->beta) break;
    Sample s = sample_at(prob, mid, options, iterations);
    if (s.information >= lambda) {
      hi = std::move(s);
    } else {
      lo = std::move(s);
    }
  }
  if (hi->information - lo.information > kBracketInformation &&
      std::isfinite(hi->beta)) {
    // The bracket collapsed onto a jump of lambda(beta): the frontier is a
    // straight segment here and mixing the endpoints is exact.
    note = "plateau endpoint";
  }

  // The endpoints straddle lambda; mix them row-wise. Information is convex
  // along the segment, so the largest weight on `hi` keeping I <= lambda is
  // found by bisection.
  Channel chosen = lo.channel;
  double weight_lo = 1.0;
  if (hi->information <= lambda) {
    chosen = hi->channel;
    weight_lo = 0.0;
  } else {
    double infeasible = 0.0;
    double feasible = 1.0;
    for (int k = 0; k < kMixingSteps; ++k) {
      const double w = 0.5 * (infeasible + feasible);
      const Channel mixed = Channel::mix(lo.channel, hi->channel, w);
      if (mutual_information(prob.prior(), mixed) <= lambda) {
        feasible = w;
      } else {
        infeasible = w;
      }
    }
    weight_lo = feasible;
    chosen = Channel::mix(lo.channel, hi->channel, feasible);
  }

  const double point_beta =
      std::isfinite(hi->beta)
          ? weight_lo * lo.beta + (1.0 - weight_lo) * hi->beta
          : lo.beta;
  ValuePoint p = make_point(prob, lambda, point_beta, std::move(chosen),
                            iterations, true);
  const double bound =
      std::min(lo.supporting_line(lambda), hi->supporting_line(lambda));
  p.suboptimality = std::max(0.0, bound - p.value);
  p.converged =
      p.suboptimality <= options.value_tolerance * std::max(1.0, scale);
  p.note = std::move(note);
  return p;
}

ValuePoint negate_value(ValuePoint p) {
  p.value = -p.value;
  return p;
}

}  // namespace

TiltSolution solve_tilt(const DecisionProblem& prob, double beta,
                        const SolverOptions& options) {
  if (!std::isfinite(beta) || beta <= 0.0) {
    throw InputError("solve_tilt: beta must be finite and positive");
  }
  const auto kernel = tilt_kernel(prob, beta);
  return alternate(prob.prior(), kernel, prob.n_actions(),
                   options.max_iterations, options.tolerance);
}

ValuePoint ba_fixed_beta(const DecisionProblem& prob, double beta,
                         const SolverOptions& options) {
  if (!std::isfinite(beta) || beta < 0.0) {
    throw InputError(fmt::format("beta must be finite and >= 0, got {}", beta));
  }
  if (beta == 0.0) {
    return make_point(prob, 0.0, 0.0, constant_channel(prob), 0, true);
  }
  TiltSolution sol = solve_tilt(prob, beta, options);
  ValuePoint p = make_point(prob, 0.0, beta, std::move(sol.channel),
                            sol.iterations, sol.converged);
  p.lambda = p.information;
  return p;
}

FullInformation full_information(const DecisionProblem& prob,
                                 const SolverOptions& options) {
  const std::size_t n_a = prob.n_actions();
  std::vector<double> mask(prob.n_states() * n_a, 0.0);
  std::vector<std::size_t> assignment(prob.n_states());
  bool ties = false;
  for (std::size_t a = 0; a < prob.n_states(); ++a) {
    const auto row = prob.utility_row(a);
    const double top = *std::max_element(row.begin(), row.end());
    std::size_t count = 0;
    for (std::size_t b = 0; b < n_a; ++b) {
      if (row[b] == top) {
        mask[a * n_a + b] = 1.0;
        if (count++ == 0) assignment[a] = b;
      }
    }
    ties = ties || count > 1;
  }

  FullInformation full{Channel::deterministic(assignment, n_a), 0.0, 0.0, 0,
                       true};
  if (ties) {
    // Among channels that only use optimal actions, find the one carrying the
    // least information.
    TiltSolution sol = alternate(prob.prior(), mask, n_a,
                                 10 * options.max_iterations, options.tolerance);
    full.channel = std::move(sol.channel);
    full.iterations = sol.iterations;
    full.converged = sol.converged;
  }
  full.information = mutual_information(prob.prior(), full.channel);
  full.value = joint_expected_utility(prob, full.channel);
  return full;
}

ValuePoint upper_value(const DecisionProblem& prob, double lambda,
                       const SolverOptions& options) {
  require_lambda(lambda);
  return upper_value_with(prob, lambda, full_information(prob, options),
                          options);
}

ValuePoint lower_value(const DecisionProblem& prob, double lambda,
                       const SolverOptions& options) {
  return negate_value(upper_value(prob.negated(), lambda, options));
}

ValueCurve trace_curve(const DecisionProblem& prob, Branch branch,
                       const LambdaGrid& grid, const SolverOptions& options) {
  const DecisionProblem target =
      branch == Branch::upper ? prob : prob.negated();
  const FullInformation full = full_information(target, options);

  std::vector<std::optional<ValuePoint>> slots(grid.size());
  detail::parallel_for(grid.size(), options.workers, [&](std::size_t i) {
    ValuePoint p = upper_value_with(target, grid.values()[i], full, options);
    slots[i] = branch == Branch::upper ? std::move(p) : negate_value(std::move(p));
  });

  ValueCurve curve{prob.name(), branch, {}};
  curve.points.reserve(slots.size());
  for (auto& s : slots) curve.points.push_back(std::move(*s));
  return curve;
}

}  // namespace voi
