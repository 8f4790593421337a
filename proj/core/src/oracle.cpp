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

#include "voi/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "voi/errors.hpp"

namespace voi::oracle {
namespace {

constexpr double kBoundarySlack = 1e-12;
constexpr int kRefineSteps = 80;

double xlogx_ratio(double mass, double ratio) {
  return mass > 0.0 ? mass * std::log(ratio) : 0.0;
}

// I(A;B) for binary A, B with P(b1|a1) = x, P(b1|a2) = y.
double binary_information(double q1, double x, double y) {
  const double q2 = 1.0 - q1;
  const double m1 = q1 * x + q2 * y;
  const double m2 = q1 * (1.0 - x) + q2 * (1.0 - y);
  double info = 0.0;
  // Column-major order, unlike the library routine.
  if (m1 > 0.0) {
    info += xlogx_ratio(q1 * x, x / m1);
    info += xlogx_ratio(q2 * y, y / m1);
  }
  if (m2 > 0.0) {
    info += xlogx_ratio(q1 * (1.0 - x), (1.0 - x) / m2);
    info += xlogx_ratio(q2 * (1.0 - y), (1.0 - y) / m2);
  }
  return info;
}

double local_divergence(const BregmanGenerator& gen, std::span<const double> y,
                        const Distribution& z) {
  double d = 0.0;
  if (gen.kind() == GeneratorKind::negative_entropy) {
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (y[i] > 0.0) d += y[i] * std::log(y[i] / z[i]);
    }
  } else {
    for (std::size_t i = 0; i < y.size(); ++i) {
      const double diff = y[i] - z[i];
      d += 0.5 * diff * diff;
    }
  }
  return d;
}

}  // namespace

OracleReport make_report(std::string target, double oracle_value,
                         double solver_value, std::size_t resolution,
                         double elapsed) {
  return {std::move(target), oracle_value, solver_value,
          std::abs(oracle_value - solver_value), resolution, elapsed};
}

void write_csv(std::ostream& out, const std::vector<OracleReport>& reports) {
  out << "target,oracle_value,solver_value,abs_diff,resolution,elapsed\n";
  for (const auto& r : reports) {
    fmt::print(out, "{},{:.17g},{:.17g},{:.17g},{},{:.17g}\n", r.target,
               r.oracle_value, r.solver_value, r.abs_diff, r.resolution,
               r.elapsed);
  }
}

std::vector<double> grid_max_eu(const DecisionProblem& prob,
                                const std::vector<double>& lambdas,
                                std::size_t resolution) {
  if (prob.n_states() != 2 || prob.n_actions() != 2) {
    throw InputError("grid_max_eu: only 2-state, 2-action problems");
  }
  if (resolution < 10) throw InputError("grid_max_eu: resolution must be >= 10");
  const double q1 = prob.prior()[0];
  const double q2 = prob.prior()[1];
  const double u11 = prob.utility(0, 0), u12 = prob.utility(0, 1);
  const double u21 = prob.utility(1, 0), u22 = prob.utility(1, 1);

  std::vector<double> best(lambdas.size(),
                           -std::numeric_limits<double>::infinity());
  const double step = 1.0 / static_cast<double>(resolution - 1);
  for (std::size_t i = 0; i < resolution; ++i) {
    const double x = i == resolution - 1 ? 1.0 : step * static_cast<double>(i);
    for (std::size_t j = 0; j < resolution; ++j) {
      const double y = j == resolution - 1 ? 1.0 : step * static_cast<double>(j);
      const double info = binary_information(q1, x, y);
      const double eu =
          q1 * (x * u11 + (1.0 - x) * u12) + q2 * (y * u21 + (1.0 - y) * u22);
      for (std::size_t k = 0; k < lambdas.size(); ++k) {
        if (info <= lambdas[k] + kBoundarySlack && eu > best[k]) best[k] = eu;
      }
    }
  }
  return best;
}

double grid_max_eu(const DecisionProblem& prob, double lambda,
                   std::size_t resolution) {
  return grid_max_eu(prob, std::vector<double>{lambda}, resolution).front();
}

std::vector<FunctionRow> exhaustive_deterministic(
    const DecisionProblem& prob, const EnumerationOptions& options) {
  const std::size_t n_s = prob.n_states();
  const std::size_t n_a = prob.n_actions();
  std::uint64_t total = 1;
  for (std::size_t a = 0; a < n_s; ++a) {
    if (total > options.cap / n_a) {
      throw EnumerationCapError("exhaustive_deterministic: table exceeds cap");
    }
    total *= n_a;
  }

  std::vector<FunctionRow> table;
  table.reserve(static_cast<std::size_t>(total));
  for (std::uint64_t code = 0; code < total; ++code) {
    // Decode `code` in base n_a, most significant digit first.
    FunctionRow row;
    row.assignment.assign(n_s, 0);
    std::uint64_t rest = code;
    for (std::size_t a = n_s; a-- > 0;) {
      row.assignment[a] = static_cast<std::size_t>(rest % n_a);
      rest /= n_a;
    }
    std::vector<double> mass(n_a, 0.0);
    std::size_t used = 0;
    for (std::size_t a = 0; a < n_s; ++a) {
      const std::size_t b = row.assignment[a];
      if (std::none_of(row.assignment.begin(), row.assignment.begin() + a,
                       [b](std::size_t x) { return x == b; })) {
        ++used;
      }
      mass[b] += prob.prior()[a];
      row.expected_utility += prob.prior()[a] * prob.utility(a, b);
    }
    for (double m : mass) {
      if (m > 0.0) row.entropy -= m * std::log(m);
    }
    row.log_cardinality = std::log(static_cast<double>(used));
    table.push_back(std::move(row));
  }
  return table;
}

double table_boltzmann_max(const std::vector<FunctionRow>& table, double lambda) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& row : table) {
    if (row.entropy <= lambda + kBoundarySlack) {
      best = std::max(best, row.expected_utility);
    }
  }
  return best;
}

double table_hartley_max(const std::vector<FunctionRow>& table, double lambda) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& row : table) {
    if (row.log_cardinality <= lambda + kBoundarySlack) {
      best = std::max(best, row.expected_utility);
    }
  }
  return best;
}

double simplex_grid_value(const ResourceProblem& rp, Branch branch,
                          std::size_t resolution) {
  rp.validate();
  const std::size_t n = rp.utility.size();
  if (n > 3) throw InputError("simplex_grid_value: dimension must be <= 3");
  if (resolution < 1) throw InputError("simplex_grid_value: resolution >= 1");
  const double sign = branch == Branch::upper ? 1.0 : -1.0;

  auto objective = [&](std::span<const double> y) {
    double v = 0.0;
    for (std::size_t i = 0; i < n; ++i) v += sign * rp.utility[i] * y[i];
    return v;
  };
  auto feasible = [&](std::span<const double> y) {
    return local_divergence(rp.generator, y, rp.reference) <=
           rp.lambda + kBoundarySlack;
  };

  double best = objective(rp.reference.probs());
  if (n == 1) return sign * best;

  // One grid line: y(t) = origin + t * direction, t in [0, length], sampled
  // at `steps` + 1 equally spaced points.
  auto scan_line = [&](std::array<double, 3> origin,
                       std::array<double, 3> direction, double length,
                       std::size_t steps) {
    auto at = [&](double t) {
      std::array<double, 3> y{};
      for (std::size_t i = 0; i < n; ++i) {
        y[i] = std::max(0.0, origin[i] + t * direction[i]);
      }
      return y;
    };
    auto t_of = [&](std::size_t j) {
      return j == steps ? length
                        : length * static_cast<double>(j) / static_cast<double>(steps);
    };
    std::optional<std::size_t> first, last;
    for (std::size_t j = 0; j <= steps; ++j) {
      const auto y = at(t_of(j));
      if (!feasible(std::span<const double>(y.data(), n))) continue;
      if (!first) first = j;
      last = j;
      best = std::max(best, objective(std::span<const double>(y.data(), n)));
    }
    if (!first) return;
    auto refine = [&](double inside, double outside) {
      for (int k = 0; k < kRefineSteps; ++k) {
        const double mid = 0.5 * (inside + outside);
        const auto y = at(mid);
        if (feasible(std::span<const double>(y.data(), n))) {
          inside = mid;
        } else {
          outside = mid;
        }
      }
      const auto y = at(inside);
      best = std::max(best, objective(std::span<const double>(y.data(), n)));
    };
    if (*first > 0) refine(t_of(*first), t_of(*first - 1));
    if (*last < steps) refine(t_of(*last), t_of(*last + 1));
  };

  if (n == 2) {
    scan_line({0.0, 1.0, 0.0}, {1.0, -1.0, 0.0}, 1.0, resolution);
  } else {
    for (std::size_t i = 0; i <= resolution; ++i) {
      const double y1 = i == resolution
                            ? 1.0
                            : static_cast<double>(i) / static_cast<double>(resolution);
      scan_line({y1, 0.0, 1.0 - y1}, {0.0, 1.0, -1.0}, 1.0 - y1, resolution - i);
    }
  }
  return sign * best;
}

double variational_entropy_check(const Distribution& p, std::size_t resolution) {
  if (p.size() > 2) {
    throw InputError("variational_entropy_check: dimension must be <= 2");
  }
  if (resolution < 100) {
    throw InputError("variational_entropy_check: resolution must be >= 100");
  }
  if (p.size() == 1) return 0.0;
  const double p1 = p[0];
  const double p2 = p[1];
  double best = 0.0;
  const double denom = static_cast<double>(resolution - 1);
  for (std::size_t i = 0; i < resolution; ++i) {
    const double s = i == resolution - 1 ? p1 : p1 * static_cast<double>(i) / denom;
    for (std::size_t j = 0; j < resolution; ++j) {
      const double t = j == resolution - 1 ? p2 : p2 * static_cast<double>(j) / denom;
      // Joint over (a, b): [[s, t], [p1 - s, p2 - t]].
      const std::array<double, 4> joint = {s, t, std::max(0.0, p1 - s),
                                           std::max(0.0, p2 - t)};
      const std::array<double, 2> pa = {s + t, 1.0 - s - t};
      const std::array<double, 2> pb = {p1, p2};
      double info = 0.0;
      for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
          const double m = joint[2 * a + b];
          if (m > 0.0) info += m * std::log(m / (pa[a] * pb[b]));
        }
      }
      best = std::max(best, info);
    }
  }
  return best;
}

}  // namespace voi::oracle
