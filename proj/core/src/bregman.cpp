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

#include "voi/bregman.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "voi/errors.hpp"

namespace voi {
namespace {

constexpr int kMaxBetaDoublings = 60;
constexpr double kDivergenceTolerance = 1e-8;
constexpr double kSaturationSlack = 1e-15;

void require_dimension(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw InputError(fmt::format("{}: dimension {} does not match {}", what, got,
                                 want));
  }
}

double dot(std::span<const double> x, std::span<const double> y) {
  return std::inner_product(x.begin(), x.end(), y.begin(), 0.0);
}

ValuePoint resource_point(const ResourceProblem& rp, const Distribution& y,
                          double beta) {
  const double info = bregman_divergence(rp.generator, y, rp.reference);
  const double value = dot(rp.utility, y.probs());
  return ValuePoint{rp.lambda,
                    info,
                    value,
                    beta,
                    Channel(1, y.size(), {y.begin(), y.end()}),
                    0,
                    true,
                    false,
                    {}};
}

}  // namespace

const char* to_string(GeneratorKind kind) noexcept {
  return kind == GeneratorKind::negative_entropy ? "negative_entropy"
                                                 : "squared_euclidean";
}

GeneratorKind parse_generator_kind(std::string_view text) {
  if (text == "negative_entropy" || text == "negative_entropy_relative") {
    return GeneratorKind::negative_entropy;
  }
  if (text == "squared_euclidean") return GeneratorKind::squared_euclidean;
  throw InputError(fmt::format("unknown generator kind '{}'", text));
}

BregmanGenerator::BregmanGenerator(GeneratorKind kind, std::size_t dimension,
                                   std::optional<Distribution> base)
    : kind_(kind), dimension_(dimension), base_(std::move(base)) {
  if (dimension_ == 0) throw InputError("BregmanGenerator: zero dimension");
}

BregmanGenerator BregmanGenerator::negative_entropy(Distribution base) {
  for (double m : base) {
    if (!(m > 0.0)) {
      throw InputError(
          "BregmanGenerator: entropy base measure must be strictly positive");
    }
  }
  const std::size_t n = base.size();
  return BregmanGenerator(GeneratorKind::negative_entropy, n, std::move(base));
}

BregmanGenerator BregmanGenerator::squared_euclidean(std::size_t dimension) {
  return BregmanGenerator(GeneratorKind::squared_euclidean, dimension,
                          std::nullopt);
}

double BregmanGenerator::value(std::span<const double> y) const {
  require_dimension(y.size(), dimension_, "BregmanGenerator::value");
  double f = 0.0;
  if (kind_ == GeneratorKind::negative_entropy) {
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (y[i] > 0.0) f += y[i] * (std::log(y[i] / (*base_)[i]) - 1.0);
    }
  } else {
    for (double v : y) f += 0.5 * v * v;
  }
  return f;
}

std::vector<double> BregmanGenerator::gradient(std::span<const double> z) const {
  require_dimension(z.size(), dimension_, "BregmanGenerator::gradient");
  if (kind_ == GeneratorKind::squared_euclidean) return {z.begin(), z.end()};
  std::vector<double> g(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (!(z[i] > 0.0)) {
      throw InputError(
          "negative-entropy gradient is undefined on the simplex boundary");
    }
    g[i] = std::log(z[i] / (*base_)[i]);
  }
  return g;
}

Distribution BregmanGenerator::simplex_dual_map(std::span<const double> x) const {
  require_dimension(x.size(), dimension_, "BregmanGenerator::simplex_dual_map");
  if (kind_ == GeneratorKind::squared_euclidean) return project_to_simplex(x);
  const double top = *std::max_element(x.begin(), x.end());
  std::vector<double> w(x.size());
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    w[i] = (*base_)[i] * std::exp(x[i] - top);
    total += w[i];
  }
  for (double& v : w) v /= total;
  return Distribution(std::move(w));
}

double bregman_divergence(const BregmanGenerator& gen, const Distribution& y,
                          const Distribution& z) {
  require_dimension(y.size(), gen.dimension(), "bregman_divergence");
  require_dimension(z.size(), gen.dimension(), "bregman_divergence");
  const auto grad = gen.gradient(z.probs());
  double linear = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) linear += grad[i] * (y[i] - z[i]);
  const double d = gen.value(y.probs()) - gen.value(z.probs()) - linear;
  return d < 0.0 ? 0.0 : d;
}

Distribution gibbs_solution(std::span<const double> utility,
                            const Distribution& reference, double beta) {
  require_dimension(utility.size(), reference.size(), "gibbs_solution");
  if (!std::isfinite(beta)) throw InputError("gibbs_solution: beta must be finite");
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < utility.size(); ++i) {
    if (reference[i] > 0.0) top = std::max(top, beta * utility[i]);
  }
  std::vector<double> y(utility.size(), 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (reference[i] > 0.0) {
      y[i] = reference[i] * std::exp(beta * utility[i] - top);
      total += y[i];
    }
  }
  for (double& v : y) v /= total;
  return Distribution(std::move(y));
}

Distribution project_to_simplex(std::span<const double> x) {
  if (x.empty()) throw InputError("project_to_simplex: empty vector");
  std::vector<double> sorted(x.begin(), x.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double threshold = 0.0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    cumulative += sorted[k];
    const double t = (cumulative - 1.0) / static_cast<double>(k + 1);
    if (sorted[k] - t > 0.0) threshold = t;
  }
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    y[i] = std::max(x[i] - threshold, 0.0);
  }
  return Distribution(std::move(y));
}

void ResourceProblem::validate() const {
  require_dimension(utility.size(), generator.dimension(), "ResourceProblem");
  require_dimension(reference.size(), generator.dimension(), "ResourceProblem");
  for (double u : utility) {
    if (!std::isfinite(u)) throw InputError("ResourceProblem: non-finite utility");
  }
  if (!std::isfinite(lambda) || lambda < 0.0) {
    throw InputError(fmt::format("ResourceProblem: lambda must be finite and "
                                 ">= 0, got {}", lambda));
  }
  if (generator.kind() == GeneratorKind::negative_entropy) {
    for (double z : reference) {
      if (!(z > 0.0)) {
        throw InputError(
            "ResourceProblem: entropy-type reference must be strictly positive");
      }
    }
  }
}

Distribution saturation_point(const ResourceProblem& rp) {
  const double top = *std::max_element(rp.utility.begin(), rp.utility.end());
  const std::size_t n = rp.utility.size();
  std::vector<std::size_t> face;
  for (std::size_t i = 0; i < n; ++i) {
    if (rp.utility[i] == top) face.push_back(i);
  }
  std::vector<double> y(n, 0.0);
  if (rp.generator.kind() == GeneratorKind::negative_entropy) {
    double mass = 0.0;
    for (std::size_t i : face) mass += rp.reference[i];
    for (std::size_t i : face) y[i] = rp.reference[i] / mass;
  } else {
    std::vector<double> sub;
    for (std::size_t i : face) sub.push_back(rp.reference[i]);
    const Distribution projected = project_to_simplex(sub);
    for (std::size_t k = 0; k < face.size(); ++k) y[face[k]] = projected[k];
  }
  return Distribution(std::move(y));
}

ValuePoint constrained_value(const ResourceProblem& rp, Branch branch,
                             const SolverOptions& options) {
  rp.validate();
  if (branch == Branch::lower) {
    ResourceProblem flipped = rp;
    for (double& u : flipped.utility) u = -u;
    ValuePoint p = constrained_value(flipped, Branch::upper, options);
    p.value = -p.value;
    return p;
  }

  const Distribution saturated = saturation_point(rp);
  const double max_divergence =
      bregman_divergence(rp.generator, saturated, rp.reference);
  if (rp.lambda >= max_divergence - kSaturationSlack) {
    ValuePoint p = resource_point(rp, saturated, kInfiniteBeta);
    p.saturated = true;
    p.note = "best face reached";
    return p;
  }
  if (rp.lambda == 0.0) return resource_point(rp, rp.reference, 0.0);

  const auto anchor = rp.generator.gradient(rp.reference.probs());
  std::size_t evaluations = 0;
  auto candidate = [&](double beta) {
    ++evaluations;
    std::vector<double> x(anchor.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = anchor[i] + beta * rp.utility[i];
    return rp.generator.simplex_dual_map(x);
  };
  auto divergence = [&](const Distribution& y) {
    return bregman_divergence(rp.generator, y, rp.reference);
  };

  const auto [lo_u, hi_u] = std::minmax_element(rp.utility.begin(), rp.utility.end());
  const double scale = *hi_u - *lo_u;

  double lo = 0.0;
  double hi = 1.0 / scale;
  bool bracketed = false;
  for (int doubling = 0; doubling <= kMaxBetaDoublings; ++doubling) {
    if (divergence(candidate(hi)) >= rp.lambda) {
      bracketed = true;
      break;
    }
    lo = hi;
    hi *= 2.0;
  }

  if (bracketed) {
    for (std::size_t step = 0; step < options.max_bisections; ++step) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (divergence(candidate(mid)) >= rp.lambda) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
  }

  ValuePoint p = resource_point(rp, candidate(lo), lo);
  p.iterations = evaluations;
  p.converged = rp.lambda - p.information <= kDivergenceTolerance;
  if (!bracketed) p.note = "beta bracket reached its cap";
  return p;
}

Distribution solution_of(const ValuePoint& point) {
  if (point.channel.n_states() != 1) {
    throw InputError("solution_of: expected a single-row channel");
  }
  const auto row = point.channel.row(0);
  return Distribution(std::vector<double>(row.begin(), row.end()));
}

}  // namespace voi
