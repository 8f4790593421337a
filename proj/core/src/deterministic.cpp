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

#include "voi/deterministic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <optional>

#include <fmt/format.h>

#include "voi/errors.hpp"

namespace voi {
namespace {

void require_lambda(double lambda) {
  if (!std::isfinite(lambda) || lambda < 0.0) {
    throw InputError(fmt::format("lambda must be finite and >= 0, got {}",
                                 lambda));
  }
}

double assignment_value(const DecisionProblem& prob,
                        const std::vector<std::size_t>& f) {
  double eu = 0.0;
  for (std::size_t a = 0; a < f.size(); ++a) {
    eu += prob.prior()[a] * prob.utility(a, f[a]);
  }
  return eu;
}

// Advances f to the next assignment in lexicographic order; false on wrap.
bool next_assignment(std::vector<std::size_t>& f, std::size_t n_actions) {
  for (std::size_t i = f.size(); i-- > 0;) {
    if (++f[i] < n_actions) return true;
    f[i] = 0;
  }
  return false;
}

DeterministicValue make_value(const DecisionProblem& prob, double lambda,
                              std::vector<std::size_t> best, double value,
                              double information, std::uint64_t visited) {
  DeterministicChannel fn{std::move(best)};
  ValuePoint p{lambda,
               information,
               value,
               kInfiniteBeta,
               fn.to_channel(prob.n_actions()),
               static_cast<std::size_t>(visited),
               true,
               false,
               {}};
  return {std::move(p), std::move(fn)};
}

DeterministicValue reflect(DeterministicValue v) {
  v.point.value = -v.point.value;
  return v;
}

}  // namespace

Channel DeterministicChannel::to_channel(std::size_t n_actions) const {
  return Channel::deterministic(assignment, n_actions);
}

std::size_t DeterministicChannel::range_size() const {
  std::vector<std::size_t> sorted = assignment;
  std::sort(sorted.begin(), sorted.end());
  return static_cast<std::size_t>(
      std::unique(sorted.begin(), sorted.end()) - sorted.begin());
}

double pushforward_entropy(const Distribution& prior,
                           const DeterministicChannel& f,
                           std::size_t n_actions) {
  std::vector<double> mass(n_actions, 0.0);
  for (std::size_t a = 0; a < f.assignment.size(); ++a) {
    mass[f.assignment[a]] += prior[a];
  }
  return entropy(Distribution(std::move(mass)));
}

std::uint64_t function_count(const DecisionProblem& prob,
                             const EnumerationOptions& options) {
  std::uint64_t count = 1;
  for (std::size_t a = 0; a < prob.n_states(); ++a) {
    if (count > options.cap / prob.n_actions()) {
      throw EnumerationCapError(fmt::format(
          "{}^{} functions exceed the enumeration cap {}", prob.n_actions(),
          prob.n_states(), options.cap));
    }
    count *= prob.n_actions();
  }
  return count;
}

DeterministicValue boltzmann_value(const DecisionProblem& prob, double lambda,
                                   const EnumerationOptions& options) {
  require_lambda(lambda);
  const std::uint64_t total = function_count(prob, options);

  std::vector<std::size_t> f(prob.n_states(), 0);
  std::optional<std::vector<std::size_t>> best;
  double best_value = 0.0;
  double best_entropy = 0.0;
  do {
    const double h =
        pushforward_entropy(prob.prior(), DeterministicChannel{f}, prob.n_actions());
    if (h > lambda + kConstraintSlack) continue;
    const double v = assignment_value(prob, f);
    // Strict improvement keeps the lexicographically first optimum.
    if (!best || v > best_value) {
      best = f;
      best_value = v;
      best_entropy = h;
    }
  } while (next_assignment(f, prob.n_actions()));

  // Constant functions have zero entropy, so `best` is always set.
  return make_value(prob, lambda, std::move(*best), best_value, best_entropy,
                    total);
}

DeterministicValue hartley_value(const DecisionProblem& prob, double lambda,
                                 const EnumerationOptions& options) {
  require_lambda(lambda);
  const std::size_t n_a = prob.n_actions();
  if (n_a >= 63 || (std::uint64_t{1} << n_a) > options.cap) {
    throw EnumerationCapError(fmt::format(
        "2^{} action subsets exceed the enumeration cap {}", n_a, options.cap));
  }
  const double bound = std::exp(lambda + kConstraintSlack);
  const std::size_t max_size =
      bound >= static_cast<double>(n_a) ? n_a
                                        : static_cast<std::size_t>(std::floor(bound));

  std::optional<std::vector<std::size_t>> best;
  double best_value = 0.0;
  std::vector<std::size_t> f(prob.n_states());
  const std::uint64_t subsets = std::uint64_t{1} << n_a;
  for (std::uint64_t mask = 1; mask < subsets; ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) > max_size) continue;
    for (std::size_t a = 0; a < prob.n_states(); ++a) {
      std::optional<std::size_t> pick;
      for (std::size_t b = 0; b < n_a; ++b) {
        if (!(mask >> b & 1U)) continue;
        if (!pick || prob.utility(a, b) > prob.utility(a, *pick)) pick = b;
      }
      f[a] = *pick;
    }
    const double v = assignment_value(prob, f);
    if (!best || v > best_value || (v == best_value && f < *best)) {
      best = f;
      best_value = v;
    }
  }

  DeterministicChannel fn{*best};
  const double log_card = std::log(static_cast<double>(fn.range_size()));
  return make_value(prob, lambda, std::move(*best), best_value, log_card,
                    subsets - 1);
}

DeterministicValue boltzmann_lower_value(const DecisionProblem& prob,
                                         double lambda,
                                         const EnumerationOptions& options) {
  return reflect(boltzmann_value(prob.negated(), lambda, options));
}

DeterministicValue hartley_lower_value(const DecisionProblem& prob,
                                       double lambda,
                                       const EnumerationOptions& options) {
  return reflect(hartley_value(prob.negated(), lambda, options));
}

}  // namespace voi
