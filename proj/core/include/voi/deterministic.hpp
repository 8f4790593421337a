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

#pragma once

// Value of information over deterministic channels f: A -> B, with either
// the entropy of f(A) (Boltzmann type) or ln |f(A)| (Hartley type) bounded
// by lambda. Solved by exhaustive enumeration.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "voi/decision_problem.hpp"
#include "voi/value_point.hpp"

namespace voi {

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

/// Slack on the constraint absorbing the representation error of ln k.
inline constexpr double kConstraintSlack = 1e-12;

struct EnumerationOptions {
  std::uint64_t cap = kDefaultEnumerationCap;
};

/// f(a) = assignment[a].
struct DeterministicChannel {
  std::vector<std::size_t> assignment;

  Channel to_channel(std::size_t n_actions) const;
  /// Number of distinct actions used, |f(A)|.
  std::size_t range_size() const;

  friend bool operator==(const DeterministicChannel&,
                         const DeterministicChannel&) = default;
  friend auto operator<=>(const DeterministicChannel&,
                          const DeterministicChannel&) = default;
};

struct DeterministicValue {
  /// beta is +inf; `information` holds the attained entropy or
  /// log-cardinality.
  ValuePoint point;
  DeterministicChannel function;
};

/// Entropy of the pushforward of the prior through f.
double pushforward_entropy(const Distribution& prior,
                           const DeterministicChannel& f, std::size_t n_actions);

/// Number of functions A -> B; throws EnumerationCapError above the cap.
std::uint64_t function_count(const DecisionProblem& prob,
                             const EnumerationOptions& options = {});

/// max E[u(a, f(a))] over f with H(f(A)) <= lambda. Ties go to the
/// lexicographically smallest assignment.
DeterministicValue boltzmann_value(const DecisionProblem& prob, double lambda,
                                   const EnumerationOptions& options = {});

/// max E[u(a, f(a))] over f with ln |f(A)| <= lambda, via subsets of at most
/// floor(exp(lambda)) actions. Ties go to the lexicographically smallest
/// assignment.
DeterministicValue hartley_value(const DecisionProblem& prob, double lambda,
                                 const EnumerationOptions& options = {});

/// Lower branches by reflection through the payoff-negated problem.
DeterministicValue boltzmann_lower_value(const DecisionProblem& prob,
                                         double lambda,
                                         const EnumerationOptions& options = {});
DeterministicValue hartley_lower_value(const DecisionProblem& prob, double lambda,
                                       const EnumerationOptions& options = {});

}  // namespace voi
