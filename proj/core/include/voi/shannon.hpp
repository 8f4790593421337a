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

// Value of Shannon information: the extremal expected utility over channels
// P(b|a) whose mutual information with the state does not exceed lambda.

#include <cstddef>
#include <vector>

#include "voi/decision_problem.hpp"
#include "voi/value_point.hpp"

namespace voi {

struct SolverOptions {
  /// Alternating-update iteration cap per fixed beta.
  std::size_t max_iterations = 10'000;
  /// Stop once the Lagrangian beta*EU - I is provably within this many nats
  /// of its maximum.
  double tolerance = 1e-12;
  /// Bisection steps on beta after the bracket is found.
  std::size_t max_bisections = 200;
  /// A frontier point is flagged converged when its certified suboptimality
  /// is at most this, times the utility scale when that exceeds 1.
  double value_tolerance = 1e-9;
  /// Worker threads used by curve tracing. Output does not depend on it.
  unsigned workers = 1;
};

/// Fixed point of the alternating updates at one inverse temperature.
struct TiltSolution {
  Channel channel;
  /// The output distribution the channel rows were tilted from.
  std::vector<double> marginal;
  /// Upper bound on the remaining Lagrangian improvement, in nats.
  double gap = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Runs P(b|a) ∝ P(b) exp(beta u(a,b)), P(b) <- sum_a Q(a) P(b|a) from a
/// uniform P(b). Requires beta finite and > 0.
TiltSolution solve_tilt(const DecisionProblem& prob, double beta,
                        const SolverOptions& options = {});

/// The channel maximizing EU - I / beta, reported as a frontier point with
/// lambda equal to the information it attains. beta = 0 is the zero-tilt
/// limit: the best constant action.
ValuePoint ba_fixed_beta(const DecisionProblem& prob, double beta,
                         const SolverOptions& options = {});

/// Least-information channel attaining the complete-information value.
struct FullInformation {
  Channel channel;
  /// lambda_max: information needed to reach E_Q[max_b u].
  double information = 0.0;
  double value = 0.0;
  std::size_t iterations = 0;
  bool converged = true;
};

FullInformation full_information(const DecisionProblem& prob,
                                 const SolverOptions& options = {});

/// sup E[u] subject to I(A;B) <= lambda.
ValuePoint upper_value(const DecisionProblem& prob, double lambda,
                       const SolverOptions& options = {});

/// inf E[u] subject to I(A;B) <= lambda, computed as the negated upper value
/// of the payoff-negated problem.
ValuePoint lower_value(const DecisionProblem& prob, double lambda,
                       const SolverOptions& options = {});

ValueCurve trace_curve(const DecisionProblem& prob, Branch branch,
                       const LambdaGrid& grid,
                       const SolverOptions& options = {});

}  // namespace voi
