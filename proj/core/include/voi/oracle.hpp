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

// Brute-force reference values for small instances. Nothing here calls the
// solvers it is used to check; entropy, information and divergence are
// re-derived locally.

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "voi/bregman.hpp"
#include "voi/decision_problem.hpp"
#include "voi/deterministic.hpp"

namespace voi::oracle {

struct OracleReport {
  std::string target;
  double oracle_value = 0.0;
  double solver_value = 0.0;
  double abs_diff = 0.0;
  std::size_t resolution = 0;
  double elapsed = 0.0;  // seconds
};

OracleReport make_report(std::string target, double oracle_value,
                         double solver_value, std::size_t resolution,
                         double elapsed);

/// Header plus one line per report: target,oracle_value,solver_value,
/// abs_diff,resolution,elapsed. Reals use 17 significant digits.
void write_csv(std::ostream& out, const std::vector<OracleReport>& reports);

/// Scans P(b1|a1), P(b1|a2) over a resolution x resolution grid of [0, 1]^2
/// (endpoints included) and returns the best expected utility among grid
/// channels with I(A;B) <= lambda. Two states and two actions only.
double grid_max_eu(const DecisionProblem& prob, double lambda,
                   std::size_t resolution);

/// Same scan, answering several levels in one pass.
std::vector<double> grid_max_eu(const DecisionProblem& prob,
                                const std::vector<double>& lambdas,
                                std::size_t resolution);

struct FunctionRow {
  std::vector<std::size_t> assignment;
  double entropy = 0.0;
  double log_cardinality = 0.0;
  double expected_utility = 0.0;
};

/// Every function A -> B with its constraint values and expected utility,
/// in lexicographic order of assignment.
std::vector<FunctionRow> exhaustive_deterministic(
    const DecisionProblem& prob, const EnumerationOptions& options = {});

/// Best expected utility in `table` with entropy (or log-cardinality)
/// at most lambda.
double table_boltzmann_max(const std::vector<FunctionRow>& table, double lambda);
double table_hartley_max(const std::vector<FunctionRow>& table, double lambda);

/// Extremal <u, y> over a barycentric grid of the simplex (dimension <= 3)
/// filtered by D(y, reference) <= lambda. Along each grid line the ends of
/// the feasible run are refined by bisection on the constraint, and the
/// reference point itself is always a candidate.
double simplex_grid_value(const ResourceProblem& rp, Branch branch,
                          std::size_t resolution);

/// max I(A;B) over joint distributions of two binary variables whose B
/// marginal is p, scanned on a resolution x resolution grid. Equals H(p).
double variational_entropy_check(const Distribution& p, std::size_t resolution);

}  // namespace voi::oracle
