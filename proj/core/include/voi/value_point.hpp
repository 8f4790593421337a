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

#include <cstddef>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "voi/distribution.hpp"

namespace voi {

/// Upper frontier (sup of expected utility) or lower frontier (inf).
enum class Branch { upper, lower };

const char* to_string(Branch branch) noexcept;
Branch parse_branch(std::string_view text);

inline constexpr double kInfiniteBeta = std::numeric_limits<double>::infinity();

/// One solved point on a value-of-information frontier.
struct ValuePoint {
  /// Constraint level that was requested.
  double lambda = 0.0;
  /// Constraint value actually attained by `channel` (information,
  /// entropy, log-cardinality or divergence, depending on the solver).
  double information = 0.0;
  /// Expected utility of `channel`.
  double value = 0.0;
  /// Inverse temperature; +inf at full information and for step functions.
  double beta = 0.0;
  Channel channel;
  std::size_t iterations = 0;
  bool converged = true;
  /// The constraint no longer binds: the value is the unconstrained optimum.
  bool saturated = false;
  std::string note;
  /// Certified upper bound on how far `value` may fall short of the exact
  /// frontier value (Shannon solver; zero where the solver is exact).
  double suboptimality = 0.0;
};

struct ValueCurve {
  std::string problem;
  Branch branch = Branch::upper;
  /// Ordered by strictly increasing lambda.
  std::vector<ValuePoint> points;
};

/// Inclusive linear grid of constraint levels.
class LambdaGrid {
 public:
  /// Requires count >= 2, start >= 0 and end > start.
  static LambdaGrid linspace(double start, double end, std::size_t count);
  /// Parses "start:end:count".
  static LambdaGrid parse(std::string_view spec);
  /// Arbitrary strictly increasing non-negative levels (at least two).
  explicit LambdaGrid(std::vector<double> values);

  const std::vector<double>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }

 private:
  std::vector<double> values_;
};

}  // namespace voi
