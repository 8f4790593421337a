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

// Figure-style data: the S-shaped value curve (losses on the left at
// negative keys, gains on the right) and expected-utility level sets on the
// 2-simplex. Also certifies monotonicity and curvature of traced branches.

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "voi/decision_problem.hpp"
#include "voi/shannon.hpp"
#include "voi/value_point.hpp"

namespace voi {

struct SignedPoint {
  /// +lambda on the gains branch, -lambda on the losses branch. The point
  /// itself keeps the true constraint level lambda >= 0.
  double key = 0.0;
  ValuePoint point;
};

struct SCurve {
  std::string problem;
  /// Ordered by increasing key (so from -lambda_max up to 0).
  std::vector<SignedPoint> losses;
  /// Ordered by increasing key (from 0 up to lambda_max).
  std::vector<SignedPoint> gains;
  /// Upper value at lambda = 0.
  double gains_origin = 0.0;
  /// Lower value at lambda = 0. Differs from gains_origin unless every action
  /// has the same expected payoff.
  double losses_origin = 0.0;
};

/// Shannon-type S curve over the grid.
SCurve assemble_s_curve(const DecisionProblem& prob, const LambdaGrid& grid,
                        const SolverOptions& options = {});

/// Lays out an already traced upper and lower branch on signed keys.
SCurve assemble_s_curve(ValueCurve upper, ValueCurve lower);

struct CurvatureReport {
  Branch branch = Branch::upper;
  /// Non-decreasing (upper) / non-increasing (lower) within tolerance.
  bool monotone_ok = true;
  /// Strictly monotone on every step ending at or before the first saturated
  /// point.
  bool strict_ok = true;
  /// Concave (upper) / convex (lower) midpoint-chord test within tolerance.
  bool curvature_ok = true;
  /// Worst chord slack; positive values are violations.
  double max_violation = 0.0;
};

inline constexpr double kCurvatureTolerance = 1e-7;

/// Requires at least three points; throws InputError otherwise.
CurvatureReport curvature_report(const ValueCurve& curve,
                                 double tolerance = kCurvatureTolerance);

/// {gains report, losses report}.
std::array<CurvatureReport, 2> curvature_report(
    const SCurve& curve, double tolerance = kCurvatureTolerance);

/// Segment of {p in the 2-simplex : <u, p> = level} in barycentric
/// coordinates. `empty` when the level is outside [min u, max u].
struct LevelSegment {
  double level = 0.0;
  bool empty = true;
  std::array<double, 3> from{};
  std::array<double, 3> to{};

  /// Unit direction from `from` to `to`, sign fixed so the first nonzero
  /// component is positive. Zero for empty or single-point segments.
  std::array<double, 3> direction() const;
};

using PayoffTransform = std::function<double(double)>;

/// Level sets of expected utility for the given money values. With a
/// transform phi, payoffs become phi(u) and the segment for value v is the
/// set of lotteries whose certainty equivalent is v, {<phi(u), p> = phi(v)}.
/// Throws InputError unless the payoffs are distinct and phi preserves
/// their order.
std::vector<LevelSegment> simplex_level_sets(
    std::array<double, 3> payoffs, std::span<const double> values,
    const PayoffTransform& risk_transform = {});

/// Largest componentwise difference between segment directions.
double max_direction_deviation(const std::vector<LevelSegment>& segments);

}  // namespace voi
