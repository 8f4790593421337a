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

#include "voi/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "voi/errors.hpp"

namespace voi {
namespace {

constexpr double kSameEndpoint = 1e-15;

ValueCurve branch_from(const std::vector<SignedPoint>& points, Branch branch,
                       const std::string& problem) {
  ValueCurve curve{problem, branch, {}};
  for (const auto& sp : points) curve.points.push_back(sp.point);
  std::sort(curve.points.begin(), curve.points.end(),
            [](const ValuePoint& a, const ValuePoint& b) {
              return a.lambda < b.lambda;
            });
  return curve;
}

}  // namespace

SCurve assemble_s_curve(ValueCurve upper, ValueCurve lower) {
  if (upper.points.empty() || lower.points.empty()) {
    throw InputError("assemble_s_curve: both branches need points");
  }
  SCurve s;
  s.problem = upper.problem;
  for (auto& p : upper.points) {
    const double key = p.lambda;
    s.gains.push_back({key, std::move(p)});
  }
  for (auto it = lower.points.rbegin(); it != lower.points.rend(); ++it) {
    const double key = -it->lambda;
    s.losses.push_back({key, std::move(*it)});
  }
  // Keys must not carry a negative zero into output.
  for (auto& sp : s.losses) {
    if (sp.key == 0.0) sp.key = 0.0;
  }
  s.gains_origin = s.gains.front().point.value;
  s.losses_origin = s.losses.back().point.value;
  return s;
}

SCurve assemble_s_curve(const DecisionProblem& prob, const LambdaGrid& grid,
                        const SolverOptions& options) {
  SCurve s = assemble_s_curve(trace_curve(prob, Branch::upper, grid, options),
                              trace_curve(prob, Branch::lower, grid, options));
  if (grid.values().front() != 0.0) {
    // Origins are defined at lambda = 0 even when the grid starts later.
    s.gains_origin = prob.no_information_value();
    s.losses_origin = -prob.negated().no_information_value();
  }
  return s;
}

CurvatureReport curvature_report(const ValueCurve& curve, double tolerance) {
  const auto& pts = curve.points;
  if (pts.size() < 3) {
    throw InputError(fmt::format(
        "curvature_report: need at least 3 points, got {}", pts.size()));
  }
  // Work with the upper orientation: flip lower-branch values.
  const double sign = curve.branch == Branch::upper ? 1.0 : -1.0;
  CurvatureReport report;
  report.branch = curve.branch;
  report.max_violation = -std::numeric_limits<double>::infinity();

  bool before_clamp = true;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double step = sign * (pts[i + 1].value - pts[i].value);
    if (step < -tolerance) report.monotone_ok = false;
    if (before_clamp && !pts[i].saturated && !(step > 0.0)) {
      report.strict_ok = false;
    }
    if (pts[i + 1].saturated) before_clamp = false;
  }

  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    const double l1 = pts[i - 1].lambda, l2 = pts[i].lambda,
                 l3 = pts[i + 1].lambda;
    const double v1 = sign * pts[i - 1].value, v2 = sign * pts[i].value,
                 v3 = sign * pts[i + 1].value;
    const double chord = v1 + (v3 - v1) * (l2 - l1) / (l3 - l1);
    const double slack = chord - v2;
    report.max_violation = std::max(report.max_violation, slack);
    if (slack > tolerance) report.curvature_ok = false;
  }
  return report;
}

std::array<CurvatureReport, 2> curvature_report(const SCurve& curve,
                                                double tolerance) {
  return {curvature_report(branch_from(curve.gains, Branch::upper, curve.problem),
                           tolerance),
          curvature_report(branch_from(curve.losses, Branch::lower, curve.problem),
                           tolerance)};
}

std::array<double, 3> LevelSegment::direction() const {
  std::array<double, 3> d{};
  if (empty) return d;
  double norm = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    d[i] = to[i] - from[i];
    norm += d[i] * d[i];
  }
  norm = std::sqrt(norm);
  if (norm == 0.0) return {0.0, 0.0, 0.0};
  for (double& x : d) x /= norm;
  for (double x : d) {
    if (std::abs(x) > 1e-9) {
      if (x < 0.0) {
        for (double& y : d) y = -y;
      }
      break;
    }
  }
  return d;
}

std::vector<LevelSegment> simplex_level_sets(std::array<double, 3> payoffs,
                                             std::span<const double> values,
                                             const PayoffTransform& risk_transform) {
  for (double u : payoffs) {
    if (!std::isfinite(u)) throw InputError("simplex_level_sets: non-finite payoff");
  }
  if (payoffs[0] == payoffs[1] && payoffs[1] == payoffs[2]) {
    throw InputError("simplex_level_sets: all payoffs are equal");
  }
  if (payoffs[0] == payoffs[1] || payoffs[1] == payoffs[2] ||
      payoffs[0] == payoffs[2]) {
    throw InputError("simplex_level_sets: payoffs must be distinct");
  }

  std::array<double, 3> u = payoffs;
  if (risk_transform) {
    for (std::size_t i = 0; i < 3; ++i) u[i] = risk_transform(payoffs[i]);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        const bool before = payoffs[i] < payoffs[j];
        if (!std::isfinite(u[i]) || (before && !(u[i] < u[j]))) {
          throw InputError(
              "simplex_level_sets: transform must be finite and increasing on "
              "the payoffs");
        }
      }
    }
  }

  constexpr std::array<std::pair<std::size_t, std::size_t>, 3> edges = {
      {{0, 1}, {1, 2}, {0, 2}}};
  std::vector<LevelSegment> out;
  out.reserve(values.size());
  for (double v : values) {
    LevelSegment seg;
    seg.level = v;
    const double level = risk_transform ? risk_transform(v) : v;
    std::vector<std::array<double, 3>> hits;
    if (std::isfinite(level)) {
      for (const auto& [i, j] : edges) {
        const double t = (level - u[j]) / (u[i] - u[j]);
        if (t < 0.0 || t > 1.0) continue;
        std::array<double, 3> p{};
        p[i] = t;
        p[j] = 1.0 - t;
        const bool duplicate = std::any_of(hits.begin(), hits.end(), [&](const auto& h) {
          return std::abs(h[0] - p[0]) <= kSameEndpoint &&
                 std::abs(h[1] - p[1]) <= kSameEndpoint &&
                 std::abs(h[2] - p[2]) <= kSameEndpoint;
        });
        if (!duplicate) hits.push_back(p);
      }
    }
    if (!hits.empty()) {
      seg.empty = false;
      seg.from = hits.front();
      seg.to = hits.size() > 1 ? hits[1] : hits.front();
    }
    out.push_back(seg);
  }
  return out;
}

double max_direction_deviation(const std::vector<LevelSegment>& segments) {
  std::vector<std::array<double, 3>> dirs;
  for (const auto& s : segments) {
    const auto d = s.direction();
    if (d[0] != 0.0 || d[1] != 0.0 || d[2] != 0.0) dirs.push_back(d);
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    for (std::size_t j = i + 1; j < dirs.size(); ++j) {
      double same = 0.0, opposite = 0.0;
      for (std::size_t k = 0; k < 3; ++k) {
        same = std::max(same, std::abs(dirs[i][k] - dirs[j][k]));
        opposite = std::max(opposite, std::abs(dirs[i][k] + dirs[j][k]));
      }
      worst = std::max(worst, std::min(same, opposite));
    }
  }
  return worst;
}

}  // namespace voi
