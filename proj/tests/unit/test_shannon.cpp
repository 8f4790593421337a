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

#include <bit>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "battery.hpp"
#include "voi/curve.hpp"
#include "voi/errors.hpp"
#include "voi/shannon.hpp"

namespace voi {
namespace {

using testing::battery;
using testing::ident2;

constexpr double kLn2 = 0.693147180559945309417;

// ident2 by symmetry: the optimal channel errs with probability p in both
// rows, carries ln 2 - H_b(p) nats and earns 1 - p.
double symmetric_reduction(double lambda) {
  auto info = [](double p) {
    const double h = p <= 0.0 ? 0.0 : -p * std::log(p) - (1.0 - p) * std::log1p(-p);
    return kLn2 - h;
  };
  double lo = 0.0, hi = 0.5;  // info decreasing in p
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + hi);
    (info(mid) > lambda ? lo : hi) = mid;
  }
  return 1.0 - hi;
}

double lagrangian(const DecisionProblem& prob, const Channel& ch, double beta) {
  return beta * joint_expected_utility(prob, ch) - mutual_information(prob.prior(), ch);
}

DecisionProblem one_action() {
  return DecisionProblem(Distribution({0.3, 0.7}), {{2.0}, {-1.0}}, {}, {}, "single");
}

TEST(BaFixedBeta, ZeroBetaIsBestConstantAction) {
  for (const auto& prob : battery()) {
    const ValuePoint p = ba_fixed_beta(prob, 0.0);
    EXPECT_EQ(p.information, 0.0);
    EXPECT_DOUBLE_EQ(p.value, prob.no_information_value());
  }
}

TEST(BaFixedBeta, LargeBetaReachesFullInformation) {
  const DecisionProblem p = ident2();
  const ValuePoint v = ba_fixed_beta(p, 50.0 / p.utility_scale());
  EXPECT_NEAR(v.value, 1.0, 1e-12);
  EXPECT_NEAR(v.information, kLn2, 1e-12);
  EXPECT_TRUE(v.converged);
}

TEST(BaFixedBeta, MatchesSymmetricReductionAtLambdaPointTwo) {
  const DecisionProblem p = ident2();
  const double beta = upper_value(p, 0.2).beta;
  const ValuePoint v = ba_fixed_beta(p, beta);
  EXPECT_NEAR(v.information, 0.2, 1e-6);
  EXPECT_NEAR(v.value, symmetric_reduction(v.information), 1e-9);
  EXPECT_NEAR(v.value, 0.805, 5e-4);
}

TEST(BaFixedBeta, RejectsBadBeta) {
  EXPECT_THROW(ba_fixed_beta(ident2(), -1.0), InputError);
  EXPECT_THROW(ba_fixed_beta(ident2(), std::nan("")), InputError);
  EXPECT_THROW(ba_fixed_beta(ident2(), std::numeric_limits<double>::infinity()),
               InputError);
}

TEST(BaFixedBeta, BeatsRandomChannelsOnTheLagrangian) {
  std::mt19937 rng(31);
  for (const auto& prob : battery()) {
    for (double beta : {0.05, 0.3, 1.0, 4.0}) {
      const ValuePoint v = ba_fixed_beta(prob, beta);
      const double best = lagrangian(prob, v.channel, beta);
      for (int t = 0; t < 50; ++t) {
        const Channel ch = testing::random_channel(rng, prob.n_states(), prob.n_actions());
        EXPECT_GE(best, lagrangian(prob, ch, beta) - 1e-12);
      }
    }
  }
}

TEST(SolveTilt, RowsAreGibbsTiltsOfTheMarginal) {
  for (const auto& prob : battery()) {
    const double beta = 0.7;
    const TiltSolution s = solve_tilt(prob, beta);
    ASSERT_TRUE(s.converged);
    for (std::size_t a = 0; a < prob.n_states(); ++a) {
      double z = 0.0;
      for (std::size_t b = 0; b < prob.n_actions(); ++b) {
        z += s.marginal[b] * std::exp(beta * prob.utility(a, b));
      }
      for (std::size_t b = 0; b < prob.n_actions(); ++b) {
        EXPECT_NEAR(s.channel(a, b),
                    s.marginal[b] * std::exp(beta * prob.utility(a, b)) / z, 1e-10);
      }
    }
  }
}

TEST(UpperValue, Examples) {
  const DecisionProblem p = ident2();
  EXPECT_DOUBLE_EQ(upper_value(p, 0.0).value, 0.5);
  EXPECT_NEAR(upper_value(p, kLn2).value, 1.0, 1e-12);
  EXPECT_NEAR(upper_value(p, 0.3).value, symmetric_reduction(0.3), 1e-9);
  EXPECT_NEAR(upper_value(p, 0.3).value, 0.866, 5e-4);
  EXPECT_NEAR(upper_value(p, 0.2).value, symmetric_reduction(0.2), 1e-9);
}

TEST(UpperValue, RejectsBadLambda) {
  EXPECT_THROW(upper_value(ident2(), -0.1), InputError);
  EXPECT_THROW(upper_value(ident2(), std::nan("")), InputError);
  EXPECT_THROW(lower_value(ident2(), -0.1), InputError);
}

TEST(UpperValue, EndpointsAreExact) {
  for (const auto& prob : battery()) {
    EXPECT_NEAR(upper_value(prob, 0.0).value, prob.no_information_value(), 1e-9);
    const double lambda_max = full_information(prob).information;
    for (double extra : {0.0, 1e-3, 5.0}) {
      const ValuePoint v = upper_value(prob, lambda_max + extra);
      EXPECT_NEAR(v.value, prob.full_information_value(), 1e-9);
      EXPECT_TRUE(v.saturated);
      EXPECT_TRUE(std::isinf(v.beta));
    }
  }
}

TEST(UpperValue, FrontierPointsAreFeasibleAndConsistent) {
  for (const auto& prob : battery()) {
    for (double lambda : {0.01, 0.1, 0.25, 0.5, 0.9}) {
      for (const ValuePoint& v : {upper_value(prob, lambda), lower_value(prob, lambda)}) {
        EXPECT_LE(mutual_information(prob.prior(), v.channel), lambda + 1e-6);
        EXPECT_NEAR(joint_expected_utility(prob, v.channel), v.value, 1e-9);
        EXPECT_TRUE(v.converged) << prob.name() << " lambda " << lambda;
        EXPECT_LE(v.suboptimality, 1e-9 * std::max(1.0, prob.utility_scale()));
      }
    }
  }
}

TEST(UpperValue, FullInformationWithTiesUsesLeastInformation) {
  // State a1 is indifferent, so routing everything to b2 is optimal and free.
  const DecisionProblem p(Distribution::uniform(2), {{1.0, 1.0}, {0.0, 1.0}});
  const FullInformation full = full_information(p);
  EXPECT_NEAR(full.information, 0.0, 1e-9);
  EXPECT_DOUBLE_EQ(full.value, 1.0);
  EXPECT_DOUBLE_EQ(upper_value(p, 0.0).value, 1.0);
}

TEST(LowerValue, Examples) {
  const DecisionProblem p = ident2();
  EXPECT_DOUBLE_EQ(lower_value(p, 0.0).value, 0.5);
  EXPECT_NEAR(lower_value(p, kLn2).value, 0.0, 1e-12);
  EXPECT_NEAR(lower_value(p, 2.0).value, 0.0, 1e-12);
  EXPECT_NEAR(lower_value(p, 0.2).value, 1.0 - symmetric_reduction(0.2), 1e-9);
}

TEST(LowerValue, ReflectionIsBitExact) {
  for (const auto& prob : battery()) {
    for (double lambda : {0.0, 0.05, 0.2, 0.4, 0.8, 3.0}) {
      const ValuePoint lo = lower_value(prob, lambda);
      const ValuePoint up = upper_value(prob.negated(), lambda);
      EXPECT_EQ(std::bit_cast<std::uint64_t>(lo.value),
                std::bit_cast<std::uint64_t>(-up.value));
      EXPECT_EQ(lo.channel, up.channel);
    }
  }
}

TEST(LowerValue, BranchesAreOrdered) {
  for (const auto& prob : battery()) {
    const double lo0 = lower_value(prob, 0.0).value;
    const double up0 = upper_value(prob, 0.0).value;
    EXPECT_LE(lo0, up0);
    for (double lambda : {0.1, 0.3, 0.6}) {
      EXPECT_LE(lower_value(prob, lambda).value, lo0 + 1e-12);
      EXPECT_GE(upper_value(prob, lambda).value, up0 - 1e-12);
    }
  }
}

TEST(TraceCurve, EndpointGrid) {
  for (const auto& prob : battery()) {
    const double lambda_max = full_information(prob).information;
    if (lambda_max <= 0.0) continue;
    const ValueCurve c =
        trace_curve(prob, Branch::upper, LambdaGrid({0.0, lambda_max}));
    ASSERT_EQ(c.points.size(), 2u);
    EXPECT_NEAR(c.points[0].value, prob.no_information_value(), 1e-12);
    EXPECT_NEAR(c.points[1].value, prob.full_information_value(), 1e-12);
  }
}

TEST(TraceCurve, Ident2IsConcaveFromHalfToOne) {
  const ValueCurve c =
      trace_curve(ident2(), Branch::upper, LambdaGrid::linspace(0.0, 0.7, 50));
  ASSERT_EQ(c.points.size(), 50u);
  EXPECT_DOUBLE_EQ(c.points.front().value, 0.5);
  EXPECT_NEAR(c.points.back().value, 1.0, 1e-12);
  const CurvatureReport r = curvature_report(c);
  EXPECT_TRUE(r.monotone_ok);
  EXPECT_TRUE(r.strict_ok);
  EXPECT_TRUE(r.curvature_ok);
  // At lambda = 0 the reduction loses half its digits inverting 2 (p - 1/2)^2.
  for (const auto& p : c.points) {
    if (p.lambda == 0.0) continue;
    EXPECT_NEAR(p.value, symmetric_reduction(std::min(p.lambda, kLn2)), 1e-9);
  }
}

TEST(TraceCurve, SingleActionIsFlat) {
  const DecisionProblem p = one_action();
  for (Branch br : {Branch::upper, Branch::lower}) {
    const ValueCurve c = trace_curve(p, br, LambdaGrid::linspace(0.0, 1.0, 5));
    for (const auto& v : c.points) EXPECT_DOUBLE_EQ(v.value, 0.3 * 2.0 - 0.7);
  }
}

TEST(TraceCurve, IndependentOfWorkerCount) {
  SolverOptions serial;
  SolverOptions parallel;
  parallel.workers = 3;
  const LambdaGrid grid = LambdaGrid::linspace(0.0, 1.2, 17);
  for (const auto& prob : battery()) {
    const ValueCurve a = trace_curve(prob, Branch::lower, grid, serial);
    const ValueCurve b = trace_curve(prob, Branch::lower, grid, parallel);
    ASSERT_EQ(a.points.size(), b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) {
      EXPECT_EQ(std::bit_cast<std::uint64_t>(a.points[i].value),
                std::bit_cast<std::uint64_t>(b.points[i].value));
      EXPECT_EQ(a.points[i].channel, b.points[i].channel);
    }
  }
}

TEST(TraceCurve, MatchesPointwiseSolves) {
  const LambdaGrid grid = LambdaGrid::linspace(0.0, 1.0, 9);
  for (const auto& prob : battery()) {
    const ValueCurve c = trace_curve(prob, Branch::upper, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      EXPECT_EQ(c.points[i].value, upper_value(prob, grid.values()[i]).value);
    }
  }
}

TEST(TraceCurve, CurvesCertifyOnTheBattery) {
  const LambdaGrid grid = LambdaGrid::linspace(0.0, 1.5, 50);
  for (const auto& prob : battery()) {
    for (Branch br : {Branch::upper, Branch::lower}) {
      const CurvatureReport r = curvature_report(trace_curve(prob, br, grid));
      EXPECT_TRUE(r.monotone_ok && r.strict_ok && r.curvature_ok)
          << prob.name() << " " << to_string(br) << " " << r.max_violation;
    }
  }
}

TEST(TraceCurve, InverseTemperatureGrowsAlongTheCurve) {
  const LambdaGrid grid = LambdaGrid::linspace(0.0, 1.5, 40);
  for (const auto& prob : battery()) {
    const ValueCurve c = trace_curve(prob, Branch::upper, grid);
    for (std::size_t i = 1; i < c.points.size(); ++i) {
      const auto& prev = c.points[i - 1];
      const auto& cur = c.points[i];
      if (cur.saturated) break;
      EXPECT_GE(cur.beta, prev.beta * (1.0 - 1e-9)) << prob.name();
    }
    // Finite-difference slopes (1/beta) do not increase.
    for (std::size_t i = 2; i < c.points.size(); ++i) {
      const auto& p0 = c.points[i - 2];
      const auto& p1 = c.points[i - 1];
      const auto& p2 = c.points[i];
      const double s1 = (p1.value - p0.value) / (p1.lambda - p0.lambda);
      const double s2 = (p2.value - p1.value) / (p2.lambda - p1.lambda);
      EXPECT_LE(s2, s1 + 1e-5) << prob.name();
    }
  }
}

TEST(TraceCurve, StarvedSolverReportsNonConvergence) {
  SolverOptions starved;
  starved.max_iterations = 1;
  starved.max_bisections = 2;
  bool flagged = false;
  for (const auto& prob : battery()) {
    const ValuePoint v = upper_value(prob, 0.1, starved);
    EXPECT_GE(v.suboptimality, 0.0);
    flagged = flagged || !v.converged;
  }
  EXPECT_TRUE(flagged);
}

}  // namespace
}  // namespace voi
