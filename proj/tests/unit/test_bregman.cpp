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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "battery.hpp"
#include "voi/bregman.hpp"
#include "voi/curve.hpp"
#include "voi/errors.hpp"
#include "voi/oracle.hpp"
#include "voi/shannon.hpp"

namespace voi {
namespace {

using testing::random_distribution;

constexpr double kLn2 = 0.693147180559945309417;
constexpr double kTiltOne = 0.731058578630004879252;  // e / (e + 1)

BregmanGenerator entropy_gen(std::size_t n) {
  return BregmanGenerator::negative_entropy(Distribution::uniform(n));
}

ResourceProblem resource(std::vector<double> u, BregmanGenerator gen,
                         Distribution ref, double lambda) {
  return ResourceProblem{std::move(u), std::move(gen), std::move(ref), lambda};
}

TEST(BregmanDivergence, Examples) {
  const Distribution z({0.5, 0.5});
  const Distribution y({1.0, 0.0});
  EXPECT_EQ(bregman_divergence(entropy_gen(2), z, z), 0.0);
  EXPECT_NEAR(bregman_divergence(entropy_gen(2), y, z), kLn2, 1e-12);
  EXPECT_NEAR(bregman_divergence(entropy_gen(2), y, z), kl_divergence(y, z), 1e-12);
  EXPECT_NEAR(bregman_divergence(BregmanGenerator::squared_euclidean(2), y, z), 0.25,
              1e-15);
}

TEST(BregmanDivergence, BoundaryAnchorRejected) {
  EXPECT_THROW(bregman_divergence(entropy_gen(2), Distribution({0.5, 0.5}),
                                  Distribution({1.0, 0.0})),
               InputError);
}

TEST(BregmanDivergence, DimensionMismatch) {
  EXPECT_THROW(bregman_divergence(entropy_gen(2), Distribution::uniform(3),
                                  Distribution::uniform(3)),
               InputError);
}

TEST(BregmanDivergence, EntropyKindIsKl) {
  std::mt19937 rng(41);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 2 + t % 6;
    const Distribution y = random_distribution(rng, n);
    const Distribution z = random_distribution(rng, n);
    const BregmanGenerator gen =
        BregmanGenerator::negative_entropy(random_distribution(rng, n));
    EXPECT_NEAR(bregman_divergence(gen, y, z), kl_divergence(y, z), 1e-10);
  }
}

TEST(BregmanDivergence, EuclideanKindIsHalfSquaredDistance) {
  std::mt19937 rng(42);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 2 + t % 6;
    const Distribution y = testing::random_sparse_distribution(rng, n);
    const Distribution z = testing::random_sparse_distribution(rng, n);
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) d += 0.5 * (y[i] - z[i]) * (y[i] - z[i]);
    EXPECT_NEAR(bregman_divergence(BregmanGenerator::squared_euclidean(n), y, z), d,
                1e-12);
    EXPECT_GE(bregman_divergence(BregmanGenerator::squared_euclidean(n), y, z), 0.0);
  }
}

TEST(GibbsSolution, Examples) {
  const Distribution ref = Distribution::uniform(2);
  const std::vector<double> u = {1.0, 0.0};
  const Distribution zero = gibbs_solution(u, ref, 0.0);
  EXPECT_DOUBLE_EQ(zero[0], 0.5);
  const Distribution one = gibbs_solution(u, ref, 1.0);
  EXPECT_NEAR(one[0], kTiltOne, 1e-12);
  EXPECT_NEAR(one[1], 1.0 - kTiltOne, 1e-12);
  const Distribution cold = gibbs_solution(u, ref, 1e4);
  EXPECT_EQ(cold[0], 1.0);
  EXPECT_EQ(cold[1], 0.0);
}

TEST(ProjectToSimplex, KnownProjections) {
  const Distribution a = project_to_simplex(std::vector<double>{0.5, 0.5});
  EXPECT_DOUBLE_EQ(a[0], 0.5);
  const Distribution b = project_to_simplex(std::vector<double>{2.0, 0.0});
  EXPECT_DOUBLE_EQ(b[0], 1.0);
  EXPECT_DOUBLE_EQ(b[1], 0.0);
  const Distribution c = project_to_simplex(std::vector<double>{0.6, 0.6, -1.0});
  EXPECT_NEAR(c[0], 0.5, 1e-15);
  EXPECT_NEAR(c[1], 0.5, 1e-15);
  EXPECT_EQ(c[2], 0.0);
}

TEST(ProjectToSimplex, IsClosestPoint) {
  std::mt19937 rng(43);
  std::normal_distribution<double> noise(0.0, 0.5);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 2 + t % 4;
    std::vector<double> x(n);
    for (double& v : x) v = noise(rng);
    const Distribution p = project_to_simplex(x);
    auto dist = [&](const Distribution& y) {
      double d = 0.0;
      for (std::size_t i = 0; i < n; ++i) d += (y[i] - x[i]) * (y[i] - x[i]);
      return d;
    };
    for (int k = 0; k < 20; ++k) {
      EXPECT_LE(dist(p), dist(testing::random_sparse_distribution(rng, n)) + 1e-12);
    }
  }
}

TEST(ConstrainedValue, ZeroLambdaPinsReference) {
  const Distribution ref({0.2, 0.5, 0.3});
  for (auto gen : {BregmanGenerator::negative_entropy(Distribution::uniform(3)),
                   BregmanGenerator::squared_euclidean(3)}) {
    const ValuePoint v = constrained_value(resource({1.0, -2.0, 4.0}, gen, ref, 0.0),
                                           Branch::upper);
    EXPECT_NEAR(v.value, 0.2 - 1.0 + 1.2, 1e-15);
  }
}

TEST(ConstrainedValue, FlatUtilityIsConstant) {
  for (double lambda : {0.0, 0.1, 1.0, 10.0}) {
    for (Branch br : {Branch::upper, Branch::lower}) {
      const ValuePoint v = constrained_value(
          resource({2.5, 2.5, 2.5}, entropy_gen(3), Distribution({0.2, 0.5, 0.3}), lambda),
          br);
      EXPECT_NEAR(v.value, 2.5, 1e-15);
    }
  }
}

TEST(ConstrainedValue, SaturatesAtTheBestVertex) {
  const Distribution ref({0.2, 0.5, 0.3});
  const auto rp = resource({1.0, 0.0, -1.0}, entropy_gen(3), ref, -std::log(0.2));
  const ValuePoint v = constrained_value(rp, Branch::upper);
  EXPECT_TRUE(v.saturated);
  EXPECT_DOUBLE_EQ(v.value, 1.0);

  auto below = rp;
  below.lambda = -std::log(0.2) - 1e-3;
  const ValuePoint w = constrained_value(below, Branch::upper);
  EXPECT_FALSE(w.saturated);
  EXPECT_LT(w.value, 1.0);
  EXPECT_GT(w.value, 0.99);
}

TEST(ConstrainedValue, RejectsNegativeLambda) {
  EXPECT_THROW(constrained_value(resource({1.0, 0.0}, entropy_gen(2),
                                          Distribution::uniform(2), -0.1),
                                 Branch::upper),
               InputError);
  EXPECT_THROW(constrained_value(resource({1.0, 0.0, 3.0}, entropy_gen(2),
                                          Distribution::uniform(2), 0.1),
                                 Branch::upper),
               InputError);
}

TEST(ConstrainedValue, ReturnedPointIsTheGibbsTilt) {
  std::mt19937 rng(44);
  std::uniform_real_distribution<double> payoff(-5.0, 5.0);
  std::uniform_real_distribution<double> level(0.01, 0.6);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + t % 4;
    std::vector<double> u(n);
    for (double& x : u) x = payoff(rng);
    const Distribution ref = random_distribution(rng, n);
    const ValuePoint v = constrained_value(
        resource(u, entropy_gen(n), ref, level(rng)), Branch::upper);
    if (v.saturated) continue;
    const Distribution y = solution_of(v);
    const Distribution g = gibbs_solution(u, ref, v.beta);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(y[i], g[i], 1e-8);
    EXPECT_NEAR(v.information, v.lambda, 1e-8);
  }
}

TEST(ConstrainedValue, RowwiseGibbsIdentityWithShannonTilts) {
  for (const auto& prob : testing::battery()) {
    const double beta = 0.6;
    const TiltSolution tilt = solve_tilt(prob, beta);
    const Distribution marginal(tilt.marginal);
    if (std::any_of(marginal.begin(), marginal.end(), [](double p) { return p <= 0.0; })) {
      continue;
    }
    for (std::size_t a = 0; a < prob.n_states(); ++a) {
      const auto row_span = prob.utility_row(a);
      const std::vector<double> u(row_span.begin(), row_span.end());
      const Distribution row(
          std::vector<double>(tilt.channel.row(a).begin(), tilt.channel.row(a).end()));
      const double lambda = kl_divergence(row, marginal);
      const ValuePoint v = constrained_value(
          resource(u, entropy_gen(prob.n_actions()), marginal, lambda), Branch::upper);
      const Distribution y = solution_of(v);
      for (std::size_t b = 0; b < prob.n_actions(); ++b) {
        EXPECT_NEAR(y[b], row[b], 1e-7) << prob.name();
      }
      const Distribution exact = gibbs_solution(u, marginal, beta);
      for (std::size_t b = 0; b < prob.n_actions(); ++b) {
        EXPECT_NEAR(exact[b], row[b], 1e-10) << prob.name();
      }
    }
  }
}

TEST(ConstrainedValue, MonotoneOperator) {
  std::mt19937 rng(45);
  std::uniform_real_distribution<double> payoff(-5.0, 5.0);
  std::uniform_real_distribution<double> temp(0.0, 5.0);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 2 + t % 4;
    std::vector<double> u(n);
    for (double& x : u) x = payoff(rng);
    const Distribution ref = random_distribution(rng, n);
    double b1 = temp(rng), b2 = temp(rng);
    if (b1 > b2) std::swap(b1, b2);
    for (auto gen : {entropy_gen(n), BregmanGenerator::squared_euclidean(n)}) {
      const auto anchor = gen.gradient(ref.probs());
      auto y = [&](double beta) {
        std::vector<double> x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = anchor[i] + beta * u[i];
        return gen.simplex_dual_map(x);
      };
      const Distribution y1 = y(b1), y2 = y(b2);
      double gain = 0.0;
      for (std::size_t i = 0; i < n; ++i) gain += u[i] * (y2[i] - y1[i]);
      EXPECT_GE(gain, -1e-10);
    }
  }
}

TEST(ConstrainedValue, CurvesAreConcaveAndConvex) {
  const Distribution ref({0.2, 0.5, 0.3});
  const std::vector<double> u = {1.0, 0.2, -0.7};
  for (auto gen : {entropy_gen(3), BregmanGenerator::squared_euclidean(3)}) {
    for (Branch br : {Branch::upper, Branch::lower}) {
      ValueCurve c{"resource", br, {}};
      for (int i = 0; i < 50; ++i) {
        c.points.push_back(
            constrained_value(resource(u, gen, ref, 0.02 * i), br));
      }
      const CurvatureReport r = curvature_report(c);
      EXPECT_TRUE(r.monotone_ok);
      EXPECT_TRUE(r.strict_ok);
      EXPECT_TRUE(r.curvature_ok) << r.max_violation;
    }
  }
}

TEST(ConstrainedValue, AgreesWithSimplexGridOracle) {
  struct Case {
    std::vector<double> u;
    Distribution ref;
  };
  const std::vector<Case> cases = {
      {{1.0, 0.0}, Distribution::uniform(2)},
      {{0.3, -1.0, 2.0}, Distribution({0.2, 0.5, 0.3})},
      {{-1.0, 4.0, 0.5}, Distribution::uniform(3)},
  };
  for (const auto& c : cases) {
    const std::size_t n = c.u.size();
    for (auto gen : {entropy_gen(n), BregmanGenerator::squared_euclidean(n)}) {
      for (double lambda : {0.0, 0.02, 0.1, 0.3}) {
        for (Branch br : {Branch::upper, Branch::lower}) {
          const auto rp = resource(c.u, gen, c.ref, lambda);
          EXPECT_NEAR(constrained_value(rp, br).value,
                      oracle::simplex_grid_value(rp, br, 200), 2e-3);
        }
      }
    }
  }
}

TEST(ConstrainedValue, LowerBranchReflects) {
  const auto rp = resource({1.0, 0.2, -0.7}, entropy_gen(3), Distribution({0.2, 0.5, 0.3}),
                           0.15);
  auto flipped = rp;
  for (double& x : flipped.utility) x = -x;
  EXPECT_EQ(constrained_value(rp, Branch::lower).value,
            -constrained_value(flipped, Branch::upper).value);
}

TEST(GeneratorKind, Parsing) {
  EXPECT_EQ(parse_generator_kind("negative_entropy"), GeneratorKind::negative_entropy);
  EXPECT_EQ(parse_generator_kind("negative_entropy_relative"),
            GeneratorKind::negative_entropy);
  EXPECT_EQ(parse_generator_kind("squared_euclidean"), GeneratorKind::squared_euclidean);
  EXPECT_THROW(parse_generator_kind("hellinger"), InputError);
}

}  // namespace
}  // namespace voi
