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

#include <random>

#include <benchmark/benchmark.h>

#include "voi/deterministic.hpp"
#include "voi/oracle.hpp"
#include "voi/shannon.hpp"

namespace {

voi::DecisionProblem random_problem(std::size_t states, std::size_t actions) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> payoff(-10.0, 10.0);
  std::exponential_distribution<double> weight(1.0);
  std::vector<double> prior(states);
  double total = 0.0;
  for (double& p : prior) total += (p = weight(rng) + 1e-3);
  for (double& p : prior) p /= total;
  std::vector<std::vector<double>> u(states, std::vector<double>(actions));
  for (std::size_t a = 0; a < states; ++a) {
    for (double& x : u[a]) x = payoff(rng);
    // Give each state its own favourite action so information has value.
    u[a][a % actions] += 10.0;
  }
  return voi::DecisionProblem(voi::Distribution(std::move(prior)), std::move(u));
}

void BM_SolveTilt(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const voi::DecisionProblem prob = random_problem(n, n);
  for (auto _ : state) benchmark::DoNotOptimize(voi::solve_tilt(prob, 0.5));
}
BENCHMARK(BM_SolveTilt)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_UpperValue(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const voi::DecisionProblem prob = random_problem(n, n);
  const double lambda = 0.3 * voi::full_information(prob).information;
  for (auto _ : state) benchmark::DoNotOptimize(voi::upper_value(prob, lambda));
}
BENCHMARK(BM_UpperValue)->Arg(2)->Arg(4)->Arg(8);

void BM_TraceCurve(benchmark::State& state) {
  const voi::DecisionProblem prob = random_problem(4, 4);
  const voi::LambdaGrid grid = voi::LambdaGrid::linspace(0.0, 1.5, 50);
  for (auto _ : state) {
    benchmark::DoNotOptimize(voi::trace_curve(prob, voi::Branch::upper, grid));
  }
}
BENCHMARK(BM_TraceCurve)->Unit(benchmark::kMillisecond);

void BM_BoltzmannEnumeration(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const voi::DecisionProblem prob = random_problem(n, n);
  for (auto _ : state) benchmark::DoNotOptimize(voi::boltzmann_value(prob, 0.7));
}
BENCHMARK(BM_BoltzmannEnumeration)->DenseRange(2, 6)->Unit(benchmark::kMicrosecond);

void BM_GridOracle(benchmark::State& state) {
  const voi::DecisionProblem prob = random_problem(2, 2);
  const auto resolution = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(voi::oracle::grid_max_eu(prob, 0.2, resolution));
  }
}
BENCHMARK(BM_GridOracle)->Arg(250)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
