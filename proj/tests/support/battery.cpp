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

#include "battery.hpp"

#include <fmt/format.h>

namespace voi::testing {

DecisionProblem ident2() {
  return DecisionProblem(Distribution::uniform(2), {{1.0, 0.0}, {0.0, 1.0}},
                         {"a1", "a2"}, {"b1", "b2"}, "ident2");
}

Distribution random_distribution(std::mt19937& rng, std::size_t n) {
  std::exponential_distribution<double> draw(1.0);
  std::vector<double> w(n);
  double total = 0.0;
  for (double& x : w) {
    x = draw(rng) + 1e-3;
    total += x;
  }
  for (double& x : w) x /= total;
  return Distribution(std::move(w));
}

Distribution random_sparse_distribution(std::mt19937& rng, std::size_t n) {
  std::exponential_distribution<double> draw(1.0);
  std::bernoulli_distribution zero(0.3);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<double> w(n, 0.0);
  double total = 0.0;
  for (double& x : w) {
    if (!zero(rng)) x = draw(rng);
    total += x;
  }
  if (total == 0.0) {
    w[pick(rng)] = 1.0;
    total = 1.0;
  }
  for (double& x : w) x /= total;
  return Distribution(std::move(w));
}

Channel random_channel(std::mt19937& rng, std::size_t n_states,
                       std::size_t n_actions) {
  std::vector<std::vector<double>> rows;
  for (std::size_t a = 0; a < n_states; ++a) {
    const Distribution row = random_distribution(rng, n_actions);
    rows.emplace_back(row.begin(), row.end());
  }
  return Channel(rows);
}

DecisionProblem random_problem(std::mt19937& rng, std::size_t n_states,
                               std::size_t n_actions, double payoff_bound) {
  std::uniform_real_distribution<double> payoff(-payoff_bound, payoff_bound);
  std::vector<std::vector<double>> u(n_states, std::vector<double>(n_actions));
  for (auto& row : u) {
    for (double& x : row) x = payoff(rng);
  }
  return DecisionProblem(random_distribution(rng, n_states), u, {}, {},
                         fmt::format("random_{}x{}", n_states, n_actions));
}

const std::vector<DecisionProblem>& battery() {
  static const std::vector<DecisionProblem> problems = [] {
    std::vector<DecisionProblem> out{ident2()};
    std::mt19937 rng(kBatterySeed);
    for (std::size_t s = 2; s <= 4; ++s) {
      for (std::size_t a = 2; a <= 4; ++a) {
        for (int k = 0; k < 3; ++k) out.push_back(random_problem(rng, s, a));
      }
    }
    return out;
  }();
  return problems;
}

std::vector<DecisionProblem> battery_up_to(std::size_t max_states,
                                           std::size_t max_actions) {
  std::vector<DecisionProblem> out;
  for (const auto& p : battery()) {
    if (p.n_states() <= max_states && p.n_actions() <= max_actions) {
      out.push_back(p);
    }
  }
  return out;
}

}  // namespace voi::testing
