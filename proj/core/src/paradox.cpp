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

#include "voi/paradox.hpp"

#include <cmath>

#include <fmt/format.h>

#include "voi/errors.hpp"

namespace voi {
namespace {

Lottery two_outcome(double p_first, double first, double second) {
  return Lottery(Distribution({p_first, 1.0 - p_first},
                              {fmt::format("${}", first),
                               fmt::format("${}", second)}),
                 {first, second});
}

Lottery certain(double payoff) {
  return Lottery(Distribution({1.0}, {fmt::format("${}", payoff)}), {payoff});
}

// Head first appears on toss k with probability 2^-k / (1 - 2^-n),
// k = 1..n, paying sign * 2^k.
Lottery coin_tosses(int n, double sign) {
  if (n < 1) throw InputError("coin-toss lottery: tosses must be >= 1");
  if (n > 1000) throw InputError("coin-toss lottery: at most 1000 tosses");
  const double resolved = 1.0 - std::ldexp(1.0, -n);
  std::vector<double> probs(n), payoffs(n);
  std::vector<std::string> labels(n);
  for (int k = 1; k <= n; ++k) {
    probs[k - 1] = std::ldexp(1.0, -k) / resolved;
    payoffs[k - 1] = sign * std::ldexp(1.0, k);
    labels[k - 1] = fmt::format("head at toss {}", k);
  }
  return Lottery(Distribution(std::move(probs), std::move(labels)),
                 std::move(payoffs));
}

std::string truncation_note(int n) {
  return fmt::format(
      "truncated to {} tosses; P(head at k) = 2^-k / (1 - 2^-{})", n, n);
}

}  // namespace

const std::vector<std::string>& paradox_names() {
  static const std::vector<std::string> names = {
      "example1_variance", "ellsberg",    "st_petersburg",
      "northern_rock",     "allais_gain", "allais_loss"};
  return names;
}

std::vector<Lottery> ellsberg_urn_family(std::size_t m) {
  if (m < 2) throw InputError("ellsberg_urn_family: need at least 2 members");
  std::vector<Lottery> family;
  family.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(m - 1);
    family.push_back(two_outcome(t, 100.0, 0.0));
  }
  return family;
}

ParadoxFixture paradox(std::string_view name, std::optional<int> tosses) {
  const int n = tosses.value_or(kDefaultTruncation);
  if (name == "example1_variance") {
    const std::vector<double> payoffs = {-1000.0, -1.0, 1.0, 1000.0};
    const std::vector<std::string> labels = {"-$1000", "-$1", "$1", "$1000"};
    return {std::string(name),
            "equal expected utility, very different spread",
            Lottery(Distribution({0.0, 0.5, 0.5, 0.0}, labels), payoffs),
            Lottery(Distribution({0.5, 0.0, 0.0, 0.5}, labels), payoffs),
            {}};
  }
  if (name == "ellsberg") {
    // The unknown urn, averaged over t ~ U[0, 1], wins with probability
    // integral of t dt = 1/2.
    return {std::string(name),
            "known 50/50 urn versus an urn with unknown composition",
            two_outcome(0.5, 100.0, 0.0), two_outcome(0.5, 100.0, 0.0),
            "unknown urn reduced over a uniform prior on its red fraction"};
  }
  if (name == "st_petersburg") {
    return {std::string(name), "win $2^k if the first head is on toss k",
            coin_tosses(n, 1.0), std::nullopt, truncation_note(n)};
  }
  if (name == "northern_rock") {
    return {std::string(name), "repay $2^k if the first head is on toss k",
            coin_tosses(n, -1.0), std::nullopt, truncation_note(n)};
  }
  if (name == "allais_gain") {
    return {std::string(name), "$300 with probability 1/3 versus $100 for sure",
            two_outcome(1.0 / 3.0, 300.0, 0.0), certain(100.0), {}};
  }
  if (name == "allais_loss") {
    return {std::string(name),
            "lose $300 with probability 1/3 versus lose $100 for sure",
            two_outcome(1.0 / 3.0, -300.0, 0.0), certain(-100.0), {}};
  }
  throw InputError(fmt::format("unknown paradox '{}'", name));
}

}  // namespace voi
