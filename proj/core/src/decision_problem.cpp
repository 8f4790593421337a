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

#include "voi/decision_problem.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "voi/errors.hpp"

namespace voi {
namespace {

std::vector<double> flatten_utilities(
    const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw InputError("DecisionProblem: empty utility matrix");
  std::vector<double> out;
  for (const auto& r : rows) {
    if (r.size() != rows.front().size()) {
      throw InputError("DecisionProblem: utility matrix is not rectangular");
    }
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

}  // namespace

DecisionProblem::DecisionProblem(
    Distribution prior, const std::vector<std::vector<double>>& utilities,
    std::vector<std::string> state_labels,
    std::vector<std::string> action_labels, std::string name)
    : DecisionProblem(std::move(prior),
                      utilities.empty() ? 0 : utilities.front().size(),
                      flatten_utilities(utilities), std::move(state_labels),
                      std::move(action_labels), std::move(name)) {}

DecisionProblem::DecisionProblem(Distribution prior, std::size_t n_actions,
                                 std::vector<double> utilities_row_major,
                                 std::vector<std::string> state_labels,
                                 std::vector<std::string> action_labels,
                                 std::string name)
    : prior_(std::move(prior)),
      n_actions_(n_actions),
      utilities_(std::move(utilities_row_major)),
      state_labels_(std::move(state_labels)),
      action_labels_(std::move(action_labels)),
      name_(std::move(name)) {
  validate();
}

void DecisionProblem::validate() {
  if (n_actions_ == 0) throw InputError("DecisionProblem: no actions");
  if (utilities_.size() != prior_.size() * n_actions_) {
    throw InputError(fmt::format(
        "DecisionProblem: utility matrix has {} entries, expected {}x{}",
        utilities_.size(), prior_.size(), n_actions_));
  }
  for (double u : utilities_) {
    if (!std::isfinite(u)) {
      throw InputError("DecisionProblem: utilities must be finite");
    }
  }
  if (!state_labels_.empty() && state_labels_.size() != prior_.size()) {
    throw InputError("DecisionProblem: state label count mismatch");
  }
  if (!action_labels_.empty() && action_labels_.size() != n_actions_) {
    throw InputError("DecisionProblem: action label count mismatch");
  }
}

DecisionProblem DecisionProblem::negated() const {
  std::vector<double> neg(utilities_.size());
  std::transform(utilities_.begin(), utilities_.end(), neg.begin(),
                 [](double u) { return -u; });
  return DecisionProblem(prior_, n_actions_, std::move(neg), state_labels_,
                         action_labels_, name_);
}

double DecisionProblem::utility_scale() const noexcept {
  const auto [lo, hi] = std::minmax_element(utilities_.begin(), utilities_.end());
  return *hi - *lo;
}

std::vector<double> DecisionProblem::action_values() const {
  std::vector<double> values(n_actions_, 0.0);
  for (std::size_t a = 0; a < n_states(); ++a) {
    for (std::size_t b = 0; b < n_actions_; ++b) {
      values[b] += prior_[a] * utility(a, b);
    }
  }
  return values;
}

std::size_t DecisionProblem::best_constant_action() const {
  const auto values = action_values();
  return static_cast<std::size_t>(
      std::max_element(values.begin(), values.end()) - values.begin());
}

double DecisionProblem::no_information_value() const {
  const auto values = action_values();
  return *std::max_element(values.begin(), values.end());
}

double DecisionProblem::full_information_value() const {
  double total = 0.0;
  for (std::size_t a = 0; a < n_states(); ++a) {
    const auto row = utility_row(a);
    total += prior_[a] * *std::max_element(row.begin(), row.end());
  }
  return total;
}

Lottery::Lottery(Distribution dist, std::vector<double> payoffs)
    : dist_(std::move(dist)), payoffs_(std::move(payoffs)) {
  if (payoffs_.size() != dist_.size()) {
    throw InputError(fmt::format("Lottery: {} payoffs for {} outcomes",
                                 payoffs_.size(), dist_.size()));
  }
  for (double u : payoffs_) {
    if (!std::isfinite(u)) throw InputError("Lottery: payoffs must be finite");
  }
}

Lottery Lottery::negated() const { return affine(-1.0, 0.0); }

Lottery Lottery::affine(double scale, double shift) const {
  std::vector<double> out(payoffs_.size());
  std::transform(payoffs_.begin(), payoffs_.end(), out.begin(),
                 [&](double u) { return scale * u + shift; });
  return Lottery(dist_, std::move(out));
}

Lottery mix(const Lottery& p, const Lottery& q, double alpha) {
  if (!std::ranges::equal(p.payoffs(), q.payoffs())) {
    throw InputError("mix: lotteries must share one outcome set");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw InputError("mix: alpha outside [0, 1]");
  }
  std::vector<double> probs(p.size());
  for (std::size_t i = 0; i < probs.size(); ++i) {
    probs[i] = alpha * p.dist()[i] + (1.0 - alpha) * q.dist()[i];
  }
  return Lottery(Distribution(std::move(probs), p.dist().labels()),
                 std::vector<double>(p.payoffs().begin(), p.payoffs().end()));
}

double expected_utility(const Lottery& lot) {
  double eu = 0.0;
  for (std::size_t i = 0; i < lot.size(); ++i) {
    eu += lot.dist()[i] * lot.payoffs()[i];
  }
  return eu;
}

double joint_expected_utility(const DecisionProblem& prob, const Channel& ch) {
  if (ch.n_states() != prob.n_states() || ch.n_actions() != prob.n_actions()) {
    throw InputError(fmt::format(
        "joint_expected_utility: channel is {}x{}, problem is {}x{}",
        ch.n_states(), ch.n_actions(), prob.n_states(), prob.n_actions()));
  }
  double eu = 0.0;
  for (std::size_t a = 0; a < prob.n_states(); ++a) {
    double row = 0.0;
    for (std::size_t b = 0; b < prob.n_actions(); ++b) {
      row += ch(a, b) * prob.utility(a, b);
    }
    eu += prob.prior()[a] * row;
  }
  return eu;
}

Preference eu_compare(const Lottery& p, const Lottery& q) {
  const double diff = expected_utility(p) - expected_utility(q);
  if (diff > kIndifferenceTolerance) return Preference::greater;
  if (diff < -kIndifferenceTolerance) return Preference::less;
  return Preference::indifferent;
}

const char* to_string(Preference pref) noexcept {
  switch (pref) {
    case Preference::less:
      return "less";
    case Preference::indifferent:
      return "indifferent";
    case Preference::greater:
      return "greater";
  }
  return "?";
}

}  // namespace voi
