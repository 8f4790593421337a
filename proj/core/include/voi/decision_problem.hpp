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
#include <span>
#include <string>
#include <vector>

#include "voi/distribution.hpp"

namespace voi {

/// A fixed prior Q(A) over states and a finite utility matrix u(a, b).
class DecisionProblem {
 public:
  DecisionProblem(Distribution prior,
                  const std::vector<std::vector<double>>& utilities,
                  std::vector<std::string> state_labels = {},
                  std::vector<std::string> action_labels = {},
                  std::string name = {});
  DecisionProblem(Distribution prior, std::size_t n_actions,
                  std::vector<double> utilities_row_major,
                  std::vector<std::string> state_labels = {},
                  std::vector<std::string> action_labels = {},
                  std::string name = {});

  const std::string& name() const noexcept { return name_; }
  const Distribution& prior() const noexcept { return prior_; }
  std::size_t n_states() const noexcept { return prior_.size(); }
  std::size_t n_actions() const noexcept { return n_actions_; }
  double utility(std::size_t a, std::size_t b) const noexcept {
    return utilities_[a * n_actions_ + b];
  }
  std::span<const double> utility_row(std::size_t a) const noexcept {
    return {utilities_.data() + a * n_actions_, n_actions_};
  }
  std::span<const double> utilities() const noexcept { return utilities_; }
  const std::vector<std::string>& state_labels() const noexcept {
    return state_labels_;
  }
  const std::vector<std::string>& action_labels() const noexcept {
    return action_labels_;
  }

  /// Same problem with u replaced by -u.
  DecisionProblem negated() const;

  /// max u - min u over the whole matrix.
  double utility_scale() const noexcept;

  /// Expected payoff of each action under the prior, E_Q[u(., b)].
  std::vector<double> action_values() const;
  /// Lowest-index maximizer of E_Q[u(., b)].
  std::size_t best_constant_action() const;
  /// max_b E_Q[u(., b)]: the value with no information.
  double no_information_value() const;
  /// E_Q[max_b u(a, b)]: the value with complete information.
  double full_information_value() const;

  friend bool operator==(const DecisionProblem&,
                         const DecisionProblem&) = default;

 private:
  void validate();

  Distribution prior_;
  std::size_t n_actions_;
  std::vector<double> utilities_;
  std::vector<std::string> state_labels_;
  std::vector<std::string> action_labels_;
  std::string name_;
};

/// Payoffs attached to the outcomes of a distribution.
class Lottery {
 public:
  Lottery(Distribution dist, std::vector<double> payoffs);

  const Distribution& dist() const noexcept { return dist_; }
  std::span<const double> payoffs() const noexcept { return payoffs_; }
  std::size_t size() const noexcept { return payoffs_.size(); }

  /// Payoffs multiplied by -1; turns gains into losses.
  Lottery negated() const;
  /// Payoffs mapped through s * u + c.
  Lottery affine(double scale, double shift) const;

 private:
  Distribution dist_;
  std::vector<double> payoffs_;
};

/// alpha * p + (1 - alpha) * q for lotteries over the same payoff vector.
Lottery mix(const Lottery& p, const Lottery& q, double alpha);

double expected_utility(const Lottery& lot);

/// sum_a sum_b Q(a) P(b|a) u(a, b).
double joint_expected_utility(const DecisionProblem& prob, const Channel& ch);

enum class Preference { less, indifferent, greater };

inline constexpr double kIndifferenceTolerance = 1e-9;

/// Orders two lotteries by expected utility.
Preference eu_compare(const Lottery& p, const Lottery& q);

const char* to_string(Preference pref) noexcept;

}  // namespace voi
