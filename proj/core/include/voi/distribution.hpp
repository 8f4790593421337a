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

// Finite probability primitives. All quantities are in nats.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace voi {

/// Entries below this are treated as exact zeros where they multiply a log.
inline constexpr double kNegligibleProbability = 1e-15;

/// Inputs whose sum is within this of 1 are renormalized; larger deviations
/// are rejected.
inline constexpr double kNormalizationSlack = 1e-9;

/// A probability vector over finitely many labeled outcomes.
///
/// Immutable after construction. Construction validates that every entry is
/// finite and non-negative and that the entries sum to one (renormalizing
/// round-off up to kNormalizationSlack).
class Distribution {
 public:
  explicit Distribution(std::vector<double> probs,
                        std::vector<std::string> labels = {});

  static Distribution uniform(std::size_t n);
  static Distribution point_mass(std::size_t n, std::size_t index);

  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const noexcept { return probs_[i]; }
  std::span<const double> probs() const noexcept { return probs_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  auto begin() const noexcept { return probs_.begin(); }
  auto end() const noexcept { return probs_.end(); }

  friend bool operator==(const Distribution&, const Distribution&) = default;

 private:
  std::vector<double> probs_;
  std::vector<std::string> labels_;
};

/// Conditional probability matrix P(b|a), stored row-major with one
/// distribution row per state a.
class Channel {
 public:
  /// Each row is validated (and renormalized) like a Distribution.
  Channel(std::size_t n_states, std::size_t n_actions,
          std::vector<double> row_major);
  explicit Channel(const std::vector<std::vector<double>>& rows);

  /// Every state maps to the same output distribution.
  static Channel constant(std::size_t n_states, const Distribution& row);
  /// Point-mass rows: state a maps to action assignment[a].
  static Channel deterministic(std::span<const std::size_t> assignment,
                               std::size_t n_actions);
  static Channel identity(std::size_t n);
  /// Row-wise convex combination weight * x + (1 - weight) * y.
  static Channel mix(const Channel& x, const Channel& y, double weight);

  std::size_t n_states() const noexcept { return n_states_; }
  std::size_t n_actions() const noexcept { return n_actions_; }
  double operator()(std::size_t a, std::size_t b) const noexcept {
    return entries_[a * n_actions_ + b];
  }
  std::span<const double> row(std::size_t a) const noexcept {
    return {entries_.data() + a * n_actions_, n_actions_};
  }
  std::span<const double> entries() const noexcept { return entries_; }

  friend bool operator==(const Channel&, const Channel&) = default;

 private:
  std::size_t n_states_;
  std::size_t n_actions_;
  std::vector<double> entries_;
};

/// -sum p ln p with 0 ln 0 = 0.
double entropy(const Distribution& p);

/// sum p ln(p/q). Returns +infinity when some p_i > 0 has q_i = 0.
/// Throws InputError on dimension mismatch.
double kl_divergence(const Distribution& p, const Distribution& q);

/// P(b) = sum_a Q(a) P(b|a).
Distribution output_marginal(const Distribution& prior, const Channel& ch);

/// I(A;B) for the joint Q(a) P(b|a).
double mutual_information(const Distribution& prior, const Channel& ch);

/// Joint Q(a) P(b|a), flattened row-major over (a, b).
Distribution joint_distribution(const Distribution& prior, const Channel& ch);

/// Product measure p ⊗ q, flattened row-major.
Distribution product(const Distribution& p, const Distribution& q);

}  // namespace voi
