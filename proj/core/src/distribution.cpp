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

#include "voi/distribution.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "voi/errors.hpp"

namespace voi {
namespace {

// Validates a probability vector in place; renormalizes small round-off.
void validate_probabilities(std::span<double> probs, const char* what) {
  if (probs.empty()) {
    throw InputError(fmt::format("{}: empty probability vector", what));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double p = probs[i];
    if (!std::isfinite(p) || p < 0.0) {
      throw InputError(
          fmt::format("{}: entry {} = {} is not a probability", what, i, p));
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kNormalizationSlack) {
    throw InputError(
        fmt::format("{}: entries sum to {:.17g}, expected 1", what, sum));
  }
  // Drift of a few ulps is left alone so that normalizing is idempotent and
  // stored vectors read back bit for bit.
  if (std::abs(sum - 1.0) > 8.0 * std::numeric_limits<double>::epsilon()) {
    for (double& p : probs) p /= sum;
  }
}

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw InputError(fmt::format("{}: dimension mismatch ({} vs {})", what, a, b));
  }
}

}  // namespace

Distribution::Distribution(std::vector<double> probs,
                           std::vector<std::string> labels)
    : probs_(std::move(probs)), labels_(std::move(labels)) {
  validate_probabilities(probs_, "Distribution");
  if (!labels_.empty() && labels_.size() != probs_.size()) {
    throw InputError(fmt::format("Distribution: {} labels for {} outcomes",
                                 labels_.size(), probs_.size()));
  }
}

Distribution Distribution::uniform(std::size_t n) {
  if (n == 0) throw InputError("Distribution::uniform: n must be positive");
  return Distribution(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Distribution Distribution::point_mass(std::size_t n, std::size_t index) {
  if (index >= n) throw InputError("Distribution::point_mass: index out of range");
  std::vector<double> probs(n, 0.0);
  probs[index] = 1.0;
  return Distribution(std::move(probs));
}

Channel::Channel(std::size_t n_states, std::size_t n_actions,
                 std::vector<double> row_major)
    : n_states_(n_states), n_actions_(n_actions), entries_(std::move(row_major)) {
  if (n_states_ == 0 || n_actions_ == 0) {
    throw InputError("Channel: dimensions must be positive");
  }
  if (entries_.size() != n_states_ * n_actions_) {
    throw InputError(fmt::format("Channel: {} entries for a {}x{} matrix",
                                 entries_.size(), n_states_, n_actions_));
  }
  for (std::size_t a = 0; a < n_states_; ++a) {
    validate_probabilities(
        std::span<double>(entries_.data() + a * n_actions_, n_actions_),
        "Channel row");
  }
}

namespace {
std::vector<double> flatten(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw InputError("Channel: no rows");
  std::vector<double> out;
  out.reserve(rows.size() * rows.front().size());
  for (const auto& r : rows) {
    if (r.size() != rows.front().size()) {
      throw InputError("Channel: rows have different lengths");
    }
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}
}  // namespace

Channel::Channel(const std::vector<std::vector<double>>& rows)
    : Channel(rows.size(), rows.empty() ? 0 : rows.front().size(),
              flatten(rows)) {}

Channel Channel::constant(std::size_t n_states, const Distribution& row) {
  std::vector<double> entries;
  entries.reserve(n_states * row.size());
  for (std::size_t a = 0; a < n_states; ++a) {
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return Channel(n_states, row.size(), std::move(entries));
}

Channel Channel::deterministic(std::span<const std::size_t> assignment,
                               std::size_t n_actions) {
  std::vector<double> entries(assignment.size() * n_actions, 0.0);
  for (std::size_t a = 0; a < assignment.size(); ++a) {
    if (assignment[a] >= n_actions) {
      throw InputError("Channel::deterministic: action index out of range");
    }
    entries[a * n_actions + assignment[a]] = 1.0;
  }
  return Channel(assignment.size(), n_actions, std::move(entries));
}

Channel Channel::identity(std::size_t n) {
  std::vector<std::size_t> assignment(n);
  std::iota(assignment.begin(), assignment.end(), std::size_t{0});
  return deterministic(assignment, n);
}

Channel Channel::mix(const Channel& x, const Channel& y, double weight) {
  require_same_size(x.n_states(), y.n_states(), "Channel::mix");
  require_same_size(x.n_actions(), y.n_actions(), "Channel::mix");
  if (!(weight >= 0.0 && weight <= 1.0)) {
    throw InputError("Channel::mix: weight outside [0, 1]");
  }
  std::vector<double> entries(x.entries_.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    entries[i] = weight * x.entries_[i] + (1.0 - weight) * y.entries_[i];
  }
  return Channel(x.n_states(), x.n_actions(), std::move(entries));
}

double entropy(const Distribution& p) {
  double h = 0.0;
  for (double pi : p) {
    if (pi >= kNegligibleProbability) h -= pi * std::log(pi);
  }
  return h;
}

double kl_divergence(const Distribution& p, const Distribution& q) {
  require_same_size(p.size(), q.size(), "kl_divergence");
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < kNegligibleProbability) continue;
    if (q[i] == 0.0) return std::numeric_limits<double>::infinity();
    d += p[i] * std::log(p[i] / q[i]);
  }
  // Round-off can leave a tiny negative value for p ≈ q.
  return d < 0.0 ? 0.0 : d;
}

Distribution output_marginal(const Distribution& prior, const Channel& ch) {
  require_same_size(prior.size(), ch.n_states(), "output_marginal");
  std::vector<double> out(ch.n_actions(), 0.0);
  for (std::size_t a = 0; a < ch.n_states(); ++a) {
    for (std::size_t b = 0; b < ch.n_actions(); ++b) {
      out[b] += prior[a] * ch(a, b);
    }
  }
  return Distribution(std::move(out));
}

double mutual_information(const Distribution& prior, const Channel& ch) {
  // Identical rows carry no information; rounding in the marginal would
  // otherwise leave a residue of a few ulps.
  bool constant = true;
  for (std::size_t a = 1; a < ch.n_states() && constant; ++a) {
    for (std::size_t b = 0; b < ch.n_actions(); ++b) {
      if (ch(a, b) != ch(0, b)) {
        constant = false;
        break;
      }
    }
  }
  if (constant) return 0.0;
  const Distribution marginal = output_marginal(prior, ch);
  double info = 0.0;
  for (std::size_t a = 0; a < ch.n_states(); ++a) {
    for (std::size_t b = 0; b < ch.n_actions(); ++b) {
      const double mass = prior[a] * ch(a, b);
      if (mass < kNegligibleProbability) continue;
      info += mass * std::log(ch(a, b) / marginal[b]);
    }
  }
  return info < 0.0 ? 0.0 : info;
}

Distribution joint_distribution(const Distribution& prior, const Channel& ch) {
  require_same_size(prior.size(), ch.n_states(), "joint_distribution");
  std::vector<double> joint(ch.n_states() * ch.n_actions());
  for (std::size_t a = 0; a < ch.n_states(); ++a) {
    for (std::size_t b = 0; b < ch.n_actions(); ++b) {
      joint[a * ch.n_actions() + b] = prior[a] * ch(a, b);
    }
  }
  return Distribution(std::move(joint));
}

Distribution product(const Distribution& p, const Distribution& q) {
  std::vector<double> out(p.size() * q.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < q.size(); ++j) {
      out[i * q.size() + j] = p[i] * q[j];
    }
  }
  return Distribution(std::move(out));
}

}  // namespace voi
