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

// Value of information for a general information resource: a Bregman
// divergence D_F(y, z) from a reference distribution z bounds how far the
// chosen distribution y may move on the probability simplex.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "voi/distribution.hpp"
#include "voi/shannon.hpp"
#include "voi/value_point.hpp"

namespace voi {

enum class GeneratorKind { negative_entropy, squared_euclidean };

const char* to_string(GeneratorKind kind) noexcept;
GeneratorKind parse_generator_kind(std::string_view text);

/// A smooth convex generator F with closed-form gradient and dual map.
///
///   negative_entropy:   F(y) = sum y_i (ln(y_i / m_i) - 1), m a strictly
///                       positive base measure; D_F is the KL divergence.
///   squared_euclidean:  F(y) = 1/2 |y|^2; D_F(y, z) = 1/2 |y - z|^2.
class BregmanGenerator {
 public:
  static BregmanGenerator negative_entropy(Distribution base);
  static BregmanGenerator squared_euclidean(std::size_t dimension);

  GeneratorKind kind() const noexcept { return kind_; }
  std::size_t dimension() const noexcept { return dimension_; }
  const std::optional<Distribution>& base() const noexcept { return base_; }

  double value(std::span<const double> y) const;
  /// Throws InputError where the gradient is undefined (a zero coordinate
  /// for the entropy kind).
  std::vector<double> gradient(std::span<const double> z) const;
  /// argmax over the simplex of <x, y> - F(y).
  Distribution simplex_dual_map(std::span<const double> x) const;

 private:
  BregmanGenerator(GeneratorKind kind, std::size_t dimension,
                   std::optional<Distribution> base);

  GeneratorKind kind_;
  std::size_t dimension_;
  std::optional<Distribution> base_;
};

/// F(y) - F(z) - <grad F(z), y - z>.
double bregman_divergence(const BregmanGenerator& gen, const Distribution& y,
                          const Distribution& z);

/// y_i ∝ reference_i exp(beta u_i).
Distribution gibbs_solution(std::span<const double> utility,
                            const Distribution& reference, double beta);

/// Euclidean projection onto the probability simplex (sorted threshold).
Distribution project_to_simplex(std::span<const double> x);

struct ResourceProblem {
  std::vector<double> utility;
  BregmanGenerator generator;
  /// Anchor z of the divergence constraint D_F(y, z) <= lambda.
  Distribution reference;
  double lambda = 0.0;

  /// Throws InputError on inconsistent dimensions or a negative lambda.
  void validate() const;
};

/// The distribution the constraint relaxes to as lambda grows: the
/// divergence-closest point of the face where `utility` is maximal.
Distribution saturation_point(const ResourceProblem& rp);

/// sup (or inf) of <u, y> over the simplex subject to D_F(y, z) <= lambda.
/// The returned channel has a single row holding the optimizing y.
ValuePoint constrained_value(const ResourceProblem& rp, Branch branch,
                             const SolverOptions& options = {});

/// Row 0 of a single-row channel as a distribution.
Distribution solution_of(const ValuePoint& point);

}  // namespace voi
