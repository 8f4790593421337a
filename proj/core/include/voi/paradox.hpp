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

// Built-in lotteries for the classic expected-utility paradoxes.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "voi/decision_problem.hpp"

namespace voi {

struct ParadoxFixture {
  std::string name;
  std::string description;
  Lottery p;
  /// Absent for single-lottery examples (St. Petersburg, Northern Rock).
  std::optional<Lottery> q;
  /// How an infinite lottery was made finite, if it was.
  std::string truncation;
};

inline constexpr int kDefaultTruncation = 10;
inline constexpr std::size_t kDefaultEllsbergFamilySize = 101;

/// Stable catalog identifiers, in display order.
const std::vector<std::string>& paradox_names();

/// Looks up a catalog entry. `tosses` truncates the coin-toss lotteries;
/// it must be >= 1 and is ignored by the other entries.
/// Throws InputError for unknown names.
ParadoxFixture paradox(std::string_view name,
                       std::optional<int> tosses = std::nullopt);

/// The unknown Ellsberg urn as a family of two-outcome lotteries with
/// Q($100) = i / (m - 1), i = 0..m-1.
std::vector<Lottery> ellsberg_urn_family(
    std::size_t m = kDefaultEllsbergFamilySize);

}  // namespace voi
