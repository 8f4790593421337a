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

#include "voi/value_point.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include <fmt/format.h>

#include "voi/errors.hpp"

namespace voi {

const char* to_string(Branch branch) noexcept {
  return branch == Branch::upper ? "upper" : "lower";
}

Branch parse_branch(std::string_view text) {
  if (text == "upper") return Branch::upper;
  if (text == "lower") return Branch::lower;
  throw InputError(fmt::format("unknown branch '{}'", text));
}

LambdaGrid::LambdaGrid(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 2) {
    throw InputError("lambda grid needs at least two levels");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i]) || values_[i] < 0.0) {
      throw InputError(fmt::format("lambda grid: level {} is not a finite "
                                   "non-negative number", values_[i]));
    }
    if (i > 0 && !(values_[i] > values_[i - 1])) {
      throw InputError("lambda grid must be strictly increasing");
    }
  }
}

LambdaGrid LambdaGrid::linspace(double start, double end, std::size_t count) {
  if (count < 2) throw InputError("lambda grid: count must be >= 2");
  if (!(end > start)) throw InputError("lambda grid: end must exceed start");
  std::vector<double> values(count);
  const double step = (end - start) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    values[i] = start + step * static_cast<double>(i);
  }
  values.back() = end;
  return LambdaGrid(std::move(values));
}

LambdaGrid LambdaGrid::parse(std::string_view spec) {
  const auto first = spec.find(':');
  const auto second =
      first == std::string_view::npos ? first : spec.find(':', first + 1);
  if (second == std::string_view::npos) {
    throw InputError(fmt::format("lambda grid '{}': expected start:end:count",
                                 spec));
  }
  auto number = [&](std::string_view part) {
    try {
      std::size_t used = 0;
      const double v = std::stod(std::string(part), &used);
      if (used != part.size()) throw std::invalid_argument("trailing");
      return v;
    } catch (const std::exception&) {
      throw InputError(fmt::format("lambda grid '{}': bad number '{}'", spec,
                                   part));
    }
  };
  const double start = number(spec.substr(0, first));
  const double end = number(spec.substr(first + 1, second - first - 1));
  const auto count_text = spec.substr(second + 1);
  std::size_t count = 0;
  const auto [ptr, ec] = std::from_chars(
      count_text.data(), count_text.data() + count_text.size(), count);
  if (ec != std::errc() || ptr != count_text.data() + count_text.size()) {
    throw InputError(fmt::format("lambda grid '{}': bad count", spec));
  }
  return linspace(start, end, count);
}

}  // namespace voi
