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

// JSON problem definitions:
//
//   {
//     "name": "ident2",
//     "prior": [0.5, 0.5],
//     "utilities": [[1, 0], [0, 1]],
//     "state_labels": ["rain", "sun"],        (optional)
//     "action_labels": ["umbrella", "none"],  (optional)
//     "generator": {                          (optional)
//       "kind": "negative_entropy" | "squared_euclidean",
//       "reference": [0.5, 0.5]               (optional, defaults to uniform)
//     }
//   }

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "voi/bregman.hpp"
#include "voi/decision_problem.hpp"

namespace voi {

struct GeneratorSpec {
  std::string kind;
  std::optional<std::vector<double>> reference;

  friend bool operator==(const GeneratorSpec&, const GeneratorSpec&) = default;
};

struct ProblemFile {
  std::string name;
  std::vector<double> prior;
  std::vector<std::vector<double>> utilities;
  std::vector<std::string> state_labels;
  std::vector<std::string> action_labels;
  std::optional<GeneratorSpec> generator;

  friend bool operator==(const ProblemFile&, const ProblemFile&) = default;
};

/// Parses and validates a problem document. Throws InputError on malformed
/// JSON, missing or mistyped fields, ragged arrays, inconsistent dimensions
/// or an invalid prior.
ProblemFile parse_problem_file(std::string_view text);
ProblemFile load_problem_file(const std::filesystem::path& path);

/// Serialized form; doubles round-trip exactly.
std::string to_json(const ProblemFile& file);
void save_problem_file(const ProblemFile& file,
                       const std::filesystem::path& path);

DecisionProblem to_decision_problem(const ProblemFile& file);
ProblemFile to_problem_file(const DecisionProblem& prob,
                            std::optional<GeneratorSpec> generator = {});

/// Resource problem over the action simplex: the utility of action b is its
/// expected payoff under the prior. Uses the file's generator block, or the
/// relative negative entropy around the uniform distribution when absent.
ResourceProblem to_resource_problem(const ProblemFile& file, double lambda);

}  // namespace voi
