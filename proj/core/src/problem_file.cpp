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

#include "voi/problem_file.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "voi/errors.hpp"

namespace voi {
namespace {

using nlohmann::json;

const json& require(const json& doc, const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end()) {
    throw InputError(fmt::format("problem file: missing field '{}'", key));
  }
  return *it;
}

std::vector<double> number_array(const json& node, const char* what) {
  if (!node.is_array()) {
    throw InputError(fmt::format("problem file: '{}' must be an array", what));
  }
  std::vector<double> out;
  out.reserve(node.size());
  for (const auto& v : node) {
    if (!v.is_number()) {
      throw InputError(
          fmt::format("problem file: '{}' must contain only numbers", what));
    }
    out.push_back(v.get<double>());
  }
  return out;
}

std::vector<std::string> string_array(const json& doc, const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end()) return {};
  if (!it->is_array()) {
    throw InputError(fmt::format("problem file: '{}' must be an array", key));
  }
  std::vector<std::string> out;
  for (const auto& v : *it) {
    if (!v.is_string()) {
      throw InputError(
          fmt::format("problem file: '{}' must contain only strings", key));
    }
    out.push_back(v.get<std::string>());
  }
  return out;
}

}  // namespace

ProblemFile parse_problem_file(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InputError(fmt::format("problem file: {}", e.what()));
  }
  if (!doc.is_object()) throw InputError("problem file: expected a JSON object");

  ProblemFile file;
  const json& name = require(doc, "name");
  if (!name.is_string()) throw InputError("problem file: 'name' must be a string");
  file.name = name.get<std::string>();
  file.prior = number_array(require(doc, "prior"), "prior");

  const json& rows = require(doc, "utilities");
  if (!rows.is_array()) {
    throw InputError("problem file: 'utilities' must be a 2-D array");
  }
  for (const auto& row : rows) {
    file.utilities.push_back(number_array(row, "utilities"));
  }
  file.state_labels = string_array(doc, "state_labels");
  file.action_labels = string_array(doc, "action_labels");

  if (const auto it = doc.find("generator"); it != doc.end()) {
    if (!it->is_object()) {
      throw InputError("problem file: 'generator' must be an object");
    }
    GeneratorSpec gen;
    const json& kind = require(*it, "kind");
    if (!kind.is_string()) {
      throw InputError("problem file: generator 'kind' must be a string");
    }
    gen.kind = kind.get<std::string>();
    parse_generator_kind(gen.kind);
    if (const auto ref = it->find("reference"); ref != it->end()) {
      gen.reference = number_array(*ref, "generator.reference");
    }
    file.generator = std::move(gen);
  }

  // Dimension and probability checks live in the domain constructors.
  to_decision_problem(file);
  if (file.generator) to_resource_problem(file, 0.0);
  return file;
}

ProblemFile load_problem_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw InputError(fmt::format("cannot open problem file '{}'", path.string()));
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_problem_file(buffer.str());
}

std::string to_json(const ProblemFile& file) {
  json doc;
  doc["name"] = file.name;
  doc["prior"] = file.prior;
  doc["utilities"] = file.utilities;
  doc["state_labels"] = file.state_labels;
  doc["action_labels"] = file.action_labels;
  if (file.generator) {
    json gen;
    gen["kind"] = file.generator->kind;
    if (file.generator->reference) gen["reference"] = *file.generator->reference;
    doc["generator"] = std::move(gen);
  }
  return doc.dump(2) + "\n";
}

void save_problem_file(const ProblemFile& file,
                       const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw InputError(fmt::format("cannot write problem file '{}'", path.string()));
  }
  out << to_json(file);
}

DecisionProblem to_decision_problem(const ProblemFile& file) {
  if (file.utilities.size() != file.prior.size()) {
    throw InputError(fmt::format(
        "problem file: {} utility rows for {} prior entries",
        file.utilities.size(), file.prior.size()));
  }
  return DecisionProblem(Distribution(file.prior), file.utilities,
                         file.state_labels, file.action_labels, file.name);
}

ProblemFile to_problem_file(const DecisionProblem& prob,
                            std::optional<GeneratorSpec> generator) {
  ProblemFile file;
  file.name = prob.name();
  file.prior.assign(prob.prior().begin(), prob.prior().end());
  for (std::size_t a = 0; a < prob.n_states(); ++a) {
    const auto row = prob.utility_row(a);
    file.utilities.emplace_back(row.begin(), row.end());
  }
  file.state_labels = prob.state_labels();
  file.action_labels = prob.action_labels();
  file.generator = std::move(generator);
  return file;
}

ResourceProblem to_resource_problem(const ProblemFile& file, double lambda) {
  const DecisionProblem prob = to_decision_problem(file);
  const std::size_t n = prob.n_actions();
  const GeneratorSpec spec =
      file.generator.value_or(GeneratorSpec{"negative_entropy", std::nullopt});
  Distribution reference = spec.reference ? Distribution(*spec.reference)
                                          : Distribution::uniform(n);
  const GeneratorKind kind = parse_generator_kind(spec.kind);
  BregmanGenerator gen = kind == GeneratorKind::negative_entropy
                             ? BregmanGenerator::negative_entropy(
                                   Distribution::uniform(n))
                             : BregmanGenerator::squared_euclidean(n);
  ResourceProblem rp{prob.action_values(), std::move(gen), std::move(reference),
                     lambda};
  rp.validate();
  return rp;
}

}  // namespace voi
