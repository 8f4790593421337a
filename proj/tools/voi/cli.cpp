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

#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <nlohmann/json.hpp>

#include "voi/bregman.hpp"
#include "voi/curve.hpp"
#include "voi/deterministic.hpp"
#include "voi/errors.hpp"
#include "voi/oracle.hpp"
#include "voi/paradox.hpp"
#include "voi/problem_file.hpp"
#include "voi/shannon.hpp"

namespace voi::cli {
namespace {

using Clock = std::chrono::steady_clock;

constexpr double kShannonOracleTolerance = 1e-3;
constexpr double kSimplexOracleTolerance = 2e-3;
constexpr double kTableOracleTolerance = 1e-12;
constexpr std::size_t kDefaultGridResolution = 2000;
constexpr std::size_t kDefaultSimplexResolution = 200;

// -0.0 shows up on lower branches through negation; print it as 0.
double tidy(double x) { return x + 0.0; }

std::string csv_real(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", tidy(x));
}

std::string json_real(double x) {
  if (!std::isfinite(x)) return "null";
  return fmt::format("{:.17g}", tidy(x));
}

std::uint64_t enumeration_cap() {
  const char* env = std::getenv("VOI_ENUM_CAP");
  if (env == nullptr || *env == '\0') return kDefaultEnumerationCap;
  const std::string_view text(env);
  std::uint64_t cap = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), cap);
  if (ec != std::errc() || end != text.data() + text.size() || cap == 0) {
    throw InputError(fmt::format("VOI_ENUM_CAP='{}' is not a positive integer", text));
  }
  return cap;
}

std::vector<double> parse_levels(const std::string& spec) {
  if (spec.find(':') != std::string::npos) return LambdaGrid::parse(spec).values();
  std::vector<double> out;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ',')) {
    double v = 0.0;
    const auto [end, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || end != part.data() + part.size() || !std::isfinite(v) ||
        v < 0.0) {
      throw InputError(fmt::format("bad lambda '{}'", part));
    }
    out.push_back(v);
  }
  if (out.empty()) throw InputError("no lambda values given");
  return out;
}

// Output goes to --out when given, otherwise to the command's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path.empty()) return;
    file_.open(path);
    if (!file_) throw InputError(fmt::format("cannot write '{}'", path));
    stream_ = &file_;
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

bool wants_json(const std::string& format, const std::string& out_path) {
  if (!format.empty()) return format == "json";
  return out_path.ends_with(".json");
}

// ---- curve ---------------------------------------------------------------

struct CurveArgs {
  std::string problem;
  std::string type = "shannon";
  std::string branch = "upper";
  std::string lambda;
  std::string out;
  std::string format;
  SolverOptions solver;
};

struct Section {
  std::string name;
  std::vector<std::pair<double, const ValuePoint*>> rows;  // key, point
};

ValueCurve solve_branch(const CurveArgs& a, const ProblemFile& file,
                        const DecisionProblem& prob, Branch branch,
                        const LambdaGrid& grid) {
  if (a.type == "shannon") {
    return trace_curve(prob, branch, grid, a.solver);
  }
  ValueCurve curve{prob.name(), branch, {}};
  const bool upper = branch == Branch::upper;
  if (a.type == "boltzmann" || a.type == "hartley") {
    const EnumerationOptions opts{enumeration_cap()};
    const bool boltz = a.type == "boltzmann";
    for (double lambda : grid.values()) {
      DeterministicValue v = boltz ? (upper ? boltzmann_value(prob, lambda, opts)
                                            : boltzmann_lower_value(prob, lambda, opts))
                                   : (upper ? hartley_value(prob, lambda, opts)
                                            : hartley_lower_value(prob, lambda, opts));
      curve.points.push_back(std::move(v.point));
    }
    return curve;
  }
  for (double lambda : grid.values()) {
    curve.points.push_back(constrained_value(to_resource_problem(file, lambda), branch));
  }
  return curve;
}

void write_curve_csv(std::ostream& out, const std::vector<Section>& sections) {
  fmt::print(out, "lambda,value,beta,converged\n");
  for (const auto& s : sections) {
    if (!s.name.empty()) fmt::print(out, "# section: {}\n", s.name);
    for (const auto& [key, p] : s.rows) {
      fmt::print(out, "{},{},{},{}\n", csv_real(key), csv_real(p->value),
                 csv_real(p->beta), p->converged ? "true" : "false");
    }
  }
}

void write_curve_json(std::ostream& out, const CurveArgs& a, const std::string& problem,
                      const std::vector<Section>& sections) {
  fmt::print(out, "{{\n  \"problem\": {},\n  \"type\": \"{}\",\n  \"branch\": \"{}\",\n",
             nlohmann::json(problem).dump(), a.type, a.branch);
  fmt::print(out, "  \"points\": [");
  bool first = true;
  for (const auto& s : sections) {
    for (const auto& [key, p] : s.rows) {
      fmt::print(out, "{}\n    {{\"lambda\": {}, \"value\": {}, \"beta\": {}, \"converged\": {}}}",
                 first ? "" : ",", json_real(key), json_real(p->value), json_real(p->beta),
                 p->converged ? "true" : "false");
      first = false;
    }
  }
  fmt::print(out, "\n  ]\n}}\n");
}

int cmd_curve(const CurveArgs& a, std::ostream& out, std::ostream& err) {
  const ProblemFile file = load_problem_file(a.problem);
  const DecisionProblem prob = to_decision_problem(file);
  const LambdaGrid grid = LambdaGrid::parse(a.lambda);

  std::vector<ValueCurve> curves;
  std::vector<Section> sections;
  SCurve s;
  if (a.branch == "s") {
    s = assemble_s_curve(solve_branch(a, file, prob, Branch::upper, grid),
                         solve_branch(a, file, prob, Branch::lower, grid));
    Section losses{"losses", {}}, gains{"gains", {}};
    for (const auto& sp : s.losses) losses.rows.emplace_back(sp.key, &sp.point);
    for (const auto& sp : s.gains) gains.rows.emplace_back(sp.key, &sp.point);
    sections = {std::move(losses), std::move(gains)};
  } else {
    curves.push_back(solve_branch(a, file, prob, parse_branch(a.branch), grid));
    Section only;
    for (const auto& p : curves.back().points) only.rows.emplace_back(p.lambda, &p);
    sections.push_back(std::move(only));
  }

  Sink sink(a.out, out);
  if (wants_json(a.format, a.out)) {
    write_curve_json(sink.get(), a, prob.name(), sections);
  } else {
    write_curve_csv(sink.get(), sections);
  }

  std::size_t failed = 0;
  for (const auto& sec : sections) {
    for (const auto& row : sec.rows) failed += row.second->converged ? 0 : 1;
  }
  if (failed > 0) {
    fmt::print(err, "voi: {} point(s) did not converge\n", failed);
    return kSolverFailure;
  }
  return kOk;
}

// ---- paradox -------------------------------------------------------------

nlohmann::json lottery_json(const Lottery& l) {
  return {{"payoffs", l.payoffs()},
          {"probabilities", std::vector<double>(l.dist().begin(), l.dist().end())},
          {"expected_utility", expected_utility(l)},
          {"entropy", entropy(l.dist())}};
}

int cmd_paradox(const std::string& name, std::optional<int> tosses, bool json,
                std::ostream& out) {
  const ParadoxFixture f = paradox(name, tosses);
  if (json) {
    nlohmann::json doc = {{"name", f.name}, {"description", f.description},
                          {"p", lottery_json(f.p)}};
    doc["q"] = f.q ? lottery_json(*f.q) : nlohmann::json(nullptr);
    doc["verdict"] = f.q ? nlohmann::json(to_string(eu_compare(f.p, *f.q)))
                         : nlohmann::json(nullptr);
    doc["truncation"] = f.truncation.empty() ? nlohmann::json(nullptr)
                                             : nlohmann::json(f.truncation);
    fmt::print(out, "{}\n", doc.dump(2));
    return kOk;
  }
  fmt::print(out, "{}: {}\n", f.name, f.description);
  fmt::print(out, "EU(P) = {}  H(P) = {}\n", csv_real(expected_utility(f.p)),
             csv_real(entropy(f.p.dist())));
  if (f.q) {
    fmt::print(out, "EU(Q) = {}  H(Q) = {}\n", csv_real(expected_utility(*f.q)),
               csv_real(entropy(f.q->dist())));
    fmt::print(out, "verdict: P {} Q\n", to_string(eu_compare(f.p, *f.q)));
  }
  if (!f.truncation.empty()) fmt::print(out, "truncation: {}\n", f.truncation);
  return kOk;
}

// ---- oracle --------------------------------------------------------------

struct OracleArgs {
  std::string problem;
  std::string type = "shannon";
  std::string branch = "upper";
  std::string lambda = "0.2";
  std::size_t resolution = 0;
  std::string out;
  SolverOptions solver;
};

template <class F>
double timed(double& seconds, F&& f) {
  const auto t0 = Clock::now();
  const double v = f();
  seconds += std::chrono::duration<double>(Clock::now() - t0).count();
  return v;
}

int cmd_oracle(const OracleArgs& a, std::ostream& out, std::ostream& err) {
  const ProblemFile file = load_problem_file(a.problem);
  const DecisionProblem prob = to_decision_problem(file);
  const Branch branch = parse_branch(a.branch);
  const bool upper = branch == Branch::upper;
  const std::vector<double> levels = parse_levels(a.lambda);

  double tolerance = kTableOracleTolerance;
  std::size_t resolution = a.resolution;
  std::optional<std::vector<oracle::FunctionRow>> table;
  const EnumerationOptions enum_opts{enumeration_cap()};
  if (a.type == "shannon") {
    tolerance = kShannonOracleTolerance;
    if (resolution == 0) resolution = kDefaultGridResolution;
  } else if (a.type == "bregman") {
    tolerance = kSimplexOracleTolerance;
    if (resolution == 0) resolution = kDefaultSimplexResolution;
  } else {
    table = oracle::exhaustive_deterministic(upper ? prob : prob.negated(), enum_opts);
    resolution = table->size();
  }

  std::vector<oracle::OracleReport> reports;
  for (double lambda : levels) {
    double elapsed = 0.0;
    double truth = 0.0, solved = 0.0;
    if (a.type == "shannon") {
      truth = timed(elapsed, [&] {
        return upper ? oracle::grid_max_eu(prob, lambda, resolution)
                     : -oracle::grid_max_eu(prob.negated(), lambda, resolution);
      });
      solved = timed(elapsed, [&] {
        return (upper ? upper_value(prob, lambda, a.solver)
                      : lower_value(prob, lambda, a.solver))
            .value;
      });
    } else if (a.type == "bregman") {
      const ResourceProblem rp = to_resource_problem(file, lambda);
      truth = timed(elapsed, [&] { return oracle::simplex_grid_value(rp, branch, resolution); });
      solved = timed(elapsed, [&] { return constrained_value(rp, branch).value; });
    } else {
      const bool boltz = a.type == "boltzmann";
      truth = timed(elapsed, [&] {
        const double v = boltz ? oracle::table_boltzmann_max(*table, lambda)
                               : oracle::table_hartley_max(*table, lambda);
        return upper ? v : -v;
      });
      solved = timed(elapsed, [&] {
        if (boltz) {
          return (upper ? boltzmann_value(prob, lambda, enum_opts)
                        : boltzmann_lower_value(prob, lambda, enum_opts))
              .point.value;
        }
        return (upper ? hartley_value(prob, lambda, enum_opts)
                      : hartley_lower_value(prob, lambda, enum_opts))
            .point.value;
      });
    }
    reports.push_back(oracle::make_report(
        fmt::format("{}/{}/{}/lambda={}", prob.name(), a.type, a.branch, csv_real(lambda)),
        tidy(truth), tidy(solved), resolution, elapsed));
  }

  Sink sink(a.out, out);
  oracle::write_csv(sink.get(), reports);
  const auto worst = std::max_element(
      reports.begin(), reports.end(),
      [](const auto& x, const auto& y) { return x.abs_diff < y.abs_diff; });
  if (worst->abs_diff > tolerance) {
    fmt::print(err, "voi: {} differs from its oracle by {:.3g} (tolerance {:.3g})\n",
               worst->target, worst->abs_diff, tolerance);
    return kOracleMismatch;
  }
  return kOk;
}

// ---- validate ------------------------------------------------------------

int cmd_validate(const std::vector<std::string>& paths, std::ostream& out,
                 std::ostream& err) {
  int status = kOk;
  for (const auto& path : paths) {
    try {
      const ProblemFile f = load_problem_file(path);
      fmt::print(out, "{}: ok ({}, {} states x {} actions)\n", path, f.name,
                 f.prior.size(), f.utilities.front().size());
    } catch (const InputError& e) {
      fmt::print(err, "{}: {}\n", path, e.what());
      status = kInputError;
    }
  }
  return status;
}

// ---- levels --------------------------------------------------------------

struct LevelArgs {
  std::vector<double> payoffs;
  std::vector<double> values;
  std::string transform = "none";
  std::string out;
  std::string format;
};

int cmd_levels(const LevelArgs& a, std::ostream& out) {
  if (a.payoffs.size() != 3) throw InputError("levels: exactly three payoffs are needed");
  const std::array<double, 3> u = {a.payoffs[0], a.payoffs[1], a.payoffs[2]};
  const double low = *std::min_element(u.begin(), u.end());
  PayoffTransform phi;
  if (a.transform == "sqrt") {
    phi = [low](double x) { return std::sqrt(x - low + 1.0); };
  } else if (a.transform == "log") {
    phi = [low](double x) { return std::log1p(x - low); };
  }
  const auto segments = simplex_level_sets(u, a.values, phi);
  const double deviation = max_direction_deviation(segments);

  Sink sink(a.out, out);
  std::ostream& o = sink.get();
  if (wants_json(a.format, a.out)) {
    nlohmann::json doc = {{"payoffs", a.payoffs},
                          {"transform", a.transform},
                          {"max_direction_deviation", deviation}};
    nlohmann::json segs = nlohmann::json::array();
    for (const auto& s : segments) {
      segs.push_back({{"level", s.level},
                      {"empty", s.empty},
                      {"from", s.from},
                      {"to", s.to}});
    }
    doc["segments"] = std::move(segs);
    fmt::print(o, "{}\n", doc.dump(2));
    return kOk;
  }
  fmt::print(o, "# max_direction_deviation: {}\n", csv_real(deviation));
  fmt::print(o, "level,empty,from_1,from_2,from_3,to_1,to_2,to_3\n");
  for (const auto& s : segments) {
    fmt::print(o, "{},{},{},{},{},{},{},{}\n", csv_real(s.level), s.empty ? "true" : "false",
               csv_real(s.from[0]), csv_real(s.from[1]), csv_real(s.from[2]),
               csv_real(s.to[0]), csv_real(s.to[1]), csv_real(s.to[2]));
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Value of information under information constraints", "voi"};
  app.require_subcommand(1);

  const std::vector<std::string> types = {"shannon", "boltzmann", "hartley", "bregman"};

  CurveArgs curve_args;
  auto* curve = app.add_subcommand("curve", "Trace a value curve over a lambda grid");
  curve->add_option("--problem", curve_args.problem, "Problem file (JSON)")->required();
  curve->add_option("--type", curve_args.type)->check(CLI::IsMember(types));
  curve->add_option("--branch", curve_args.branch)
      ->check(CLI::IsMember({"upper", "lower", "s"}));
  curve->add_option("--lambda", curve_args.lambda, "start:end:count")->required();
  curve->add_option("--out", curve_args.out, "Output file (default stdout)");
  curve->add_option("--format", curve_args.format)->check(CLI::IsMember({"csv", "json"}));
  curve->add_option("--workers", curve_args.solver.workers)->check(CLI::Range(1u, 256u));
  curve->add_option("--max-iterations", curve_args.solver.max_iterations);
  curve->add_option("--max-bisections", curve_args.solver.max_bisections);
  curve->add_option("--tolerance", curve_args.solver.tolerance);

  std::string paradox_name;
  std::optional<int> tosses;
  bool paradox_json = false;
  auto* para = app.add_subcommand("paradox", "Report on a catalog paradox");
  para->add_option("name", paradox_name)->required();
  para->add_option("--n,--tosses", tosses, "Truncation for coin-toss lotteries");
  para->add_flag("--json", paradox_json);

  OracleArgs oracle_args;
  auto* orc = app.add_subcommand("oracle", "Compare a solver with its brute-force oracle");
  orc->add_option("--problem", oracle_args.problem)->required();
  orc->add_option("--type", oracle_args.type)->check(CLI::IsMember(types));
  orc->add_option("--branch", oracle_args.branch)->check(CLI::IsMember({"upper", "lower"}));
  orc->add_option("--lambda", oracle_args.lambda, "Comma list or start:end:count");
  orc->add_option("--resolution", oracle_args.resolution);
  orc->add_option("--out", oracle_args.out);
  orc->add_option("--max-iterations", oracle_args.solver.max_iterations);
  orc->add_option("--max-bisections", oracle_args.solver.max_bisections);
  orc->add_option("--tolerance", oracle_args.solver.tolerance);

  std::vector<std::string> validate_paths;
  auto* val = app.add_subcommand("validate", "Check problem files");
  val->add_option("files", validate_paths)->required();

  LevelArgs level_args;
  auto* lev = app.add_subcommand("levels", "Expected-utility level sets on the 2-simplex");
  lev->add_option("--payoffs", level_args.payoffs)->required()->delimiter(',');
  lev->add_option("--values", level_args.values)->required()->delimiter(',');
  lev->add_option("--transform", level_args.transform)
      ->check(CLI::IsMember({"none", "sqrt", "log"}));
  lev->add_option("--out", level_args.out);
  lev->add_option("--format", level_args.format)->check(CLI::IsMember({"csv", "json"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*curve) return cmd_curve(curve_args, out, err);
    if (*para) return cmd_paradox(paradox_name, tosses, paradox_json, out);
    if (*orc) return cmd_oracle(oracle_args, out, err);
    if (*val) return cmd_validate(validate_paths, out, err);
    if (*lev) return cmd_levels(level_args, out);
  } catch (const InputError& e) {
    fmt::print(err, "voi: {}\n", e.what());
    return kInputError;
  } catch (const EnumerationCapError& e) {
    fmt::print(err, "voi: {} (raise VOI_ENUM_CAP to allow it)\n", e.what());
    return kCapExceeded;
  } catch (const SolverError& e) {
    fmt::print(err, "voi: {}\n", e.what());
    return kSolverFailure;
  } catch (const std::exception& e) {
    fmt::print(err, "voi: internal error: {}\n", e.what());
    return kInternalError;
  }
  return kInternalError;
}

}  // namespace voi::cli
