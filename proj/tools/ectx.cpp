// Copyright 2026 The ectx Authors.
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
//
// Command-line front end: verify / eval / scan / optimize / oracle.
//
// Exit codes:
//   0  success (a violation of the inequality is data, not an error)
//   1  consistency failure: cyclicity verification failed, or the oracle
//      found a classical M above 1e-12
//   2  usage or malformed configuration
//   3  file I/O failure
//   4  domain error (degenerate state, invalid distribution, ...)

#include <chrono>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ectx/feasibility.hpp"
#include "ectx/inequality.hpp"
#include "ectx/joint.hpp"
#include "ectx/observables.hpp"
#include "ectx/scan.hpp"
#include "ectx/state_family.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitConsistency = 1;
constexpr int kExitUsage = 2;
constexpr int kExitFile = 3;
constexpr int kExitDomain = 4;

struct CommonOpts {
  std::string observables_path;
  std::string out_path;
  std::uint64_t seed = 0;
  int workers = 1;
  bool degrees = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--observables", opts.observables_path,
                  "Observable config file (default: built-in directions)");
  cmd->add_option("--out", opts.out_path, "Output path (default: stdout)");
  cmd->add_option("--seed", opts.seed, "RNG seed")->capture_default_str();
  cmd->add_option("--workers", opts.workers, "Worker threads (1 = serial)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_flag("--degrees", opts.degrees, "Interpret input angles as degrees");
}

double to_radians(double angle, bool degrees) {
  return degrees ? angle * std::numbers::pi / 180.0 : angle;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Every run echoes its fully resolved configuration; the timestamp is the
// only field allowed to differ between identical runs.
ordered_json base_config(const char* command, const CommonOpts& opts) {
  ordered_json config;
  config["command"] = command;
  config["observables"] =
      opts.observables_path.empty() ? "builtin" : opts.observables_path;
  config["seed"] = opts.seed;
  config["workers"] = opts.workers;
  config["timestamp"] = utc_timestamp();
  return config;
}

ectx::CyclicObservableSet load_observables(const CommonOpts& opts) {
  if (opts.observables_path.empty()) return ectx::CyclicObservableSet::builtin();
  return ectx::CyclicObservableSet::from_file(opts.observables_path);
}

void emit(const ordered_json& doc, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << doc.dump(2) << '\n';
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw ectx::IoError("cannot open " + out_path + " for writing");
  out << doc.dump(2) << '\n';
  if (!out) throw ectx::IoError("write failed: " + out_path);
}

// ---------------------------------------------------------------------------
// verify

// Raw (unvalidated) directions, so a failing set still gets its Gram matrix
// printed before the verdict.
struct RawSet {
  std::array<ectx::Vec4, 5> vectors;
  std::string label;
};

RawSet load_raw(const CommonOpts& opts) {
  RawSet raw;
  if (opts.observables_path.empty()) {
    const auto set = ectx::CyclicObservableSet::builtin();
    raw.label = set.label();
    for (int i = 0; i < 5; ++i)
      raw.vectors[static_cast<std::size_t>(i)] = set.direction(i + 1).amplitudes();
    return raw;
  }
  std::ifstream in(opts.observables_path);
  if (!in) throw ectx::IoError("cannot open observable config: " + opts.observables_path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ectx::ConfigError("cannot parse " + opts.observables_path + ": " + e.what());
  }
  if (!j.is_object() || !j.contains("label") || !j.contains("vectors") ||
      !j.at("vectors").is_array() || j.at("vectors").size() != 5)
    throw ectx::ConfigError("observable config needs \"label\" and 5 \"vectors\"");
  raw.label = j.at("label").get<std::string>();
  for (std::size_t i = 0; i < 5; ++i) {
    const auto& row = j.at("vectors").at(i);
    if (!row.is_array() || row.size() != 4)
      throw ectx::ConfigError("vector " + std::to_string(i + 1) + " must have 4 components");
    for (int k = 0; k < 4; ++k)
      raw.vectors[i][k] = ectx::Complex{ectx::parse_component(row.at(static_cast<std::size_t>(k))), 0.0};
  }
  return raw;
}

int cmd_verify(const CommonOpts& opts) {
  const RawSet raw = load_raw(opts);
  std::array<ectx::StateVector, 5> dirs{
      ectx::normalize(raw.vectors[0]), ectx::normalize(raw.vectors[1]),
      ectx::normalize(raw.vectors[2]), ectx::normalize(raw.vectors[3]),
      ectx::normalize(raw.vectors[4])};
  const auto set = ectx::CyclicObservableSet::unchecked(dirs, raw.label);
  const auto gram = set.gram();

  ordered_json doc;
  doc["config"] = base_config("verify", opts);
  doc["label"] = raw.label;
  std::vector<std::vector<double>> gram_re(5, std::vector<double>(5));
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      gram_re[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          gram[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].real();
  doc["gram"] = gram_re;

  std::vector<double> adjacent(5);
  int first_bad = 0;
  for (int i = 0; i < 5; ++i) {
    adjacent[static_cast<std::size_t>(i)] =
        std::abs(gram[static_cast<std::size_t>(i)][static_cast<std::size_t>((i + 1) % 5)]);
    if (first_bad == 0 && adjacent[static_cast<std::size_t>(i)] > ectx::kCyclicOrthTol)
      first_bad = i + 1;
  }
  doc["adjacent_overlaps"] = adjacent;
  doc["max_adjacent_overlap"] = set.max_adjacent_overlap();
  const bool ok = first_bad == 0;
  doc["ok"] = ok;
  if (!ok) {
    doc["violation"] = {{"pair", {first_bad, first_bad % 5 + 1}},
                        {"overlap", adjacent[static_cast<std::size_t>(first_bad - 1)]}};
    ectx::CyclicityViolationError detail(first_bad,
                                         adjacent[static_cast<std::size_t>(first_bad - 1)]);
    doc["error"] = detail.what();
  }
  emit(doc, opts.out_path);
  return ok ? kExitOk : kExitConsistency;
}

// ---------------------------------------------------------------------------
// eval

struct EvalOpts {
  CommonOpts common;
  std::string family;
  double alpha = 0.0;
  double beta = 0.0;
  std::string state_csv;
  std::uint64_t shots = 0;
};

ectx::StateVector parse_state(const std::string& csv) {
  std::vector<double> values;
  std::stringstream ss(csv);
  std::string token;
  while (std::getline(ss, token, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw ectx::ConfigError("--state component '" + token + "' is not a number");
    }
  }
  if (values.size() != 4) throw ectx::ConfigError("--state needs exactly 4 amplitudes");
  return ectx::normalize(ectx::Vec4::real(values[0], values[1], values[2], values[3]));
}

int cmd_eval(const EvalOpts& opts) {
  const auto set = load_observables(opts.common);
  ordered_json config = base_config("eval", opts.common);

  ectx::StateVector psi = [&] {
    if (!opts.state_csv.empty()) {
      if (!opts.family.empty())
        throw ectx::ConfigError("--state and --family are mutually exclusive");
      config["family"] = "custom";
      config["state"] = opts.state_csv;
      return parse_state(opts.state_csv);
    }
    if (opts.family.empty()) throw ectx::ConfigError("eval needs --family or --state");
    const double a = to_radians(opts.alpha, opts.common.degrees);
    const double b = to_radians(opts.beta, opts.common.degrees);
    config["family"] = opts.family;
    config["alpha"] = a;
    config["beta"] = b;
    return ectx::make_state({ectx::family_from_string(opts.family), a, b});
  }();

  ordered_json doc;
  doc["config"] = config;
  doc["report"] = ectx::evaluate_m(set, psi).to_json();
  if (opts.shots > 0) {
    doc["config"]["shots_per_pair"] = opts.shots;
    doc["sampled_report"] =
        ectx::estimate_m_sampled(set, psi, opts.shots, opts.common.seed).to_json();
  }
  emit(doc, opts.common.out_path);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// scan

struct ScanOpts {
  CommonOpts common;
  std::string family;
  std::string format = "csv";
  int steps = 200;
  double alpha_start = 0.0, alpha_stop = 0.0;
  double beta_start = 0.0, beta_stop = 0.0;
  bool alpha_set = false, beta_set = false;
  bool refine = false;
};

int cmd_scan(const ScanOpts& opts) {
  const auto set = load_observables(opts.common);
  const ectx::FamilyKind family = ectx::family_from_string(opts.family);
  ectx::ScanGrid grid = ectx::default_grid(family, opts.steps, set.label());
  if (opts.alpha_set)
    grid.alpha = {to_radians(opts.alpha_start, opts.common.degrees),
                  to_radians(opts.alpha_stop, opts.common.degrees), opts.steps};
  if (opts.beta_set)
    grid.beta = {to_radians(opts.beta_start, opts.common.degrees),
                 to_radians(opts.beta_stop, opts.common.degrees), opts.steps};

  ordered_json config = base_config("scan", opts.common);
  config["family"] = opts.family;
  config["format"] = opts.format;
  config["steps"] = opts.steps;
  config["alpha"] = {{"start", grid.alpha.start}, {"stop", grid.alpha.stop}};
  config["beta"] = {{"start", grid.beta.start}, {"stop", grid.beta.stop}};
  config["refine"] = opts.refine;

  const ectx::ScanResult result = ectx::scan(grid, set, opts.common.workers, opts.refine);

  if (opts.format == "json") {
    ordered_json doc;
    doc["config"] = config;
    doc["result"] = ectx::scan_to_json(result);
    emit(doc, opts.common.out_path);
    return kExitOk;
  }

  // CSV: configuration rides along as leading comment lines. The export
  // header already carries family/observables/axes, so only the run-level
  // keys are added here.
  std::ostringstream body;
  for (const char* key : {"command", "seed", "workers", "format", "refine", "timestamp"}) {
    const auto& value = config.at(key);
    body << "# " << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump())
         << "\n";
  }
  ectx::export_scan_csv(result, body);
  if (opts.common.out_path.empty()) {
    std::cout << body.str();
    return kExitOk;
  }
  std::ofstream out(opts.common.out_path);
  if (!out) throw ectx::IoError("cannot open " + opts.common.out_path + " for writing");
  out << body.str();
  if (!out) throw ectx::IoError("write failed: " + opts.common.out_path);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// optimize

struct OptimizeOpts {
  CommonOpts common;
  std::string family;
  int coarse_steps = 60;
  int restarts = 8;
};

int cmd_optimize(const OptimizeOpts& opts) {
  const auto set = load_observables(opts.common);
  const ectx::FamilyKind family = ectx::family_from_string(opts.family);
  const ectx::ScanOptimum best = ectx::optimize(family, set, opts.coarse_steps, opts.restarts,
                                                opts.common.seed, opts.common.workers);
  ordered_json doc;
  doc["config"] = base_config("optimize", opts.common);
  doc["config"]["family"] = opts.family;
  doc["config"]["coarse_steps"] = opts.coarse_steps;
  doc["config"]["restarts"] = opts.restarts;
  doc["best"] = {{"alpha", best.alpha}, {"beta", best.beta}, {"m_bits", best.m_bits}};
  doc["violated"] = best.m_bits > 0.0;
  emit(doc, opts.common.out_path);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// oracle

struct OracleOpts {
  CommonOpts common;
  std::uint64_t samples = 100000;
};

int cmd_oracle(const OracleOpts& opts) {
  const ectx::OracleSummary summary =
      ectx::oracle_run(opts.samples, opts.common.seed, opts.common.workers);
  ordered_json doc;
  doc["config"] = base_config("oracle", opts.common);
  doc["config"]["samples"] = opts.samples;
  const nlohmann::json fields = summary.to_json();
  for (const auto& [key, value] : fields.items()) doc[key] = value;
  emit(doc, opts.common.out_path);
  return summary.violations_found == 0 ? kExitOk : kExitConsistency;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropic non-contextuality tests for four-level systems"};
  app.require_subcommand(1);

  CommonOpts verify_opts;
  CLI::App* verify = app.add_subcommand("verify", "Validate cyclic orthogonality of a set");
  add_common(verify, verify_opts);

  EvalOpts eval_opts;
  CLI::App* eval = app.add_subcommand("eval", "Evaluate the inequality for one state");
  add_common(eval, eval_opts.common);
  eval->add_option("--family", eval_opts.family, "State family: entangled|product");
  eval->add_option("--alpha", eval_opts.alpha, "Family parameter alpha (radians)");
  eval->add_option("--beta", eval_opts.beta, "Family parameter beta (radians)");
  eval->add_option("--state", eval_opts.state_csv, "Explicit amplitudes a,b,c,d (normalized)");
  eval->add_option("--shots", eval_opts.shots, "Also report a finite-statistics estimate");

  ScanOpts scan_opts;
  CLI::App* scan = app.add_subcommand("scan", "Grid scan over (alpha, beta)");
  add_common(scan, scan_opts.common);
  scan->add_option("--family", scan_opts.family, "State family: entangled|product")->required();
  scan->add_option("--steps", scan_opts.steps, "Lattice steps per axis")
      ->check(CLI::Range(2, 20000))
      ->capture_default_str();
  scan->add_option("--alpha-start", scan_opts.alpha_start, "Alpha axis start");
  scan->add_option("--alpha-stop", scan_opts.alpha_stop, "Alpha axis stop");
  scan->add_option("--beta-start", scan_opts.beta_start, "Beta axis start");
  scan->add_option("--beta-stop", scan_opts.beta_stop, "Beta axis stop");
  scan->add_option("--format", scan_opts.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  scan->add_flag("--refine", scan_opts.refine, "Refine the grid maximum locally");

  OptimizeOpts optimize_opts;
  CLI::App* optimize = app.add_subcommand("optimize", "Search for the maximal violation");
  add_common(optimize, optimize_opts.common);
  optimize->add_option("--family", optimize_opts.family, "State family: entangled|product")
      ->required();
  optimize->add_option("--coarse-steps", optimize_opts.coarse_steps, "Coarse grid resolution")
      ->check(CLI::Range(10, 2000))
      ->capture_default_str();
  optimize->add_option("--restarts", optimize_opts.restarts, "Local restarts from top cells")
      ->check(CLI::Range(1, 1000))
      ->capture_default_str();

  OracleOpts oracle_opts;
  CLI::App* oracle = app.add_subcommand("oracle", "Classical-bound falsification sweep");
  add_common(oracle, oracle_opts.common);
  oracle->add_option("--samples", oracle_opts.samples, "Random joint distributions to draw")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (verify->parsed()) return cmd_verify(verify_opts);
    if (eval->parsed()) return cmd_eval(eval_opts);
    if (scan->parsed()) {
      scan_opts.alpha_set =
          scan->count("--alpha-start") > 0 || scan->count("--alpha-stop") > 0;
      scan_opts.beta_set = scan->count("--beta-start") > 0 || scan->count("--beta-stop") > 0;
      return cmd_scan(scan_opts);
    }
    if (optimize->parsed()) return cmd_optimize(optimize_opts);
    if (oracle->parsed()) return cmd_oracle(oracle_opts);
  } catch (const ectx::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFile;
  } catch (const ectx::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ectx::CyclicityViolationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const ectx::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitUsage;
}
