// Copyright 2026 The ionmap Authors
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

// ionmap: map, simulate and benchmark circuits on a linear trap array.
//
//   ionmap map circuit.ms --policy penalized
//   ionmap sim circuit.ms --policy step --step-blocks 4 --trace t.jsonl
//   ionmap bench gen --suite random120 --seed 7 --out suite/
//   ionmap bench run --suite-dir suite/ --policies linear,exp,penalized
//   ionmap bench report --in report.json --format table
//
// Exit status: 0 ok, 2 bad configuration or usage, 3 a circuit failed.

#include "ionmap/benchgen.hpp"
#include "ionmap/config.hpp"
#include "ionmap/harness.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitCircuit = 3;

using nlohmann::ordered_json;
using namespace ionmap;

/// A bad circuit file or simulation failure, as opposed to bad settings.
class CircuitFailure : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string config_path;
  std::optional<std::string> policy;
  std::optional<std::size_t> traps;
  std::optional<std::size_t> capacity;
  std::optional<std::size_t> load;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> step_blocks;
  std::optional<double> a_linear;
  std::optional<double> a_exp;
  std::string format = "json";
};

/// Config file first, then explicit flags on top.
RunConfig resolve(const Globals& g) {
  RunConfig cfg;
  if (!g.config_path.empty()) {
    apply_config_file(g.config_path, cfg);
  }
  if (g.traps) cfg.topology.num_traps = *g.traps;
  if (g.capacity) cfg.topology.trap_capacity = *g.capacity;
  if (g.load) cfg.topology.initial_load = *g.load;
  if (g.seed) cfg.seed = *g.seed;
  if (g.step_blocks) cfg.params.n_blocks = *g.step_blocks;
  if (g.a_linear) cfg.params.a_linear = *g.a_linear;
  if (g.a_exp) cfg.params.a_exp = *g.a_exp;
  if (g.policy) cfg.policies = {parse_policy_kind(*g.policy)};
  cfg.topology.validate();
  cfg.fidelity.validate();
  cfg.params.validate();
  return cfg;
}

Circuit read_circuit(const std::string& path) {
  try {
    return load_circuit(path);
  } catch (const ParseError& e) {
    throw CircuitFailure(path + ":" + std::to_string(e.line()) + ": " +
                         e.what());
  } catch (const std::exception& e) {
    throw CircuitFailure(path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ConfigError("cannot write " + path);
  }
  out << text;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot open " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ordered_json chains_json(const Mapping& m) {
  ordered_json out = ordered_json::array();
  for (const auto& chain : m.chains()) {
    out.push_back(chain);
  }
  return out;
}

WeightPolicy single_policy(const RunConfig& cfg) {
  return WeightPolicy{cfg.policies.empty() ? PolicyKind::Greedy
                                           : cfg.policies.front(),
                      cfg.params};
}

int cmd_map(const Globals& g, const std::string& path) {
  const RunConfig cfg = resolve(g);
  const Circuit c = read_circuit(path);
  const WeightPolicy p = single_policy(cfg);
  const CircuitStats stats = circuit_stats(c);
  const InteractionGraph graph = compute_weights(c, p);
  Mapping m;
  try {
    m = place(graph, cfg.topology);
  } catch (const CapacityError& e) {
    throw CircuitFailure(e.what());
  }

  ordered_json j;
  j["circuit"] = c.name();
  j["policy"] = p.describe();
  j["stats"] = {{"Q", stats.qubits},
                {"G", stats.gates},
                {"D", stats.depth},
                {"S", stats.symmetry}};
  j["weights"] = ordered_json::array();
  for (const auto& e : graph.edges()) {
    j["weights"].push_back(
        {{"q1", e.pair.first}, {"q2", e.pair.second}, {"weight", e.weight}});
  }
  j["mapping"] = chains_json(m);
  write_text("-", j.dump(2) + "\n");
  return kExitOk;
}

int cmd_sim(const Globals& g, const std::string& path,
            const std::string& trace_path) {
  const RunConfig cfg = resolve(g);
  const Circuit c = read_circuit(path);
  const WeightPolicy p = single_policy(cfg);
  SimResult r;
  Mapping m0;
  try {
    m0 = place(compute_weights(c, p), cfg.topology);
    r = simulate(c, m0, cfg.topology, cfg.fidelity, cfg.sim);
  } catch (const CapacityError& e) {
    throw CircuitFailure(e.what());
  } catch (const DeadlockError& e) {
    throw CircuitFailure(e.what());
  }

  ordered_json j;
  j["circuit"] = c.name();
  j["policy"] = p.describe();
  j["initial_mapping"] = chains_json(m0);
  j["shuttles"] = r.shuttle_count;
  j["moves"] = r.move_count;
  j["program_fidelity"] = r.program_fidelity;
  j["log_fidelity"] = std::isfinite(r.log_fidelity)
                          ? ordered_json(r.log_fidelity)
                          : ordered_json(nullptr);
  j["wall_time"] = r.wall_time;
  j["final_mapping"] = chains_json(r.final_mapping);
  j["final_energy"] = r.final_energy;
  write_text("-", j.dump(2) + "\n");
  if (!trace_path.empty()) {
    write_text(trace_path, r.trace.to_json_lines());
  }
  return kExitOk;
}

int cmd_bench_gen(const Globals& g, const std::string& suite,
                  const std::string& out_dir) {
  const RunConfig cfg = resolve(g);
  const SuiteManifest m = suite_manifest(suite, cfg.seed);
  write_suite(m, out_dir);
  std::cerr << "wrote " << m.circuits.size() << " circuits to " << out_dir
            << "\n";
  return kExitOk;
}

int cmd_bench_run(const Globals& g, const std::string& suite_dir,
                  const std::string& policies, const std::string& baseline,
                  const std::string& out, bool timing, std::size_t threads) {
  RunConfig cfg = resolve(g);
  cfg.suite_dir = suite_dir;
  cfg.output = out;
  cfg.with_timing = timing;
  if (threads != 0) {
    cfg.threads = threads;
  }
  if (!policies.empty()) {
    cfg.policies.clear();
    std::stringstream in(policies);
    std::string name;
    while (std::getline(in, name, ',')) {
      cfg.policies.push_back(parse_policy_kind(name));
    }
  }
  if (!baseline.empty()) {
    cfg.baseline = parse_policy_kind(baseline);
  }

  std::vector<Circuit> circuits;
  try {
    circuits = load_suite(suite_dir);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("cannot load suite: ") + e.what());
  }
  const BenchReport report = run_compare(circuits, cfg);
  write_text(out, emit_report(report, parse_report_format(g.format)));
  for (const auto& r : report.records) {
    if (!r.error.empty()) {
      std::cerr << r.name << " [" << r.policy << "]: " << r.error << "\n";
    }
  }
  return report.failures() == 0 ? kExitOk : kExitCircuit;
}

int cmd_bench_report(const Globals& g, const std::string& in_path,
                     const std::string& out) {
  const std::string text = read_text(in_path);
  const bool is_json =
      text.find_first_not_of(" \t\r\n") != std::string::npos &&
      text[text.find_first_not_of(" \t\r\n")] == '{';
  BenchReport report;
  try {
    report = is_json ? report_from_json(text) : report_from_csv(text);
  } catch (const std::exception& e) {
    throw ConfigError(in_path + ": " + e.what());
  }
  write_text(out, emit_report(report, parse_report_format(g.format)));
  return report.failures() == 0 ? kExitOk : kExitCircuit;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trapped-ion qubit mapping and QCCD shuttle simulation"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--config", g.config_path, "TOML-style config file")
      ->check(CLI::ExistingFile);
  app.add_option("--policy", g.policy,
                 "greedy, step, linear, exp or penalized");
  app.add_option("--traps", g.traps, "number of traps");
  app.add_option("--capacity", g.capacity, "ions per trap, maximum");
  app.add_option("--load", g.load, "ions per trap at start");
  app.add_option("--seed", g.seed, "suite seed");
  app.add_option("--step-blocks", g.step_blocks, "step policy block count");
  app.add_option("--a-linear", g.a_linear, "linear policy slope");
  app.add_option("--a-exp", g.a_exp, "exponential policy base");
  app.add_option("--format", g.format, "table, csv or json")
      ->check(CLI::IsMember({"table", "csv", "json"}));

  std::string circuit_path;
  auto* map = app.add_subcommand("map", "place one circuit, dump weights");
  map->add_option("circuit", circuit_path, "ms-text or .qasm file")
      ->required();

  std::string trace_path;
  auto* sim = app.add_subcommand("sim", "place and simulate one circuit");
  sim->add_option("circuit", circuit_path, "ms-text or .qasm file")
      ->required();
  sim->add_option("--trace", trace_path, "write shuttle events as json lines");

  auto* bench = app.add_subcommand("bench", "benchmark suites");
  bench->require_subcommand(1);

  std::string suite = "random120";
  std::string out_dir;
  auto* gen = bench->add_subcommand("gen", "generate a suite");
  gen->add_option("--suite", suite, "random120 or table1")
      ->check(CLI::IsMember({"random120", "table1"}));
  gen->add_option("--out", out_dir, "output directory")->required();

  std::string suite_dir;
  std::string policies;
  std::string baseline;
  std::string out;
  bool timing = false;
  std::size_t threads = 0;
  auto* run = bench->add_subcommand("run", "compare policies over a suite");
  run->add_option("--suite-dir", suite_dir, "directory with manifest.json")
      ->required();
  run->add_option("--policies", policies, "comma list of candidates");
  run->add_option("--baseline", baseline, "baseline policy (greedy)");
  run->add_option("--out", out, "report path, stdout if absent");
  run->add_flag("--timing", timing,
                "record compile times (report no longer reproducible)");
  run->add_option("--threads", threads, "worker threads, 0 for all cores");

  std::string in_path;
  auto* report = bench->add_subcommand("report", "re-render a report");
  report->add_option("--in", in_path, "json or csv report")->required();
  report->add_option("--out", out, "output path, stdout if absent");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*map) {
      return cmd_map(g, circuit_path);
    }
    if (*sim) {
      return cmd_sim(g, circuit_path, trace_path);
    }
    if (*gen) {
      return cmd_bench_gen(g, suite, out_dir);
    }
    if (*run) {
      return cmd_bench_run(g, suite_dir, policies, baseline, out, timing,
                           threads);
    }
    if (*report) {
      return cmd_bench_report(g, in_path, out);
    }
  } catch (const CircuitFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCircuit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
