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


// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails.
//
//   acceptance_test <sample_program.ms> <ionmap cli> <scratch dir>

#include "ionmap/benchgen.hpp"
#include "ionmap/harness.hpp"
#include "ionmap/rng.hpp"

#include "oracles.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>

namespace fs = std::filesystem;
using namespace ionmap;

namespace {

int g_failed = 0;

void report(const std::string& id, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << id << ": " << detail
            << std::endl;
  g_failed += ok ? 0 : 1;
}

std::string weights_text(const InteractionGraph& g) {
  std::ostringstream out;
  for (const auto& e : g.edges()) {
    out << "(" << e.pair.first << "," << e.pair.second << ")=" << e.weight
        << " ";
  }
  return out.str();
}

bool weights_equal(const InteractionGraph& g,
                   const std::map<QubitPair, double>& want) {
  if (g.edges().size() != want.size()) {
    return false;
  }
  for (const auto& e : g.edges()) {
    const auto it = want.find(e.pair);
    if (it == want.end() || it->second != e.weight) {
      return false;
    }
  }
  return true;
}

void worked_examples(const std::string& fixture) {
  const Circuit c = load_circuit(fixture);

  const InteractionGraph greedy = greedy_weights(c);
  report("1a", weights_equal(greedy, {{{0, 1}, 4}, {{1, 2}, 2}, {{2, 3}, 1},
                                      {{2, 4}, 1}, {{3, 5}, 1}, {{4, 5}, 1}}),
         "greedy weights " + weights_text(greedy));

  WeightPolicy step{PolicyKind::Step, {}};
  step.params.n_blocks = 2;
  const InteractionGraph stepped = compute_weights(c, step);
  report("1b",
         weights_equal(stepped, {{{0, 1}, 13}, {{1, 2}, 11}, {{2, 3}, 10},
                                 {{2, 4}, 10}, {{3, 5}, 10}, {{4, 5}, 10}}),
         "step(n=2) weights " + weights_text(stepped));

  const std::size_t d = circuit_depth(c);
  report("1c", d == 6, "depth " + std::to_string(d));

  const Mapping m = place(greedy, TrapTopology{2, 4, 3});
  const bool ok = m.chains() == std::vector<std::vector<Qubit>>{{0, 1, 2},
                                                                {3, 4, 5}};
  std::ostringstream detail;
  for (std::size_t t = 0; t < m.num_traps(); ++t) {
    detail << "T" << t << ":[";
    for (std::size_t i = 0; i < m.chain(t).size(); ++i) {
      detail << (i ? "," : "") << m.chain(t)[i];
    }
    detail << "] ";
  }
  report("1d", ok, "placement " + detail.str());
}

void symmetric_equivalence() {
  const TrapTopology l6{};
  const FidelityModel fm{};
  bool ok = true;
  std::ostringstream detail;
  for (const Circuit& c :
       {gen_qaoa(64, 10, 0.0625, 1), gen_qft(64, 2)}) {
    const Mapping mg = place(greedy_weights(c), l6);
    const Mapping mp =
        place(compute_weights(c, WeightPolicy{PolicyKind::Penalized, {}}), l6);
    const SimResult sg = simulate(c, mg, l6, fm);
    const SimResult sp = simulate(c, mp, l6, fm);
    const bool same = mg == mp && sg.shuttle_count == sp.shuttle_count;
    ok = ok && same && classify_symmetry(c) == 0;
    detail << c.name() << " G=" << c.two_qubit_count()
           << " shuttles " << sg.shuttle_count << "/" << sp.shuttle_count
           << (same ? " identical; " : " DIFFER; ");
  }
  report("2", ok, detail.str());
}

const Comparison* find(const BenchReport& r, const std::string& name) {
  for (const auto& c : r.comparisons) {
    if (c.candidate == name) {
      return &c;
    }
  }
  return nullptr;
}

void random_suite(const BenchReport& r) {
  const Comparison* pen = find(r, "penalized");
  const Comparison* lin = find(r, "linear(a=0.1)");
  const Comparison* ex = find(r, "exp(a=2)");
  if (pen == nullptr || lin == nullptr || ex == nullptr) {
    report("3", false, "missing comparison rows");
    return;
  }
  const bool positive = pen->net_reduction > 0;
  const bool majority = pen->fewer > pen->more;
  const bool ordering = pen->net_reduction >= lin->net_reduction &&
                        pen->net_reduction >= ex->net_reduction;
  const bool band =
      pen->net_pct_reduction >= 3.0 && pen->net_pct_reduction <= 15.0;
  std::ostringstream detail;
  detail << "penalized net " << pen->net_reduction << " ("
         << pen->net_pct_reduction << "%), fewer/more/ties " << pen->fewer
         << "/" << pen->more << "/" << pen->ties << "; linear net "
         << lin->net_reduction << " (" << lin->net_pct_reduction
         << "%); exp net " << ex->net_reduction << " ("
         << ex->net_pct_reduction << "%); checks positive=" << positive
         << " majority=" << majority << " ordering=" << ordering
         << " band=" << band;
  report("3", positive && majority && ordering && band, detail.str());
}

void fidelity_monotonicity(const BenchReport& r) {
  std::map<std::string, const CircuitRecord*> greedy;
  for (const auto& rec : r.records) {
    if (rec.policy == "greedy" && rec.error.empty()) {
      greedy[rec.name] = &rec;
    }
  }
  std::size_t eligible = 0;
  std::size_t violations = 0;
  for (const auto& rec : r.records) {
    if (rec.policy != "penalized" || !rec.error.empty()) {
      continue;
    }
    const auto it = greedy.find(rec.name);
    if (it == greedy.end() || rec.shuttles > it->second->shuttles) {
      continue;
    }
    ++eligible;
    const auto ratio =
        fidelity_ratio(rec.log_fidelity, it->second->log_fidelity);
    if (!ratio || *ratio < 1.0) {
      ++violations;
    }
  }
  const Comparison* pen = find(r, "penalized");
  const bool mean_ok = pen != nullptr && pen->avg_fidelity_ratio > 1.0;
  std::ostringstream detail;
  detail << violations << " of " << eligible
         << " circuits with penalized <= greedy shuttles have ratio < 1; "
         << "mean ratio " << (pen ? pen->avg_fidelity_ratio : 0.0);
  report("4", violations == 0 && mean_ok, detail.str());
}

void compile_time_parity() {
  const TrapTopology l6{};
  bool ok = true;
  std::ostringstream detail;
  for (const Circuit& c : generate_suite(table1_manifest(42))) {
    // Interleaved so drift in clock speed hits both policies alike.
    double g = std::numeric_limits<double>::infinity();
    double p = g;
    for (int round = 0; round < 20; ++round) {
      g = std::min(g, measure_compile_time(
                          c, WeightPolicy{PolicyKind::Greedy, {}}, l6, 1, 50));
      p = std::min(p, measure_compile_time(
                          c, WeightPolicy{PolicyKind::Penalized, {}}, l6, 1,
                          50));
    }
    ok = ok && p <= 1.10 * g;
    detail << c.name() << " " << g * 1e3 << "ms/" << p * 1e3 << "ms ("
           << p / g << "x); ";
  }
  report("5", ok, detail.str());
}

void small_oracle() {
  Rng rng(2026);
  std::size_t cases = 0;
  std::size_t below_optimum = 0;
  std::size_t invariant_breaks = 0;
  FidelityModel fm;
  for (int i = 0; i < 2000; ++i) {
    const std::size_t q = 2 + rng.below(7);
    const std::size_t load = (q + 1) / 2;
    const TrapTopology topo{2, load + 1 + rng.below(2), load};
    std::vector<std::pair<Qubit, Qubit>> pairs;
    const std::size_t gates = rng.below(7);
    for (std::size_t k = 0; k < gates; ++k) {
      const auto a = static_cast<Qubit>(rng.below(q));
      auto b = static_cast<Qubit>(rng.below(q - 1));
      b += b >= a ? 1 : 0;
      pairs.emplace_back(a, b);
    }
    const Circuit c = Circuit::from_pairs("small", q, pairs);
    const PolicyKind kind = rng.below(2) == 0 ? PolicyKind::Greedy
                                               : PolicyKind::Penalized;
    const Mapping m0 =
        c.two_qubit_count() == 0
            ? place(InteractionGraph(q, {}), topo)
            : place(compute_weights(c, WeightPolicy{kind, {}}), topo);
    const SimResult r =
        simulate(c, m0, topo, fm, {}, [&](const MachineState& st) {
          bool ok = st.mapping.ion_count() + st.in_transit.has_value() == q;
          for (std::size_t t = 0; t < topo.num_traps; ++t) {
            ok = ok && st.mapping.chain(t).size() <= topo.trap_capacity;
          }
          invariant_breaks += ok ? 0 : 1;
        });
    oracle::Occupancy occ{{}, topo.num_traps, topo.trap_capacity};
    for (Qubit v = 0; v < q; ++v) {
      occ.trap_of.push_back(m0.trap_of(v));
    }
    std::vector<oracle::Pair> op;
    for (const auto& [a, b] : pairs) {
      op.emplace_back(a, b);
    }
    const long best = oracle::optimum_schedule(occ, op);
    if (best < 0 || static_cast<long>(r.shuttle_count) < best) {
      ++below_optimum;
    }
    ++cases;
  }
  std::ostringstream detail;
  detail << cases << " instances, " << below_optimum
         << " below exhaustive optimum, " << invariant_breaks
         << " invariant violations";
  report("6", below_optimum == 0 && invariant_breaks == 0, detail.str());
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void determinism(const std::string& cli, const fs::path& scratch,
                 const std::string& first_json, const BenchReport& first) {
  RunConfig cfg;
  cfg.policies = {PolicyKind::Penalized, PolicyKind::Linear,
                  PolicyKind::Exponential};
  cfg.threads = 3;
  const std::string again =
      emit_report(run_compare(generate_suite(suite_manifest("random120", 42)),
                              cfg),
                  ReportFormat::Json);
  const bool library_same = again == first_json && !first.records.empty();

  // Two `bench run` invocations of the command-line tool.
  const fs::path suite = scratch / "suite";
  fs::remove_all(suite);
  fs::create_directories(scratch);
  const std::string gen = cli + " --seed 42 bench gen --suite random120 --out " +
                          suite.string() + " > /dev/null";
  bool cli_same = std::system(gen.c_str()) == 0;
  std::string outputs[2];
  for (int i = 0; i < 2 && cli_same; ++i) {
    const fs::path out = scratch / ("run" + std::to_string(i) + ".json");
    const std::string run = cli + " bench run --suite-dir " + suite.string() +
                            " --policies penalized --out " + out.string();
    cli_same = std::system(run.c_str()) == 0;
    outputs[i] = slurp(out);
  }
  cli_same = cli_same && !outputs[0].empty() && outputs[0] == outputs[1];
  std::ostringstream detail;
  detail << "library re-run " << (library_same ? "identical" : "DIFFERS")
         << " (" << first_json.size() << " bytes); cli bench run twice "
         << (cli_same ? "identical" : "DIFFERS") << " (" << outputs[0].size()
         << " bytes)";
  report("7", library_same && cli_same, detail.str());
}

} // namespace

int main(int argc, char** argv) {
  if (argc != 4) {
    std::cerr << "usage: acceptance_test <sample_program.ms> <ionmap cli> "
                 "<scratch dir>\n";
    return 2;
  }
  try {
    worked_examples(argv[1]);
    symmetric_equivalence();

    RunConfig cfg;
    cfg.policies = {PolicyKind::Penalized, PolicyKind::Linear,
                    PolicyKind::Exponential};
    cfg.threads = 1;
    const BenchReport suite =
        run_compare(generate_suite(suite_manifest("random120", 42)), cfg);
    random_suite(suite);
    fidelity_monotonicity(suite);
    compile_time_parity();
    small_oracle();
    determinism(argv[2], argv[3], emit_report(suite, ReportFormat::Json),
                suite);
  } catch (const std::exception& e) {
    std::cout << "FAIL acceptance run aborted: " << e.what() << std::endl;
    return 1;
  }
  std::cout << (g_failed == 0 ? "all criteria passed"
                              : std::to_string(g_failed) + " criteria failed")
            << std::endl;
  return g_failed == 0 ? 0 : 1;
}
