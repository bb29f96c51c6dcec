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

#include "ionmap/harness.hpp"

#include "ionmap/benchgen.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <thread>

namespace ionmap {

std::vector<PolicyKind> RunConfig::all_policies() const {
  std::vector<PolicyKind> out{baseline};
  for (const PolicyKind p : policies) {
    if (std::find(out.begin(), out.end(), p) == out.end()) {
      out.push_back(p);
    }
  }
  return out;
}

std::size_t BenchReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(),
                    [](const CircuitRecord& r) { return !r.error.empty(); }));
}

std::optional<double> fidelity_ratio(double candidate_log,
                                     double baseline_log) {
  if (std::isinf(candidate_log) && std::isinf(baseline_log)) {
    return 1.0;
  }
  const double ratio = std::exp(candidate_log - baseline_log);
  if (!std::isfinite(ratio)) {
    return std::nullopt;
  }
  return ratio;
}

std::vector<Comparison>
compute_comparisons(const std::vector<CircuitRecord>& records,
                    const std::string& baseline,
                    const std::vector<std::string>& candidates) {
  std::map<std::string, const CircuitRecord*> base;
  for (const auto& r : records) {
    if (r.policy == baseline && r.error.empty()) {
      base[r.name] = &r;
    }
  }
  std::vector<Comparison> out;
  for (const auto& cand : candidates) {
    Comparison cmp;
    cmp.candidate = cand;
    cmp.baseline = baseline;
    double reduction_sum = 0.0;
    double increase_sum = 0.0;
    double baseline_total = 0.0;
    double pct_sum = 0.0;
    std::size_t pct_n = 0;
    double ratio_sum = 0.0;
    std::size_t ratio_n = 0;
    double ratio_max = 0.0;
    for (const auto& r : records) {
      if (r.policy != cand || !r.error.empty()) {
        continue;
      }
      const auto it = base.find(r.name);
      if (it == base.end()) {
        continue;
      }
      const CircuitRecord& b = *it->second;
      ++cmp.circuits;
      const double delta = static_cast<double>(b.shuttles) -
                           static_cast<double>(r.shuttles);
      if (delta > 0) {
        ++cmp.fewer;
        reduction_sum += delta;
      } else if (delta < 0) {
        ++cmp.more;
        increase_sum -= delta;
      } else {
        ++cmp.ties;
      }
      cmp.net_reduction += delta;
      baseline_total += static_cast<double>(b.shuttles);
      if (b.shuttles > 0) {
        pct_sum += 100.0 * delta / static_cast<double>(b.shuttles);
        ++pct_n;
      }
      if (const auto ratio = fidelity_ratio(r.log_fidelity, b.log_fidelity)) {
        ratio_sum += *ratio;
        ratio_max = ratio_n == 0 ? *ratio : std::max(ratio_max, *ratio);
        ++ratio_n;
      } else {
        ++cmp.undefined_ratios;
      }
    }
    if (cmp.fewer > 0) {
      cmp.avg_reduction = reduction_sum / static_cast<double>(cmp.fewer);
    }
    if (cmp.more > 0) {
      cmp.avg_increase = increase_sum / static_cast<double>(cmp.more);
    }
    if (cmp.circuits > 0) {
      cmp.mean_delta = cmp.net_reduction / static_cast<double>(cmp.circuits);
    }
    if (baseline_total > 0) {
      cmp.net_pct_reduction = 100.0 * cmp.net_reduction / baseline_total;
    }
    if (pct_n > 0) {
      cmp.mean_pct_reduction = pct_sum / static_cast<double>(pct_n);
    }
    if (ratio_n > 0) {
      cmp.avg_fidelity_ratio = ratio_sum / static_cast<double>(ratio_n);
      cmp.max_fidelity_ratio = ratio_max;
    }
    out.push_back(cmp);
  }
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

WeightPolicy policy_for(PolicyKind kind, const RunConfig& cfg) {
  return WeightPolicy{kind, cfg.params};
}

std::vector<std::string> candidate_names(const RunConfig& cfg) {
  std::vector<std::string> out;
  for (const PolicyKind p : cfg.all_policies()) {
    if (p != cfg.baseline) {
      out.emplace_back(WeightPolicy{p, cfg.params}.describe());
    }
  }
  return out;
}

} // namespace

double measure_compile_time(const Circuit& c, const WeightPolicy& p,
                            const TrapTopology& topo, std::size_t repeats,
                            std::size_t batch) {
  batch = std::max<std::size_t>(batch, 1);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < std::max<std::size_t>(repeats, 1); ++i) {
    std::size_t placed = 0;
    const auto start = Clock::now();
    for (std::size_t b = 0; b < batch; ++b) {
      const InteractionGraph g = compute_weights(c, p);
      placed += place(g, topo).num_qubits();
    }
    const auto stop = Clock::now();
    // Keep the optimiser from discarding the work.
    if (placed != batch * c.num_qubits()) {
      throw std::logic_error("placement lost qubits");
    }
    best = std::min(best, std::chrono::duration<double>(stop - start).count() /
                              static_cast<double>(batch));
  }
  return best;
}

CircuitRecord run_one(const Circuit& c, const WeightPolicy& p,
                      const RunConfig& cfg) {
  CircuitRecord rec;
  rec.name = c.name();
  rec.policy = p.describe();
  try {
    const CircuitStats stats = circuit_stats(c);
    rec.qubits = stats.qubits;
    rec.gates = stats.gates;
    rec.depth = stats.depth;
    rec.symmetry = stats.symmetry;

    const auto start = Clock::now();
    const InteractionGraph g = compute_weights(c, p);
    const Mapping m0 = place(g, cfg.topology);
    const auto stop = Clock::now();
    if (cfg.with_timing) {
      rec.compile_time = std::chrono::duration<double>(stop - start).count();
    }
    const SimResult sim = simulate(c, m0, cfg.topology, cfg.fidelity, cfg.sim);
    rec.shuttles = sim.shuttle_count;
    rec.moves = sim.move_count;
    rec.program_fidelity = sim.program_fidelity;
    rec.log_fidelity = sim.log_fidelity;
  } catch (const std::exception& e) {
    rec.error = e.what();
  }
  return rec;
}

BenchReport run_compare(const std::vector<Circuit>& circuits,
                        const RunConfig& cfg) {
  cfg.topology.validate();
  cfg.fidelity.validate();
  cfg.params.validate();
  const std::vector<PolicyKind> policies = cfg.all_policies();

  struct Job {
    std::size_t circuit;
    std::size_t policy;
  };
  std::vector<Job> jobs;
  for (std::size_t c = 0; c < circuits.size(); ++c) {
    for (std::size_t p = 0; p < policies.size(); ++p) {
      jobs.push_back({c, p});
    }
  }
  std::vector<CircuitRecord> results(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      results[i] = run_one(circuits[jobs[i].circuit],
                           policy_for(policies[jobs[i].policy], cfg), cfg);
    }
  };
  std::size_t threads = cfg.threads != 0
                            ? cfg.threads
                            : std::max(1U, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(jobs.size(), 1));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back(worker);
    }
  }

  // Order-independent assembly: by name, then by policy position.
  std::vector<std::size_t> order(jobs.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    order[i] = i;
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     const auto& na = circuits[jobs[a].circuit].name();
                     const auto& nb = circuits[jobs[b].circuit].name();
                     if (na != nb) {
                       return na < nb;
                     }
                     return jobs[a].policy < jobs[b].policy;
                   });
  BenchReport report;
  report.config = config_echo(cfg);
  for (const std::size_t i : order) {
    report.records.push_back(std::move(results[i]));
  }
  report.comparisons =
      compute_comparisons(report.records,
                          WeightPolicy{cfg.baseline, cfg.params}.describe(),
                          candidate_names(cfg));
  return report;
}

BenchReport run_compare(const RunConfig& cfg) {
  return run_compare(load_suite(cfg.suite_dir), cfg);
}

nlohmann::ordered_json config_echo(const RunConfig& cfg) {
  nlohmann::ordered_json j;
  j["topology"] = {{"traps", cfg.topology.num_traps},
                   {"capacity", cfg.topology.trap_capacity},
                   {"load", cfg.topology.initial_load},
                   {"communication_capacity",
                    cfg.topology.communication_capacity()}};
  j["fidelity"] = {{"gamma", cfg.fidelity.gamma},
                   {"tau", cfg.fidelity.tau},
                   {"A", cfg.fidelity.coupling},
                   {"heat_per_shuttle", cfg.fidelity.heat_per_shuttle},
                   {"n0", cfg.fidelity.initial_energy},
                   {"shuttle_time", cfg.fidelity.shuttle_time}};
  j["lookahead"] = cfg.sim.lookahead;
  j["baseline"] = WeightPolicy{cfg.baseline, cfg.params}.describe();
  j["policies"] = nlohmann::ordered_json::array();
  for (const PolicyKind p : cfg.all_policies()) {
    j["policies"].push_back(WeightPolicy{p, cfg.params}.describe());
  }
  j["seed"] = cfg.seed;
  j["notes"] = {
      "shuttle counts are hop-weighted (one inter-trap segment = 1)",
      "fidelity values are relative to the configured model; compare ratios",
      "communication capacity is a configured assumption",
      "named benchmarks are structural stand-ins"};
  return j;
}

} // namespace ionmap
