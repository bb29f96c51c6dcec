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

#pragma once

#include "ionmap/circuit.hpp"
#include "ionmap/placement.hpp"
#include "ionmap/qccd_sim.hpp"
#include "ionmap/weighting.hpp"

#include <nlohmann/json.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ionmap {

struct RunConfig {
  TrapTopology topology;
  FidelityModel fidelity;
  SimOptions sim;
  PolicyParams params;
  std::vector<PolicyKind> policies{PolicyKind::Penalized};
  PolicyKind baseline = PolicyKind::Greedy;
  std::string suite_dir;
  std::string output;
  std::uint64_t seed = 42;
  std::size_t threads = 0; // 0: hardware concurrency
  bool with_timing = false; // wall-clock compile times break byte-identity

  /// Baseline first, then candidates in order, without duplicates.
  [[nodiscard]] std::vector<PolicyKind> all_policies() const;
};

/// One circuit under one policy.
struct CircuitRecord {
  std::string name;
  std::size_t qubits = 0;
  std::size_t gates = 0;
  std::size_t depth = 0;
  int symmetry = 0;
  std::string policy;
  std::size_t shuttles = 0;
  std::size_t moves = 0;
  double program_fidelity = 0.0;
  double log_fidelity = 0.0;
  std::optional<double> compile_time; // seconds, weights + placement
  std::string error;                  // non-empty when the run failed

  bool operator==(const CircuitRecord&) const = default;
};

/// Candidate policy against the baseline over every circuit where both
/// succeeded. Deltas are baseline - candidate, so positive means fewer
/// shuttles.
struct Comparison {
  std::string candidate;
  std::string baseline;
  std::size_t circuits = 0;
  std::size_t fewer = 0;
  std::size_t more = 0;
  std::size_t ties = 0;
  double avg_reduction = 0.0; // over improved circuits only
  double avg_increase = 0.0;  // over worsened circuits only
  double mean_delta = 0.0;    // over all circuits
  double net_reduction = 0.0; // sum of deltas
  double net_pct_reduction = 0.0;
  double mean_pct_reduction = 0.0;
  double avg_fidelity_ratio = 1.0;
  double max_fidelity_ratio = 1.0;
  std::size_t undefined_ratios = 0;

  bool operator==(const Comparison&) const = default;
};

struct BenchReport {
  nlohmann::ordered_json config; // echo of topology, model and policies
  std::vector<CircuitRecord> records;
  std::vector<Comparison> comparisons;

  [[nodiscard]] std::size_t failures() const;
};

/// Candidate fidelity over baseline fidelity, from log fidelities. Returns
/// nullopt when the ratio is not a finite number.
[[nodiscard]] std::optional<double> fidelity_ratio(double candidate_log,
                                                   double baseline_log);

/// Aggregates from per-circuit records. Records of unknown policies and
/// failed runs are ignored.
[[nodiscard]] std::vector<Comparison>
compute_comparisons(const std::vector<CircuitRecord>& records,
                    const std::string& baseline,
                    const std::vector<std::string>& candidates);

/// Compile (weights + placement) and simulate one circuit under one policy.
[[nodiscard]] CircuitRecord run_one(const Circuit& c, const WeightPolicy& p,
                                    const RunConfig& cfg);

/// Runs every policy on every circuit with a bounded worker pool. Failures
/// are kept as records with `error` set.
[[nodiscard]] BenchReport run_compare(const std::vector<Circuit>& circuits,
                                      const RunConfig& cfg);
/// Same, loading the suite from cfg.suite_dir.
[[nodiscard]] BenchReport run_compare(const RunConfig& cfg);

/// Wall time of weights + placement in seconds. Each sample times `batch`
/// back-to-back compiles and divides; the best of `repeats` samples wins.
[[nodiscard]] double measure_compile_time(const Circuit& c,
                                          const WeightPolicy& p,
                                          const TrapTopology& topo,
                                          std::size_t repeats,
                                          std::size_t batch = 1);

enum class ReportFormat { Table, Csv, Json };
[[nodiscard]] ReportFormat parse_report_format(const std::string& name);

[[nodiscard]] std::string emit_report(const BenchReport& r,
                                      ReportFormat format);
/// Inverse of the json rendering.
[[nodiscard]] BenchReport report_from_json(const std::string& text);
/// Inverse of the csv rendering; comparisons are recomputed from records.
[[nodiscard]] BenchReport report_from_csv(const std::string& text);

[[nodiscard]] nlohmann::ordered_json config_echo(const RunConfig& cfg);

} // namespace ionmap
