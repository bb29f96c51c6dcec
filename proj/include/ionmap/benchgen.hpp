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

#include <nlohmann/json.hpp>

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace ionmap {

/// Relative weights of the interaction patterns a random circuit draws from.
struct PatternMix {
  double uniform = 1.0;        // any pair, uniformly
  double clustered = 1.0;      // pairs inside fixed qubit groups
  double sliding_window = 1.0; // pairs near an index drifting over time
  double power_law = 1.0;      // Zipf-weighted qubit popularity
};

struct RandomSpec {
  std::uint64_t seed = 42;
  std::size_t qubit_min = 60;
  std::size_t qubit_max = 75;
  std::size_t gate_min = 900;
  std::size_t gate_max = 2000;
  PatternMix mix;
  std::size_t clusters = 4;
  double cluster_bias = 0.85; // chance a clustered gate stays in its group
  std::size_t window = 8;     // sliding-window width in qubits
  double zipf_exponent = 1.0;

  /// Throws std::invalid_argument for empty ranges or a degenerate mix.
  void validate() const;
};

[[nodiscard]] Circuit gen_random(const RandomSpec& spec,
                                 std::string name = "random");

/// Group index per qubit used by the clustered pattern of gen_random(spec).
[[nodiscard]] std::vector<std::size_t> cluster_assignment(const RandomSpec& spec);

/// All-pairs pattern, each pair `gates_per_pair` times in a row.
[[nodiscard]] Circuit gen_qft(std::size_t qubits,
                              std::size_t gates_per_pair = 2);
/// One random graph with round(edge_density * Q(Q-1)/2) edges, repeated
/// `layers` times in the same order.
[[nodiscard]] Circuit gen_qaoa(std::size_t qubits, std::size_t layers,
                               double edge_density, std::uint64_t seed);
/// Grid couplers, one of four nearest-neighbour patterns per cycle.
[[nodiscard]] Circuit gen_supremacy_like(std::size_t qubits, std::size_t depth,
                                         std::uint64_t seed);
/// Ripple-carry style sweeps over growing register prefixes, cut at `gates`.
[[nodiscard]] Circuit gen_sqrt_like(std::size_t qubits, std::size_t gates,
                                    std::uint64_t seed);

struct SuiteEntry {
  std::string name;
  std::string generator; // random, qft, qaoa, supremacy, sqrt
  std::uint64_t seed = 0;
  nlohmann::ordered_json params;
};

struct SuiteManifest {
  std::string suite;
  std::uint64_t seed = 0;
  std::string prng = "mt19937_64";
  std::vector<SuiteEntry> circuits;

  [[nodiscard]] nlohmann::ordered_json to_json() const;
  static SuiteManifest from_json(const nlohmann::ordered_json& j);
};

/// `count` random circuits with per-circuit seeds and pattern mixes derived
/// from `seed`.
[[nodiscard]] SuiteManifest random_suite_manifest(std::uint64_t seed,
                                                  std::size_t count = 120);
/// Stand-ins for the four named benchmarks at their reported sizes.
[[nodiscard]] SuiteManifest table1_manifest(std::uint64_t seed);
/// "random120" or "table1"; throws std::invalid_argument otherwise.
[[nodiscard]] SuiteManifest suite_manifest(const std::string& suite,
                                           std::uint64_t seed);

[[nodiscard]] Circuit generate(const SuiteEntry& entry);
[[nodiscard]] std::vector<Circuit> generate_suite(const SuiteManifest& m);

/// Writes <name>.ms for every circuit plus manifest.json.
void write_suite(const SuiteManifest& m, const std::filesystem::path& dir);
[[nodiscard]] SuiteManifest read_manifest(const std::filesystem::path& dir);
/// Loads every circuit listed in dir/manifest.json from its .ms file.
[[nodiscard]] std::vector<Circuit> load_suite(const std::filesystem::path& dir);

} // namespace ionmap
