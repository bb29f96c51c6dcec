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

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ionmap {

enum class PolicyKind { Greedy, Step, Linear, Exponential, Penalized };

/// CLI token for a policy: greedy, step, linear, exp, penalized.
[[nodiscard]] std::string_view to_string(PolicyKind kind);
/// Inverse of to_string; throws std::invalid_argument on unknown names.
[[nodiscard]] PolicyKind parse_policy_kind(std::string_view name);

struct PolicyParams {
  std::size_t n_blocks = 10;
  double a_linear = 0.1;
  double a_exp = 2.0;

  /// Throws std::invalid_argument unless n_blocks >= 1, a_linear >= 0 and
  /// a_exp > 1.
  void validate() const;
  bool operator==(const PolicyParams&) const = default;
};

struct WeightPolicy {
  PolicyKind kind = PolicyKind::Greedy;
  PolicyParams params;

  /// Policy name plus the parameters it actually reads, e.g. "step(n=10)".
  [[nodiscard]] std::string describe() const;
  bool operator==(const WeightPolicy&) const = default;
};

struct WeightedEdge {
  QubitPair pair;
  double weight = 0.0;
};

/// Qubit interaction graph. Edges are sorted by pair and only pairs with at
/// least one gate are present.
class InteractionGraph {
public:
  InteractionGraph() = default;
  InteractionGraph(std::size_t num_qubits, std::vector<WeightedEdge> edges);

  [[nodiscard]] std::size_t num_qubits() const { return num_qubits_; }
  [[nodiscard]] const std::vector<WeightedEdge>& edges() const {
    return edges_;
  }
  [[nodiscard]] std::optional<double> weight(Qubit a, Qubit b) const;
  /// Neighbour lists, index = qubit, ascending order.
  [[nodiscard]] std::vector<std::vector<Qubit>> adjacency() const;

private:
  std::size_t num_qubits_ = 0;
  std::vector<WeightedEdge> edges_;
};

// Per-occurrence decay functions. `cnt` is the 0-based index of the
// two-qubit gate in program order, `gates` the two-qubit gate count G.
[[nodiscard]] double step_f(std::size_t cnt, std::size_t gates,
                            std::size_t n_blocks);
[[nodiscard]] double linear_f(std::size_t cnt, std::size_t gates, double a);
[[nodiscard]] double exp_f(std::size_t cnt, std::size_t gates, double a);
/// G - (S*Q*D/G) * cnt. Requires stats.gates > 0.
[[nodiscard]] double penalized_f(std::size_t cnt, const CircuitStats& stats);

/// Edge weight = number of two-qubit gates on the pair.
[[nodiscard]] InteractionGraph greedy_weights(const Circuit& c);

/// First occurrence of a pair contributes G, each re-occurrence at gate
/// counter cnt contributes f(cnt). The counter advances on every two-qubit
/// gate. `policy.kind` must not be Greedy.
[[nodiscard]] InteractionGraph decay_weights(const Circuit& c,
                                             const WeightPolicy& policy);
/// Same, with precomputed stats (only read by the penalized policy).
[[nodiscard]] InteractionGraph decay_weights(const Circuit& c,
                                             const WeightPolicy& policy,
                                             const CircuitStats& stats);

/// Dispatches to greedy_weights or decay_weights.
[[nodiscard]] InteractionGraph compute_weights(const Circuit& c,
                                               const WeightPolicy& policy);

} // namespace ionmap
