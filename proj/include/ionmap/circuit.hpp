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

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ionmap {

using Qubit = std::uint32_t;

/// Unordered qubit pair, always stored with first < second.
struct QubitPair {
  Qubit first = 0;
  Qubit second = 0;

  QubitPair() = default;
  QubitPair(Qubit a, Qubit b) : first(a < b ? a : b), second(a < b ? b : a) {}

  auto operator<=>(const QubitPair&) const = default;
};

struct Gate {
  std::string kind;            // "MS" for every two-qubit interaction
  std::vector<Qubit> operands; // one or two qubits
  std::size_t seq_index = 0;

  [[nodiscard]] bool is_two_qubit() const { return operands.size() == 2; }
  [[nodiscard]] QubitPair pair() const { return {operands[0], operands[1]}; }

  bool operator==(const Gate&) const = default;
};

/// Raised for malformed programs. `line()` is 1-based, 0 when not tied to a
/// source line (e.g. a programmatically built circuit).
class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, const std::string& what);
  [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// Immutable, validated gate list over `num_qubits` logical qubits.
class Circuit {
public:
  Circuit() = default;
  /// Validates operands and renumbers nothing: `seq_index` must already be
  /// 0..n-1 in order. Throws ParseError on violation.
  Circuit(std::string name, std::size_t num_qubits, std::vector<Gate> gates);

  /// Convenience for tests and generators: builds MS gates from pairs.
  static Circuit from_pairs(std::string name, std::size_t num_qubits,
                            const std::vector<std::pair<Qubit, Qubit>>& pairs);

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] std::size_t num_qubits() const { return num_qubits_; }
  [[nodiscard]] const std::vector<Gate>& gates() const { return gates_; }
  /// Two-qubit gates only, in program order.
  [[nodiscard]] const std::vector<QubitPair>& interactions() const {
    return interactions_;
  }
  [[nodiscard]] std::size_t two_qubit_count() const {
    return interactions_.size();
  }

private:
  std::string name_;
  std::size_t num_qubits_ = 0;
  std::vector<Gate> gates_;
  std::vector<QubitPair> interactions_;
};

enum class SourceFormat { MsText, Qasm2Subset };

[[nodiscard]] Circuit parse_circuit(std::string_view text, SourceFormat format,
                                    std::string name = "circuit");
/// Picks the format from the extension (.qasm -> qasm2-subset, else ms-text).
[[nodiscard]] Circuit load_circuit(const std::string& path);

/// ms-text rendering; two-qubit gates are written as `MS q[i], q[j]`.
[[nodiscard]] std::string serialize_ms_text(const Circuit& c);

struct DependencyDag {
  std::vector<std::vector<std::size_t>> layers; // gate seq indexes per layer
  std::vector<std::size_t> layer_of;            // indexed by seq index
  [[nodiscard]] std::size_t depth() const { return layers.size(); }
};

/// ASAP layering over all gates (one-qubit gates occupy a slot on their
/// qubit).
[[nodiscard]] DependencyDag build_dag(const Circuit& c);

/// Depth only; same result as build_dag(c).depth() without the layer lists.
[[nodiscard]] std::size_t circuit_depth(const Circuit& c);

/// 0 when every distinct interacting pair occurs equally often, else 1.
[[nodiscard]] int classify_symmetry(const Circuit& c);

struct CircuitStats {
  std::size_t gates = 0;  // G, two-qubit gates only
  std::size_t qubits = 0; // Q
  std::size_t depth = 0;  // D
  int symmetry = 0;       // S

  bool operator==(const CircuitStats&) const = default;
};

[[nodiscard]] CircuitStats circuit_stats(const Circuit& c);

} // namespace ionmap
