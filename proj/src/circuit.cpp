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

#include "ionmap/circuit.hpp"

#include <algorithm>
#include <map>

namespace ionmap {

namespace {
std::string format_error(std::size_t line, const std::string& what) {
  if (line == 0) {
    return what;
  }
  return "line " + std::to_string(line) + ": " + what;
}
} // namespace

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error(format_error(line, what)), line_(line) {}

Circuit::Circuit(std::string name, std::size_t num_qubits,
                 std::vector<Gate> gates)
    : name_(std::move(name)), num_qubits_(num_qubits),
      gates_(std::move(gates)) {
  for (std::size_t i = 0; i < gates_.size(); ++i) {
    const Gate& g = gates_[i];
    if (g.seq_index != i) {
      throw ParseError(0, "gate seq_index " + std::to_string(g.seq_index) +
                              " out of order at position " +
                              std::to_string(i));
    }
    if (g.operands.empty() || g.operands.size() > 2) {
      throw ParseError(0, "gate " + std::to_string(i) +
                              " must have one or two operands");
    }
    for (const Qubit q : g.operands) {
      if (q >= num_qubits_) {
        throw ParseError(0, "gate " + std::to_string(i) + " uses qubit " +
                                std::to_string(q) + " but only " +
                                std::to_string(num_qubits_) + " declared");
      }
    }
    if (g.is_two_qubit()) {
      if (g.operands[0] == g.operands[1]) {
        throw ParseError(0, "gate " + std::to_string(i) +
                                " has duplicate operand q[" +
                                std::to_string(g.operands[0]) + "]");
      }
      interactions_.push_back(g.pair());
    }
  }
}

Circuit Circuit::from_pairs(std::string name, std::size_t num_qubits,
                            const std::vector<std::pair<Qubit, Qubit>>& pairs) {
  std::vector<Gate> gates;
  gates.reserve(pairs.size());
  for (const auto& [a, b] : pairs) {
    gates.push_back(Gate{"MS", {a, b}, gates.size()});
  }
  return {std::move(name), num_qubits, std::move(gates)};
}

DependencyDag build_dag(const Circuit& c) {
  DependencyDag dag;
  // next free layer per qubit
  std::vector<std::size_t> frontier(c.num_qubits(), 0);
  dag.layer_of.resize(c.gates().size());
  for (const Gate& g : c.gates()) {
    std::size_t layer = 0;
    for (const Qubit q : g.operands) {
      layer = std::max(layer, frontier[q]);
    }
    for (const Qubit q : g.operands) {
      frontier[q] = layer + 1;
    }
    if (layer >= dag.layers.size()) {
      dag.layers.resize(layer + 1);
    }
    dag.layers[layer].push_back(g.seq_index);
    dag.layer_of[g.seq_index] = layer;
  }
  return dag;
}

std::size_t circuit_depth(const Circuit& c) {
  std::vector<std::size_t> frontier(c.num_qubits(), 0);
  std::size_t depth = 0;
  for (const Gate& g : c.gates()) {
    std::size_t layer = 0;
    for (const Qubit q : g.operands) {
      layer = std::max(layer, frontier[q]);
    }
    for (const Qubit q : g.operands) {
      frontier[q] = layer + 1;
    }
    depth = std::max(depth, layer + 1);
  }
  return depth;
}

int classify_symmetry(const Circuit& c) {
  std::map<QubitPair, std::size_t> counts;
  for (const QubitPair& p : c.interactions()) {
    ++counts[p];
  }
  if (counts.empty()) {
    return 0;
  }
  const std::size_t first = counts.begin()->second;
  const bool all_equal = std::all_of(
      counts.begin(), counts.end(),
      [first](const auto& entry) { return entry.second == first; });
  return all_equal ? 0 : 1;
}

CircuitStats circuit_stats(const Circuit& c) {
  return CircuitStats{c.two_qubit_count(), c.num_qubits(), circuit_depth(c),
                      classify_symmetry(c)};
}

} // namespace ionmap
