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
#include "ionmap/weighting.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace ionmap {

/// Linear chain of traps; trap t is adjacent to t-1 and t+1.
struct TrapTopology {
  std::size_t num_traps = 6;
  std::size_t trap_capacity = 17;
  std::size_t initial_load = 15;

  [[nodiscard]] std::size_t communication_capacity() const {
    return trap_capacity - initial_load;
  }
  [[nodiscard]] std::size_t initial_slots() const {
    return num_traps * initial_load;
  }
  /// Throws std::invalid_argument on an unusable topology.
  void validate() const;
  bool operator==(const TrapTopology&) const = default;
};

class CapacityError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Slot {
  std::size_t trap = 0;
  std::size_t position = 0; // index within the trap's ion chain
  bool operator==(const Slot&) const = default;
};

/// Qubit -> (trap, position) assignment with per-trap ordered chains.
class Mapping {
public:
  Mapping() = default;
  Mapping(std::size_t num_qubits, std::size_t num_traps);
  /// Builds a mapping from explicit chains; throws std::invalid_argument if a
  /// qubit repeats or is out of range.
  static Mapping from_chains(std::size_t num_qubits,
                             std::vector<std::vector<Qubit>> chains);

  [[nodiscard]] std::size_t num_qubits() const { return slot_of_.size(); }
  [[nodiscard]] std::size_t num_traps() const { return chains_.size(); }
  [[nodiscard]] const std::vector<std::vector<Qubit>>& chains() const {
    return chains_;
  }
  [[nodiscard]] const std::vector<Qubit>& chain(std::size_t trap) const {
    return chains_.at(trap);
  }
  [[nodiscard]] bool is_mapped(Qubit q) const {
    return slot_of_.at(q).has_value();
  }
  [[nodiscard]] std::optional<Slot> slot_of(Qubit q) const {
    return slot_of_.at(q);
  }
  /// Throws std::out_of_range if q is unmapped.
  [[nodiscard]] std::size_t trap_of(Qubit q) const;
  [[nodiscard]] bool all_mapped() const;
  [[nodiscard]] std::size_t ion_count() const;

  void remove(Qubit q);
  void push_front(std::size_t trap, Qubit q);
  void push_back(std::size_t trap, Qubit q);

  bool operator==(const Mapping&) const = default;

private:
  void reindex(std::size_t trap);

  std::vector<std::vector<Qubit>> chains_;
  std::vector<std::optional<Slot>> slot_of_;
};

/// Inter-trap hops scaled by trap capacity, plus the in-chain offset when
/// both ions share a trap. Throws std::invalid_argument for unmapped qubits.
[[nodiscard]] double distance(const Mapping& m, Qubit q1, Qubit q2,
                              const TrapTopology& topo);

/// Greedy initial placement: edges in descending signed weight, ties by
/// pair; unmapped endpoints go to the free initial-load slot with the least
/// total distance to their mapped neighbours. Throws CapacityError when the
/// graph has more qubits than initial-load slots.
[[nodiscard]] Mapping place(const InteractionGraph& g,
                            const TrapTopology& topo);

} // namespace ionmap
