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

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ionmap {

/// Per-gate fidelity F = 1 - gamma*tau - coupling*(2*n + 1), clamped to
/// [0, 1], where n is the executing chain's motional energy in quanta.
struct FidelityModel {
  double gamma = 0.001;           // trap heating rate per time unit
  double tau = 1.0;               // two-qubit gate time
  double coupling = 0.0043;       // A
  double heat_per_shuttle = 0.1;  // quanta per hop, added on merge
  double initial_energy = 0.0;    // n0 of every chain
  double shuttle_time = 5.0;      // per hop, only used for wall time

  void validate() const;
  [[nodiscard]] double gate_fidelity(double chain_energy) const;
  bool operator==(const FidelityModel&) const = default;
};

struct SimOptions {
  std::size_t lookahead = 20; // two-qubit gates considered for mover choice
};

struct ShuttleEvent {
  std::size_t gate_index = 0; // seq index of the gate being served
  Qubit ion = 0;
  std::size_t source = 0;
  std::size_t dest = 0;
  std::size_t hops = 0;
  bool eviction = false;
  bool operator==(const ShuttleEvent&) const = default;
};

struct GateRecord {
  std::size_t gate_index = 0;
  std::size_t trap = 0;
  double chain_energy = 0.0; // at execution time
  bool operator==(const GateRecord&) const = default;
};

struct ShuttleTrace {
  std::vector<ShuttleEvent> events;
  std::vector<GateRecord> gates; // one per executed two-qubit gate

  [[nodiscard]] std::size_t hop_count() const;
  [[nodiscard]] std::size_t move_count() const { return events.size(); }
  /// One JSON object per line: events first, then gate records.
  [[nodiscard]] std::string to_json_lines() const;
  bool operator==(const ShuttleTrace&) const = default;
};

struct MachineState {
  Mapping mapping;
  std::vector<double> chain_energy;
  std::size_t shuttle_count = 0; // hop-weighted
  ShuttleTrace trace;
  std::optional<Qubit> in_transit; // ion split off but not yet merged
  std::size_t current_gate = 0;
};

class DeadlockError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Called after every shuttle event and every executed gate.
using StepObserver = std::function<void(const MachineState&)>;

/// Brings q1 and q2 (in different traps) together by moving one of them.
/// `upcoming` are the two-qubit gates that follow the current one, already
/// truncated to the lookahead window.
void resolve_shuttle(MachineState& state, Qubit q1, Qubit q2,
                     const TrapTopology& topo, const FidelityModel& fm,
                     std::span<const QubitPair> upcoming,
                     const StepObserver& observer = {});

struct SimResult {
  std::size_t shuttle_count = 0; // hops
  std::size_t move_count = 0;    // ion moves regardless of distance
  double program_fidelity = 1.0;
  double log_fidelity = 0.0;
  double wall_time = 0.0;
  ShuttleTrace trace;
  Mapping final_mapping;
  std::vector<double> final_energy;
};

/// Runs the circuit in program order from mapping m0. Throws DeadlockError
/// when an ion cannot be brought to its partner.
[[nodiscard]] SimResult simulate(const Circuit& c, const Mapping& m0,
                                 const TrapTopology& topo,
                                 const FidelityModel& fm,
                                 const SimOptions& options = {},
                                 const StepObserver& observer = {});

/// Product of clamped per-gate fidelities recorded in the trace.
[[nodiscard]] double program_fidelity(const ShuttleTrace& trace,
                                      const FidelityModel& fm);
/// Natural log of program_fidelity; -inf when any gate has fidelity 0.
[[nodiscard]] double log_program_fidelity(const ShuttleTrace& trace,
                                          const FidelityModel& fm);

} // namespace ionmap
