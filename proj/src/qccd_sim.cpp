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

#include "ionmap/qccd_sim.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace ionmap {

void FidelityModel::validate() const {
  for (const double v : {gamma, tau, coupling, heat_per_shuttle,
                         initial_energy, shuttle_time}) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument(
          "fidelity model parameters must be finite and >= 0");
    }
  }
}

double FidelityModel::gate_fidelity(double chain_energy) const {
  const double f =
      1.0 - gamma * tau - coupling * (2.0 * chain_energy + 1.0);
  return std::clamp(f, 0.0, 1.0);
}

std::size_t ShuttleTrace::hop_count() const {
  std::size_t hops = 0;
  for (const auto& e : events) {
    hops += e.hops;
  }
  return hops;
}

std::string ShuttleTrace::to_json_lines() const {
  // Execution order: a gate's shuttles precede the gate itself.
  std::string out;
  auto emit_event = [&](const ShuttleEvent& e) {
    nlohmann::ordered_json j;
    j["type"] = "shuttle";
    j["gate"] = e.gate_index;
    j["ion"] = e.ion;
    j["source"] = e.source;
    j["dest"] = e.dest;
    j["hops"] = e.hops;
    j["eviction"] = e.eviction;
    out += j.dump() + "\n";
  };
  std::size_t next_event = 0;
  for (const auto& g : gates) {
    while (next_event < events.size() &&
           events[next_event].gate_index <= g.gate_index) {
      emit_event(events[next_event++]);
    }
    nlohmann::ordered_json j;
    j["type"] = "gate";
    j["gate"] = g.gate_index;
    j["trap"] = g.trap;
    j["chain_energy"] = g.chain_energy;
    out += j.dump() + "\n";
  }
  while (next_event < events.size()) {
    emit_event(events[next_event++]);
  }
  return out;
}

namespace {

std::size_t hop_distance(std::size_t a, std::size_t b) {
  return a > b ? a - b : b - a;
}

/// Upcoming gates on q whose partner currently sits in q's trap.
std::size_t local_partners(const Mapping& m, Qubit q,
                           std::span<const QubitPair> upcoming) {
  const std::size_t trap = m.trap_of(q);
  std::size_t n = 0;
  for (const QubitPair& p : upcoming) {
    if (p.first == q || p.second == q) {
      const Qubit other = p.first == q ? p.second : p.first;
      if (m.trap_of(other) == trap) {
        ++n;
      }
    }
  }
  return n;
}

std::size_t window_uses(Qubit q, std::span<const QubitPair> upcoming) {
  return static_cast<std::size_t>(
      std::count_if(upcoming.begin(), upcoming.end(), [q](const QubitPair& p) {
        return p.first == q || p.second == q;
      }));
}

void merge(MachineState& state, Qubit ion, std::size_t source,
           std::size_t dest, bool eviction, const FidelityModel& fm) {
  const std::size_t hops = hop_distance(source, dest);
  // The ion enters from the side facing its source trap.
  if (source < dest) {
    state.mapping.push_front(dest, ion);
  } else {
    state.mapping.push_back(dest, ion);
  }
  state.chain_energy[dest] += fm.heat_per_shuttle * static_cast<double>(hops);
  state.shuttle_count += hops;
  state.trace.events.push_back(
      ShuttleEvent{state.current_gate, ion, source, dest, hops, eviction});
}

} // namespace

void resolve_shuttle(MachineState& state, Qubit q1, Qubit q2,
                     const TrapTopology& topo, const FidelityModel& fm,
                     std::span<const QubitPair> upcoming,
                     const StepObserver& observer) {
  Mapping& m = state.mapping;
  const std::size_t t1 = m.trap_of(q1);
  const std::size_t t2 = m.trap_of(q2);
  if (t1 == t2) {
    return;
  }
  auto free_slots = [&](std::size_t t) {
    return topo.trap_capacity - m.chain(t).size();
  };
  const bool q1_can_move = free_slots(t2) > 0;
  const bool q2_can_move = free_slots(t1) > 0;

  // Preferred mover: fewer upcoming partners in its own trap, ties to the
  // lower qubit index.
  const std::size_t l1 = local_partners(m, q1, upcoming);
  const std::size_t l2 = local_partners(m, q2, upcoming);
  bool move_first = l1 < l2 || (l1 == l2 && q1 < q2);
  if (q1_can_move != q2_can_move) {
    move_first = q1_can_move;
  }
  const Qubit mover = move_first ? q1 : q2;
  const Qubit stayer = move_first ? q2 : q1;
  const std::size_t source = move_first ? t1 : t2;
  const std::size_t dest = move_first ? t2 : t1;

  if (free_slots(dest) == 0) {
    // Evict the least-needed ion from the destination chain.
    std::optional<Qubit> victim;
    std::size_t victim_uses = std::numeric_limits<std::size_t>::max();
    for (const Qubit q : m.chain(dest)) {
      if (q == stayer) {
        continue;
      }
      const std::size_t uses = window_uses(q, upcoming);
      if (uses < victim_uses || (uses == victim_uses && q < *victim)) {
        victim = q;
        victim_uses = uses;
      }
    }
    if (!victim) {
      throw DeadlockError("gate " + std::to_string(state.current_gate) +
                          ": trap " + std::to_string(dest) +
                          " is full and holds no evictable ion");
    }
    // Nearest other trap with room, leftward on ties.
    std::optional<std::size_t> target;
    for (std::size_t t = 0; t < topo.num_traps; ++t) {
      if (t == dest || free_slots(t) == 0) {
        continue;
      }
      if (!target || hop_distance(t, dest) < hop_distance(*target, dest)) {
        target = t;
      }
    }
    if (target) {
      m.remove(*victim);
      merge(state, *victim, dest, *target, true, fm);
      if (observer) {
        observer(state);
      }
    } else {
      // Only the mover's own slot is left: swap through transit.
      m.remove(mover);
      state.in_transit = mover;
      m.remove(*victim);
      merge(state, *victim, dest, source, true, fm);
      if (observer) {
        observer(state);
      }
      state.in_transit.reset();
      merge(state, mover, source, dest, false, fm);
      if (observer) {
        observer(state);
      }
      return;
    }
  }
  m.remove(mover);
  merge(state, mover, source, dest, false, fm);
  if (observer) {
    observer(state);
  }
}

SimResult simulate(const Circuit& c, const Mapping& m0,
                   const TrapTopology& topo, const FidelityModel& fm,
                   const SimOptions& options, const StepObserver& observer) {
  topo.validate();
  fm.validate();
  if (m0.num_qubits() != c.num_qubits() || !m0.all_mapped()) {
    throw std::invalid_argument("initial mapping must map every qubit");
  }
  if (m0.num_traps() != topo.num_traps) {
    throw std::invalid_argument("mapping and topology disagree on traps");
  }
  for (const auto& chain : m0.chains()) {
    if (chain.size() > topo.trap_capacity) {
      throw std::invalid_argument("initial mapping exceeds trap capacity");
    }
  }

  MachineState state;
  state.mapping = m0;
  state.chain_energy.assign(topo.num_traps, fm.initial_energy);

  const auto& interactions = c.interactions();
  std::size_t k = 0; // index into interactions
  for (const Gate& g : c.gates()) {
    if (!g.is_two_qubit()) {
      continue;
    }
    state.current_gate = g.seq_index;
    const std::size_t begin = k + 1;
    const std::size_t end =
        std::min(interactions.size(), begin + options.lookahead);
    const std::span<const QubitPair> upcoming(interactions.data() + begin,
                                              end - begin);
    const Qubit q1 = g.operands[0];
    const Qubit q2 = g.operands[1];
    if (state.mapping.trap_of(q1) != state.mapping.trap_of(q2)) {
      resolve_shuttle(state, q1, q2, topo, fm, upcoming, observer);
    }
    const std::size_t trap = state.mapping.trap_of(q1);
    state.trace.gates.push_back(
        GateRecord{g.seq_index, trap, state.chain_energy[trap]});
    if (observer) {
      observer(state);
    }
    ++k;
  }

  SimResult r;
  r.shuttle_count = state.shuttle_count;
  r.move_count = state.trace.move_count();
  r.log_fidelity = log_program_fidelity(state.trace, fm);
  r.program_fidelity = program_fidelity(state.trace, fm);
  r.wall_time = static_cast<double>(c.two_qubit_count()) * fm.tau +
                static_cast<double>(state.shuttle_count) * fm.shuttle_time;
  r.trace = std::move(state.trace);
  r.final_mapping = std::move(state.mapping);
  r.final_energy = std::move(state.chain_energy);
  return r;
}

double log_program_fidelity(const ShuttleTrace& trace,
                            const FidelityModel& fm) {
  double log_f = 0.0;
  for (const auto& g : trace.gates) {
    const double f = fm.gate_fidelity(g.chain_energy);
    if (f <= 0.0) {
      return -std::numeric_limits<double>::infinity();
    }
    log_f += std::log(f);
  }
  return log_f;
}

double program_fidelity(const ShuttleTrace& trace, const FidelityModel& fm) {
  double f = 1.0;
  for (const auto& g : trace.gates) {
    f *= fm.gate_fidelity(g.chain_energy);
  }
  return f;
}

} // namespace ionmap
