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

#include "ionmap/placement.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>

namespace ionmap {

void TrapTopology::validate() const {
  if (num_traps == 0) {
    throw std::invalid_argument("topology needs at least one trap");
  }
  if (initial_load == 0) {
    throw std::invalid_argument("initial load must be positive");
  }
  if (initial_load >= trap_capacity) {
    throw std::invalid_argument(
        "initial load must leave communication capacity >= 1 (load " +
        std::to_string(initial_load) + ", capacity " +
        std::to_string(trap_capacity) + ")");
  }
}

Mapping::Mapping(std::size_t num_qubits, std::size_t num_traps)
    : chains_(num_traps), slot_of_(num_qubits) {}

Mapping Mapping::from_chains(std::size_t num_qubits,
                             std::vector<std::vector<Qubit>> chains) {
  Mapping m(num_qubits, chains.size());
  for (std::size_t t = 0; t < chains.size(); ++t) {
    for (const Qubit q : chains[t]) {
      if (q >= num_qubits) {
        throw std::invalid_argument("qubit " + std::to_string(q) +
                                    " out of range");
      }
      m.push_back(t, q);
    }
  }
  return m;
}

std::size_t Mapping::trap_of(Qubit q) const {
  const auto& slot = slot_of_.at(q);
  if (!slot) {
    throw std::out_of_range("qubit " + std::to_string(q) + " is unmapped");
  }
  return slot->trap;
}

bool Mapping::all_mapped() const {
  return std::all_of(slot_of_.begin(), slot_of_.end(),
                     [](const auto& s) { return s.has_value(); });
}

std::size_t Mapping::ion_count() const {
  std::size_t n = 0;
  for (const auto& c : chains_) {
    n += c.size();
  }
  return n;
}

void Mapping::remove(Qubit q) {
  const std::size_t t = trap_of(q);
  auto& c = chains_[t];
  c.erase(std::find(c.begin(), c.end(), q));
  slot_of_[q].reset();
  reindex(t);
}

void Mapping::push_front(std::size_t trap, Qubit q) {
  if (slot_of_.at(q)) {
    throw std::invalid_argument("qubit " + std::to_string(q) +
                                " is already mapped");
  }
  chains_.at(trap).insert(chains_[trap].begin(), q);
  reindex(trap);
}

void Mapping::push_back(std::size_t trap, Qubit q) {
  if (slot_of_.at(q)) {
    throw std::invalid_argument("qubit " + std::to_string(q) +
                                " is already mapped");
  }
  chains_.at(trap).push_back(q);
  slot_of_.at(q) = Slot{trap, chains_[trap].size() - 1};
}

void Mapping::reindex(std::size_t trap) {
  const auto& c = chains_[trap];
  for (std::size_t i = 0; i < c.size(); ++i) {
    slot_of_[c[i]] = Slot{trap, i};
  }
}

namespace {

double slot_distance(const Slot& a, const Slot& b, std::size_t capacity) {
  if (a.trap == b.trap) {
    return a.position > b.position
               ? static_cast<double>(a.position - b.position)
               : static_cast<double>(b.position - a.position);
  }
  const std::size_t hops = a.trap > b.trap ? a.trap - b.trap : b.trap - a.trap;
  return static_cast<double>(hops * capacity);
}

/// Initial-load slot grid used while placing.
class SlotGrid {
public:
  SlotGrid(const TrapTopology& topo, std::size_t num_qubits)
      : topo_(topo),
        cells_(topo.num_traps, std::vector<std::optional<Qubit>>(
                                   topo.initial_load)),
        free_(topo.num_traps, topo.initial_load), where_(num_qubits) {}

  [[nodiscard]] bool mapped(Qubit q) const { return where_[q].has_value(); }

  void put(Qubit q, const Slot& s) {
    cells_[s.trap][s.position] = q;
    --free_[s.trap];
    where_[q] = s;
  }

  /// Trap with the most free slots, leftmost on ties.
  [[nodiscard]] std::size_t emptiest_trap() const {
    std::size_t best = 0;
    for (std::size_t t = 1; t < free_.size(); ++t) {
      if (free_[t] > free_[best]) {
        best = t;
      }
    }
    return best;
  }

  [[nodiscard]] std::optional<Slot> first_free(std::size_t trap) const {
    for (std::size_t p = 0; p < cells_[trap].size(); ++p) {
      if (!cells_[trap][p]) {
        return Slot{trap, p};
      }
    }
    return std::nullopt;
  }

  /// Free slot minimising total distance to q's mapped neighbours; ties go
  /// to the lower trap, then the lower position.
  [[nodiscard]] Slot nearest_free(const std::vector<Qubit>& neighbours) const {
    std::vector<Slot> anchors;
    for (const Qubit nb : neighbours) {
      if (where_[nb]) {
        anchors.push_back(*where_[nb]);
      }
    }
    // Distances are whole numbers, so integer sums keep ties exact.
    std::optional<Slot> best;
    std::size_t best_cost = std::numeric_limits<std::size_t>::max();
    for (std::size_t t = 0; t < cells_.size(); ++t) {
      if (free_[t] == 0) {
        continue;
      }
      std::size_t across = 0;
      for (const Slot& s : anchors) {
        if (s.trap != t) {
          across += (s.trap > t ? s.trap - t : t - s.trap) * topo_.trap_capacity;
        }
      }
      if (across > best_cost) {
        continue;
      }
      for (std::size_t p = 0; p < cells_[t].size(); ++p) {
        if (cells_[t][p]) {
          continue;
        }
        std::size_t cost = across;
        for (const Slot& s : anchors) {
          if (s.trap == t) {
            cost += s.position > p ? s.position - p : p - s.position;
          }
        }
        if (cost < best_cost) {
          best_cost = cost;
          best = Slot{t, p};
        }
      }
    }
    // Callers check capacity up front, so a free slot always exists.
    return *best;
  }

  [[nodiscard]] Mapping to_mapping(std::size_t num_qubits) const {
    Mapping m(num_qubits, cells_.size());
    for (std::size_t t = 0; t < cells_.size(); ++t) {
      for (const auto& cell : cells_[t]) {
        if (cell) {
          m.push_back(t, *cell);
        }
      }
    }
    return m;
  }

private:
  const TrapTopology& topo_;
  std::vector<std::vector<std::optional<Qubit>>> cells_;
  std::vector<std::size_t> free_;
  std::vector<std::optional<Slot>> where_;
};

} // namespace

double distance(const Mapping& m, Qubit q1, Qubit q2,
                const TrapTopology& topo) {
  const auto a = m.slot_of(q1);
  const auto b = m.slot_of(q2);
  if (!a || !b) {
    throw std::invalid_argument("distance between unmapped qubits");
  }
  return slot_distance(*a, *b, topo.trap_capacity);
}

Mapping place(const InteractionGraph& g, const TrapTopology& topo) {
  topo.validate();
  const std::size_t n = g.num_qubits();
  if (n > topo.initial_slots()) {
    throw CapacityError("circuit needs " + std::to_string(n) +
                        " qubits but the topology loads only " +
                        std::to_string(topo.initial_slots()));
  }

  std::vector<WeightedEdge> order = g.edges();
  std::stable_sort(order.begin(), order.end(),
                   [](const WeightedEdge& a, const WeightedEdge& b) {
                     if (a.weight != b.weight) {
                       return a.weight > b.weight;
                     }
                     return a.pair < b.pair;
                   });
  const auto adj = g.adjacency();
  SlotGrid grid(topo, n);

  auto place_near = [&](Qubit q) { grid.put(q, grid.nearest_free(adj[q])); };
  auto seed = [&](const QubitPair& p) {
    grid.put(p.first, *grid.first_free(grid.emptiest_trap()));
    place_near(p.second);
  };

  std::vector<QubitPair> deferred;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const QubitPair& p = order[i].pair;
    if (i == 0) {
      seed(p);
      continue;
    }
    const bool a = grid.mapped(p.first);
    const bool b = grid.mapped(p.second);
    if (a && b) {
      continue;
    }
    if (a != b) {
      place_near(a ? p.second : p.first);
    } else {
      deferred.push_back(p);
    }
  }

  // Second pass, still in weight order: grow from the mapped set when
  // possible, otherwise seed the next disconnected component. Edges with
  // both ends mapped are dropped as the scan meets them.
  std::vector<std::uint8_t> done(deferred.size(), 0);
  std::size_t head = 0;
  while (true) {
    while (head < deferred.size() &&
           (done[head] || (grid.mapped(deferred[head].first) &&
                           grid.mapped(deferred[head].second)))) {
      done[head++] = 1;
    }
    if (head == deferred.size()) {
      break;
    }
    std::size_t pick = deferred.size();
    for (std::size_t i = head; i < deferred.size(); ++i) {
      if (done[i]) {
        continue;
      }
      const bool x = grid.mapped(deferred[i].first);
      const bool y = grid.mapped(deferred[i].second);
      if (x && y) {
        done[i] = 1;
      } else if (x != y) {
        pick = i;
        break;
      }
    }
    if (pick == deferred.size()) {
      seed(deferred[head]);
      done[head] = 1;
    } else {
      const QubitPair& p = deferred[pick];
      place_near(grid.mapped(p.first) ? p.second : p.first);
      done[pick] = 1;
    }
  }

  for (Qubit q = 0; q < n; ++q) {
    if (!grid.mapped(q)) {
      for (std::size_t t = 0; t < topo.num_traps; ++t) {
        if (const auto s = grid.first_free(t)) {
          grid.put(q, *s);
          break;
        }
      }
    }
  }
  return grid.to_mapping(n);
}

} // namespace ionmap
