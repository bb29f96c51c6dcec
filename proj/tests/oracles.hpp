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

// Test-only reference implementations. They are written against trap
// membership alone (no chain order) and share no code with the library.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <queue>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace oracle {

using Pair = std::pair<unsigned, unsigned>;

inline Pair norm(unsigned a, unsigned b) {
  return a < b ? Pair{a, b} : Pair{b, a};
}

/// The ten-gate six-qubit sample program.
inline std::vector<Pair> sample_program() {
  return {{0, 1}, {1, 2}, {2, 3}, {4, 5}, {4, 2},
          {0, 1}, {3, 5}, {0, 1}, {1, 2}, {0, 1}};
}

/// Sum of per-occurrence contributions; `f(k, cnt)` gets the occurrence
/// number k (0 for the first) and the global two-qubit position cnt.
template <typename F>
std::map<Pair, double> accumulate(const std::vector<Pair>& gates, F f) {
  std::map<Pair, double> w;
  std::map<Pair, std::size_t> seen;
  for (std::size_t cnt = 0; cnt < gates.size(); ++cnt) {
    const Pair p = norm(gates[cnt].first, gates[cnt].second);
    w[p] += f(seen[p]++, cnt);
  }
  return w;
}

/// ASAP depth by direct per-qubit frontier tracking.
inline std::size_t depth(std::size_t qubits, const std::vector<Pair>& gates) {
  std::vector<std::size_t> level(qubits, 0);
  std::size_t d = 0;
  for (const auto& [a, b] : gates) {
    const std::size_t l = std::max(level[a], level[b]) + 1;
    level[a] = level[b] = l;
    d = std::max(d, l);
  }
  return d;
}

/// Trap-membership view of a machine: trap index per qubit.
struct Occupancy {
  std::vector<std::size_t> trap_of;
  std::size_t traps = 0;
  std::size_t capacity = 0;

  [[nodiscard]] std::size_t size(std::size_t t) const {
    return static_cast<std::size_t>(
        std::count(trap_of.begin(), trap_of.end(), t));
  }
};

inline std::size_t hops(std::size_t a, std::size_t b) {
  return a > b ? a - b : b - a;
}

/// Replays the documented greedy schedule: the ion with fewer in-trap
/// partners among the next `window` gates moves (lower index on ties),
/// capacity overrides preference, a full destination evicts its least-used
/// ion (lower index on ties) to the nearest trap with room (leftward on
/// ties) or, failing that, into the mover's vacated slot. Returns hops, or
/// -1 on deadlock.
inline long greedy_schedule(Occupancy occ, const std::vector<Pair>& gates,
                            std::size_t window = 20) {
  long total = 0;
  for (std::size_t g = 0; g < gates.size(); ++g) {
    const auto [a, b] = gates[g];
    const std::size_t ta = occ.trap_of[a];
    const std::size_t tb = occ.trap_of[b];
    if (ta == tb) {
      continue;
    }
    const std::size_t end = std::min(gates.size(), g + 1 + window);
    auto in_trap = [&](unsigned q) {
      std::size_t n = 0;
      for (std::size_t k = g + 1; k < end; ++k) {
        const auto [x, y] = gates[k];
        if (x == q && occ.trap_of[y] == occ.trap_of[q]) ++n;
        if (y == q && occ.trap_of[x] == occ.trap_of[q]) ++n;
      }
      return n;
    };
    auto uses = [&](unsigned q) {
      std::size_t n = 0;
      for (std::size_t k = g + 1; k < end; ++k) {
        n += (gates[k].first == q) + (gates[k].second == q);
      }
      return n;
    };
    const bool a_fits = occ.size(tb) < occ.capacity;
    const bool b_fits = occ.size(ta) < occ.capacity;
    bool move_a = in_trap(a) < in_trap(b) ||
                  (in_trap(a) == in_trap(b) && a < b);
    if (a_fits != b_fits) {
      move_a = a_fits;
    }
    const unsigned mover = move_a ? a : b;
    const unsigned stayer = move_a ? b : a;
    const std::size_t src = occ.trap_of[mover];
    const std::size_t dst = occ.trap_of[stayer];
    if (occ.size(dst) >= occ.capacity) {
      long victim = -1;
      for (unsigned q = 0; q < occ.trap_of.size(); ++q) {
        if (occ.trap_of[q] != dst || q == stayer) continue;
        if (victim < 0 || uses(q) < uses(static_cast<unsigned>(victim))) {
          victim = q;
        }
      }
      if (victim < 0) {
        return -1;
      }
      long target = -1;
      for (std::size_t t = 0; t < occ.traps; ++t) {
        if (t == dst || occ.size(t) >= occ.capacity) continue;
        if (target < 0 ||
            hops(t, dst) < hops(static_cast<std::size_t>(target), dst)) {
          target = static_cast<long>(t);
        }
      }
      const std::size_t to = target < 0 ? src : static_cast<std::size_t>(target);
      occ.trap_of[static_cast<std::size_t>(victim)] = to;
      total += static_cast<long>(hops(dst, to));
    }
    occ.trap_of[mover] = dst;
    total += static_cast<long>(hops(src, dst));
  }
  return total;
}

/// Least total hops over every schedule of single-ion moves that brings each
/// gate's pair together before it runs, respecting capacity. Dijkstra over
/// (next gate, trap assignment). Returns -1 if no schedule exists.
inline long optimum_schedule(const Occupancy& start,
                             const std::vector<Pair>& gates) {
  using State = std::pair<std::size_t, std::vector<std::size_t>>;
  using Item = std::pair<long, State>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
  std::map<State, long> best;
  const State s0{0, start.trap_of};
  best[s0] = 0;
  open.push({0, s0});
  while (!open.empty()) {
    auto [cost, state] = open.top();
    open.pop();
    if (best[state] < cost) {
      continue;
    }
    auto [g, traps] = state;
    // Advance through every gate that is already satisfied.
    while (g < gates.size() &&
           traps[gates[g].first] == traps[gates[g].second]) {
      ++g;
    }
    if (g == gates.size()) {
      return cost;
    }
    Occupancy occ{traps, start.traps, start.capacity};
    for (std::size_t q = 0; q < traps.size(); ++q) {
      for (std::size_t t = 0; t < start.traps; ++t) {
        if (t == traps[q] || occ.size(t) >= start.capacity) {
          continue;
        }
        State next{g, traps};
        next.second[q] = t;
        const long c = cost + static_cast<long>(hops(traps[q], t));
        const auto it = best.find(next);
        if (it == best.end() || c < it->second) {
          best[next] = c;
          open.push({c, next});
        }
      }
    }
  }
  return -1;
}

} // namespace oracle
