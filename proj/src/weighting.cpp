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

#include "ionmap/weighting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>

namespace ionmap {

std::string_view to_string(PolicyKind kind) {
  switch (kind) {
  case PolicyKind::Greedy:
    return "greedy";
  case PolicyKind::Step:
    return "step";
  case PolicyKind::Linear:
    return "linear";
  case PolicyKind::Exponential:
    return "exp";
  case PolicyKind::Penalized:
    return "penalized";
  }
  return "unknown";
}

PolicyKind parse_policy_kind(std::string_view name) {
  for (const PolicyKind kind :
       {PolicyKind::Greedy, PolicyKind::Step, PolicyKind::Linear,
        PolicyKind::Exponential, PolicyKind::Penalized}) {
    if (to_string(kind) == name) {
      return kind;
    }
  }
  if (name == "exponential") {
    return PolicyKind::Exponential;
  }
  throw std::invalid_argument("unknown policy '" + std::string(name) + "'");
}

void PolicyParams::validate() const {
  if (n_blocks < 1) {
    throw std::invalid_argument("step blocks must be >= 1");
  }
  if (!(a_linear >= 0.0)) {
    throw std::invalid_argument("linear slope a must be >= 0");
  }
  if (!(a_exp > 1.0)) {
    throw std::invalid_argument("exponential base a must be > 1");
  }
}

std::string WeightPolicy::describe() const {
  std::ostringstream out;
  out << to_string(kind);
  switch (kind) {
  case PolicyKind::Step:
    out << "(n=" << params.n_blocks << ")";
    break;
  case PolicyKind::Linear:
    out << "(a=" << params.a_linear << ")";
    break;
  case PolicyKind::Exponential:
    out << "(a=" << params.a_exp << ")";
    break;
  default:
    break;
  }
  return out.str();
}

InteractionGraph::InteractionGraph(std::size_t num_qubits,
                                   std::vector<WeightedEdge> edges)
    : num_qubits_(num_qubits), edges_(std::move(edges)) {
  std::sort(edges_.begin(), edges_.end(),
            [](const WeightedEdge& a, const WeightedEdge& b) {
              return a.pair < b.pair;
            });
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const QubitPair& p = edges_[i].pair;
    if (p.first == p.second || p.second >= num_qubits_) {
      throw std::invalid_argument("invalid interaction graph edge");
    }
    if (i > 0 && edges_[i - 1].pair == p) {
      throw std::invalid_argument("duplicate interaction graph edge");
    }
  }
}

std::optional<double> InteractionGraph::weight(Qubit a, Qubit b) const {
  const QubitPair key(a, b);
  const auto it = std::lower_bound(
      edges_.begin(), edges_.end(), key,
      [](const WeightedEdge& e, const QubitPair& k) { return e.pair < k; });
  if (it == edges_.end() || it->pair != key) {
    return std::nullopt;
  }
  return it->weight;
}

std::vector<std::vector<Qubit>> InteractionGraph::adjacency() const {
  std::vector<std::vector<Qubit>> adj(num_qubits_);
  for (const WeightedEdge& e : edges_) {
    adj[e.pair.first].push_back(e.pair.second);
    adj[e.pair.second].push_back(e.pair.first);
  }
  for (auto& list : adj) {
    std::sort(list.begin(), list.end());
  }
  return adj;
}

double step_f(std::size_t cnt, std::size_t gates, std::size_t n_blocks) {
  // Blocks of floor(G/n) gates; the last block takes the remainder.
  const std::size_t block_size = std::max<std::size_t>(1, gates / n_blocks);
  const std::size_t block = std::min(cnt / block_size, n_blocks - 1);
  return static_cast<double>(n_blocks - block);
}

double linear_f(std::size_t cnt, std::size_t gates, double a) {
  return static_cast<double>(gates) - a * static_cast<double>(cnt);
}

double exp_f(std::size_t cnt, std::size_t gates, double a) {
  const double g = static_cast<double>(gates);
  return g * std::pow(a, -static_cast<double>(cnt) / g);
}

namespace {

double penalty_slope(const CircuitStats& stats) {
  return static_cast<double>(stats.symmetry) *
         static_cast<double>(stats.qubits) *
         static_cast<double>(stats.depth) / static_cast<double>(stats.gates);
}

} // namespace

double penalized_f(std::size_t cnt, const CircuitStats& stats) {
  return static_cast<double>(stats.gates) -
         penalty_slope(stats) * static_cast<double>(cnt);
}

namespace {

/// Dense upper-triangular accumulator keyed by qubit pair.
class PairAccumulator {
public:
  explicit PairAccumulator(std::size_t num_qubits)
      : n_(num_qubits), weight_(num_qubits * num_qubits, 0.0),
        seen_(num_qubits * num_qubits, 0) {}

  /// Returns true if this is the pair's first contribution.
  bool add(const QubitPair& p, double w) {
    const std::size_t idx = p.first * n_ + p.second;
    weight_[idx] += w;
    return seen_[idx]++ == 0;
  }
  [[nodiscard]] bool seen(const QubitPair& p) const {
    return seen_[p.first * n_ + p.second] != 0;
  }

  [[nodiscard]] InteractionGraph finish() const {
    std::vector<WeightedEdge> edges;
    for (std::size_t a = 0; a < n_; ++a) {
      for (std::size_t b = a + 1; b < n_; ++b) {
        const std::size_t idx = a * n_ + b;
        if (seen_[idx] != 0) {
          edges.push_back(WeightedEdge{
              QubitPair(static_cast<Qubit>(a), static_cast<Qubit>(b)),
              weight_[idx]});
        }
      }
    }
    return {n_, std::move(edges)};
  }

private:
  std::size_t n_;
  std::vector<double> weight_;
  std::vector<std::uint32_t> seen_;
};

} // namespace

InteractionGraph greedy_weights(const Circuit& c) {
  PairAccumulator acc(c.num_qubits());
  for (const QubitPair& p : c.interactions()) {
    acc.add(p, 1.0);
  }
  return acc.finish();
}

namespace {

// A pair with k occurrences whose re-occurrences sit at counters
// c_1..c_{k-1} weighs k*G - slope * sum(c_i), so one counting pass suffices
// and the slope is applied once symmetry and depth are known.
// A pair with k occurrences whose re-occurrences sit at counters
// c_1..c_{k-1} weighs k*G - slope * sum(c_i), so one counting pass suffices
// and the slope is applied once symmetry and depth are known.
InteractionGraph penalized_one_pass(const Circuit& c) {
  const std::size_t n = c.num_qubits();
  const std::size_t total = c.two_qubit_count();
  std::vector<std::uint32_t> count(n * n, 0);
  std::vector<std::uint64_t> cnt_sum(n * n, 0);
  std::vector<std::size_t> frontier(n, 0);
  std::size_t depth = 0;
  const auto& pairs = c.interactions();
  for (std::size_t cnt = 0; cnt < pairs.size(); ++cnt) {
    const QubitPair p = pairs[cnt];
    const std::size_t layer =
        std::max(frontier[p.first], frontier[p.second]) + 1;
    frontier[p.first] = frontier[p.second] = layer;
    depth = std::max(depth, layer);
    const std::size_t idx = p.first * n + p.second;
    cnt_sum[idx] += count[idx]++ != 0 ? cnt : 0;
  }

  const double g = static_cast<double>(total);
  std::vector<WeightedEdge> edges;
  std::vector<std::uint64_t> sums;
  std::uint32_t common = 0;
  int symmetry = 0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const std::size_t idx = a * n + b;
      const std::uint32_t k = count[idx];
      if (k == 0) {
        continue;
      }
      common = common == 0 ? k : common;
      symmetry |= k != common ? 1 : 0;
      edges.push_back(WeightedEdge{
          QubitPair(static_cast<Qubit>(a), static_cast<Qubit>(b)),
          static_cast<double>(k) * g});
      sums.push_back(cnt_sum[idx]);
    }
  }
  if (symmetry != 0) {
    if (c.gates().size() != pairs.size()) {
      // Single-qubit gates also occupy layers.
      depth = circuit_depth(c);
    }
    const double slope =
        penalty_slope(CircuitStats{total, n, depth, symmetry});
    for (std::size_t i = 0; i < edges.size(); ++i) {
      edges[i].weight -= slope * static_cast<double>(sums[i]);
    }
  }
  return {n, std::move(edges)};
}

} // namespace

InteractionGraph decay_weights(const Circuit& c, const WeightPolicy& policy) {
  if (policy.kind == PolicyKind::Penalized) {
    policy.params.validate();
    return penalized_one_pass(c);
  }
  return decay_weights(c, policy, CircuitStats{});
}

InteractionGraph decay_weights(const Circuit& c, const WeightPolicy& policy,
                               const CircuitStats& stats) {
  if (policy.kind == PolicyKind::Greedy) {
    throw std::invalid_argument("decay_weights requires a decaying policy");
  }
  policy.params.validate();
  const std::size_t total = c.two_qubit_count();
  const double first_weight = static_cast<double>(total);
  PairAccumulator acc(c.num_qubits());
  std::size_t cnt = 0;
  for (const QubitPair& p : c.interactions()) {
    double w = first_weight;
    if (acc.seen(p)) {
      switch (policy.kind) {
      case PolicyKind::Step:
        w = step_f(cnt, total, policy.params.n_blocks);
        break;
      case PolicyKind::Linear:
        w = linear_f(cnt, total, policy.params.a_linear);
        break;
      case PolicyKind::Exponential:
        w = exp_f(cnt, total, policy.params.a_exp);
        break;
      case PolicyKind::Penalized:
        w = penalized_f(cnt, stats);
        break;
      case PolicyKind::Greedy:
        break;
      }
    }
    acc.add(p, w);
    ++cnt;
  }
  return acc.finish();
}

InteractionGraph compute_weights(const Circuit& c, const WeightPolicy& policy) {
  if (policy.kind == PolicyKind::Greedy) {
    return greedy_weights(c);
  }
  return decay_weights(c, policy);
}

} // namespace ionmap
