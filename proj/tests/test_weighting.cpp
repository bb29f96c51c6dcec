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
#include "ionmap/rng.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace ionmap {
namespace {

Circuit from_oracle(std::size_t qubits, const std::vector<oracle::Pair>& g) {
  std::vector<std::pair<Qubit, Qubit>> pairs(g.begin(), g.end());
  return Circuit::from_pairs("c", qubits, pairs);
}

Circuit sample() { return from_oracle(6, oracle::sample_program()); }

std::vector<oracle::Pair> random_pairs(Rng& rng, std::size_t q,
                                       std::size_t n) {
  std::vector<oracle::Pair> out;
  for (std::size_t i = 0; i < n; ++i) {
    const auto a = static_cast<unsigned>(rng.below(q));
    auto b = static_cast<unsigned>(rng.below(q - 1));
    b += b >= a ? 1 : 0;
    out.emplace_back(a, b);
  }
  return out;
}

void expect_graph(const InteractionGraph& g,
                  const std::map<oracle::Pair, double>& want, double tol) {
  ASSERT_EQ(g.edges().size(), want.size());
  for (const auto& [p, w] : want) {
    const auto got = g.weight(p.first, p.second);
    ASSERT_TRUE(got.has_value());
    EXPECT_NEAR(*got, w, tol) << p.first << "," << p.second;
  }
}

TEST(Greedy, SampleWeights) {
  const InteractionGraph g = greedy_weights(sample());
  EXPECT_EQ(g.weight(0, 1), 4.0);
  EXPECT_EQ(g.weight(1, 2), 2.0);
  EXPECT_EQ(g.weight(4, 5), 1.0);
  EXPECT_EQ(g.weight(2, 3), 1.0);
  EXPECT_EQ(g.weight(3, 5), 1.0);
  EXPECT_EQ(g.weight(2, 4), 1.0);
  EXPECT_EQ(g.edges().size(), 6U);
  EXPECT_FALSE(g.weight(0, 5).has_value());
}

TEST(Greedy, EmptyAndRepeated) {
  EXPECT_TRUE(greedy_weights(Circuit("e", 4, {})).edges().empty());
  const InteractionGraph g =
      greedy_weights(from_oracle(3, {{1, 2}, {2, 1}, {1, 2}, {1, 2}}));
  ASSERT_EQ(g.edges().size(), 1U);
  EXPECT_EQ(g.weight(2, 1), 4.0);
}

TEST(Step, SampleBlocksOfTwo) {
  const WeightPolicy p{PolicyKind::Step, PolicyParams{2, 0.1, 2.0}};
  const InteractionGraph g = decay_weights(sample(), p);
  EXPECT_EQ(g.weight(0, 1), 13.0);
  EXPECT_EQ(g.weight(1, 2), 11.0);
  for (const auto& [a, b] : {std::pair{4, 5}, {2, 3}, {3, 5}, {2, 4}}) {
    EXPECT_EQ(g.weight(a, b), 10.0);
  }
}

TEST(Step, Function) {
  EXPECT_EQ(step_f(3, 10, 2), 2.0);
  EXPECT_EQ(step_f(5, 10, 2), 1.0);
  EXPECT_EQ(step_f(0, 123, 1), 1.0);
  // 10 gates in 3 blocks of 3; the last block takes gates 6..9.
  EXPECT_EQ(step_f(2, 10, 3), 3.0);
  EXPECT_EQ(step_f(3, 10, 3), 2.0);
  EXPECT_EQ(step_f(6, 10, 3), 1.0);
  EXPECT_EQ(step_f(9, 10, 3), 1.0);
  // More blocks than gates.
  EXPECT_EQ(step_f(0, 3, 5), 5.0);
  EXPECT_EQ(step_f(2, 3, 5), 3.0);
}

TEST(Linear, Function) {
  EXPECT_DOUBLE_EQ(linear_f(0, 1000, 0.1), 1000.0);
  EXPECT_DOUBLE_EQ(linear_f(100, 1000, 0.1), 990.0);
  EXPECT_DOUBLE_EQ(linear_f(9, 10, 0.1), 9.1);
}

TEST(Linear, SampleMatchesOracle) {
  // Re-occurrences of (0,1) sit at cnt 5, 7, 9 and of (1,2) at cnt 8.
  const InteractionGraph g =
      decay_weights(sample(), WeightPolicy{PolicyKind::Linear, {}});
  EXPECT_NEAR(*g.weight(0, 1), 10 + 9.5 + 9.3 + 9.1, 1e-12);
  EXPECT_NEAR(*g.weight(1, 2), 10 + 9.2, 1e-12);
  EXPECT_NEAR(*g.weight(3, 5), 10.0, 1e-12);
}

TEST(Exponential, Function) {
  EXPECT_DOUBLE_EQ(exp_f(0, 10, 2.0), 10.0);
  EXPECT_DOUBLE_EQ(exp_f(37, 37, 2.0), 18.5);
  EXPECT_NEAR(exp_f(500, 1000, 2.0), 707.1067811865476, 1e-9);
}

TEST(Penalized, Function) {
  const CircuitStats sym{100, 10, 20, 0};
  for (std::size_t cnt : {0, 7, 99}) {
    EXPECT_EQ(penalized_f(cnt, sym), 100.0);
  }
  EXPECT_DOUBLE_EQ(penalized_f(5, CircuitStats{10, 6, 6, 1}), -8.0);
  const CircuitStats big{1000, 64, 100, 1};
  const double crossing = 1000.0 * 1000.0 / (64.0 * 100.0);
  EXPECT_DOUBLE_EQ(crossing, 156.25);
  EXPECT_NEAR(penalized_f(156, big), 1000.0 - 6.4 * 156, 1e-9);
  EXPECT_GT(penalized_f(156, big), 0.0);
  EXPECT_LT(penalized_f(157, big), 0.0);
}

TEST(Penalized, SampleMatchesOracle) {
  // Slope S*Q*D/G = 3.6 for the sample program.
  const auto want = oracle::accumulate(
      oracle::sample_program(), [](std::size_t k, std::size_t cnt) {
        return k == 0 ? 10.0 : 10.0 - 3.6 * static_cast<double>(cnt);
      });
  expect_graph(decay_weights(sample(), WeightPolicy{PolicyKind::Penalized, {}}),
               want, 1e-9);
  // (0,1): 10 + (10-18) + (10-25.2) + (10-32.4)
  EXPECT_NEAR(want.at({0, 1}), -35.6, 1e-9);
}

TEST(Decay, EveryPairOnceGivesG) {
  const Circuit c = from_oracle(5, {{0, 1}, {2, 3}, {1, 4}, {0, 2}});
  for (auto kind : {PolicyKind::Step, PolicyKind::Linear,
                    PolicyKind::Exponential, PolicyKind::Penalized}) {
    const InteractionGraph g = decay_weights(c, WeightPolicy{kind, {}});
    for (const auto& e : g.edges()) {
      EXPECT_EQ(e.weight, 4.0) << to_string(kind);
    }
  }
}

TEST(Decay, RandomCircuitsMatchOracle) {
  Rng rng(17);
  for (int i = 0; i < 60; ++i) {
    const std::size_t q = 2 + rng.below(9);
    const auto pairs = random_pairs(rng, q, 1 + rng.below(80));
    const Circuit c = from_oracle(q, pairs);
    const double g = static_cast<double>(pairs.size());
    const PolicyParams params{1 + rng.below(6), 0.05 * static_cast<double>(
                                                    rng.below(20)),
                              1.5 + rng.unit()};
    const CircuitStats stats = circuit_stats(c);
    const double slope = stats.symmetry * static_cast<double>(q) *
                         static_cast<double>(stats.depth) / g;
    const double block =
        std::max(1.0, std::floor(g / static_cast<double>(params.n_blocks)));

    auto check = [&](PolicyKind kind, auto f) {
      expect_graph(decay_weights(c, WeightPolicy{kind, params}),
                   oracle::accumulate(pairs,
                                      [&](std::size_t k, std::size_t cnt) {
                                        return k == 0 ? g : f(double(cnt));
                                      }),
                   1e-9 * g * g);
    };
    check(PolicyKind::Step, [&](double cnt) {
      const double b = std::min(std::floor(cnt / block),
                                static_cast<double>(params.n_blocks - 1));
      return static_cast<double>(params.n_blocks) - b;
    });
    check(PolicyKind::Linear,
          [&](double cnt) { return g - params.a_linear * cnt; });
    check(PolicyKind::Exponential, [&](double cnt) {
      return g * std::exp(-std::log(params.a_exp) * cnt / g);
    });
    check(PolicyKind::Penalized, [&](double cnt) { return g - slope * cnt; });
  }
}

TEST(Invariants, Monotonicity) {
  const CircuitStats s{500, 60, 80, 1};
  for (std::size_t cnt = 0; cnt + 1 < 500; ++cnt) {
    EXPECT_GE(step_f(cnt, 500, 7), step_f(cnt + 1, 500, 7));
    EXPECT_GT(linear_f(cnt, 500, 0.1), linear_f(cnt + 1, 500, 0.1));
    EXPECT_GT(exp_f(cnt, 500, 2.0), exp_f(cnt + 1, 500, 2.0));
    EXPECT_GT(exp_f(cnt + 1, 500, 2.0), 0.0);
    EXPECT_GT(penalized_f(cnt, s), penalized_f(cnt + 1, s));
  }
}

TEST(Invariants, SymmetricPenalizedIsScaledGreedy) {
  Rng rng(4);
  for (int i = 0; i < 30; ++i) {
    // Each distinct edge repeated the same number of times, shuffled.
    const std::size_t q = 3 + rng.below(8);
    auto edges = random_pairs(rng, q, 1 + rng.below(12));
    std::vector<oracle::Pair> distinct;
    for (const auto& [a, b] : edges) {
      const auto p = oracle::norm(a, b);
      if (std::find(distinct.begin(), distinct.end(), p) == distinct.end()) {
        distinct.push_back(p);
      }
    }
    std::vector<oracle::Pair> program;
    const std::size_t reps = 1 + rng.below(4);
    for (std::size_t r = 0; r < reps; ++r) {
      program.insert(program.end(), distinct.begin(), distinct.end());
    }
    rng.shuffle(program);
    const Circuit c = from_oracle(q, program);
    ASSERT_EQ(classify_symmetry(c), 0);
    const InteractionGraph greedy = greedy_weights(c);
    const InteractionGraph pen =
        decay_weights(c, WeightPolicy{PolicyKind::Penalized, {}});
    ASSERT_EQ(greedy.edges().size(), pen.edges().size());
    const double g = static_cast<double>(program.size());
    for (std::size_t e = 0; e < greedy.edges().size(); ++e) {
      EXPECT_EQ(pen.edges()[e].pair, greedy.edges()[e].pair);
      EXPECT_EQ(pen.edges()[e].weight, g * greedy.edges()[e].weight);
    }
  }
}

TEST(Invariants, CounterConservation) {
  // With linear slope 0, every contribution equals G, so the total is G*G.
  Rng rng(8);
  for (int i = 0; i < 20; ++i) {
    const auto pairs = random_pairs(rng, 6, 1 + rng.below(50));
    const double g = static_cast<double>(pairs.size());
    const InteractionGraph w = decay_weights(
        from_oracle(6, pairs),
        WeightPolicy{PolicyKind::Linear, PolicyParams{10, 0.0, 2.0}});
    double total = 0.0;
    for (const auto& e : w.edges()) {
      total += e.weight;
    }
    EXPECT_EQ(total, g * g);
  }
}

TEST(Invariants, SingleBlockStepTracksGreedy) {
  Rng rng(10);
  for (int i = 0; i < 20; ++i) {
    const auto pairs = random_pairs(rng, 7, 1 + rng.below(60));
    const Circuit c = from_oracle(7, pairs);
    const double g = static_cast<double>(pairs.size());
    const InteractionGraph greedy = greedy_weights(c);
    const InteractionGraph step =
        decay_weights(c, WeightPolicy{PolicyKind::Step, PolicyParams{1}});
    for (std::size_t e = 0; e < greedy.edges().size(); ++e) {
      EXPECT_EQ(step.edges()[e].weight, g + greedy.edges()[e].weight - 1);
    }
  }
}

TEST(Policy, NamesAndValidation) {
  EXPECT_EQ(parse_policy_kind("exp"), PolicyKind::Exponential);
  EXPECT_EQ(parse_policy_kind("exponential"), PolicyKind::Exponential);
  EXPECT_EQ(to_string(PolicyKind::Penalized), "penalized");
  EXPECT_THROW((void)parse_policy_kind("best"), std::invalid_argument);
  EXPECT_THROW(PolicyParams({0}).validate(), std::invalid_argument);
  EXPECT_THROW((PolicyParams{1, -0.1, 2.0}).validate(), std::invalid_argument);
  EXPECT_THROW((PolicyParams{1, 0.1, 1.0}).validate(), std::invalid_argument);
  EXPECT_EQ((WeightPolicy{PolicyKind::Step, PolicyParams{4}}).describe(),
            "step(n=4)");
  EXPECT_THROW((void)decay_weights(sample(), WeightPolicy{}),
               std::invalid_argument);
}

} // namespace
} // namespace ionmap
