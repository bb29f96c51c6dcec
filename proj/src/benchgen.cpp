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

#include "ionmap/benchgen.hpp"

#include "ionmap/rng.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ionmap {

using Pairs = std::vector<std::pair<Qubit, Qubit>>;

void RandomSpec::validate() const {
  if (qubit_min < 2 || qubit_min > qubit_max) {
    throw std::invalid_argument("random spec: empty or too small qubit range");
  }
  if (gate_min > gate_max) {
    throw std::invalid_argument("random spec: empty gate range");
  }
  const std::array<double, 4> w{mix.uniform, mix.clustered, mix.sliding_window,
                                mix.power_law};
  if (std::any_of(w.begin(), w.end(), [](double x) { return !(x >= 0.0); }) ||
      std::accumulate(w.begin(), w.end(), 0.0) <= 0.0) {
    throw std::invalid_argument(
        "random spec: pattern weights must be >= 0 with a positive sum");
  }
  if (clusters == 0 || window < 2 || !(cluster_bias >= 0.0) ||
      cluster_bias > 1.0 || !(zipf_exponent >= 0.0)) {
    throw std::invalid_argument("random spec: invalid pattern parameters");
  }
}

namespace {

enum class Pattern { Uniform, Clustered, SlidingWindow, PowerLaw };

std::pair<Qubit, Qubit> distinct_pair(Rng& rng, std::size_t n) {
  const auto a = static_cast<Qubit>(rng.below(n));
  auto b = static_cast<Qubit>(rng.below(n - 1));
  if (b >= a) {
    ++b;
  }
  return {a, b};
}

/// Gate sampler for one random circuit. Patterns work on a shuffled view of
/// the qubit labels so no structure lines up with index order.
class RandomSampler {
public:
  RandomSampler(const RandomSpec& spec, std::size_t qubits, Rng& rng)
      : spec_(spec), n_(qubits), perm_(qubits), group_of_(qubits) {
    std::iota(perm_.begin(), perm_.end(), Qubit{0});
    rng.shuffle(perm_);
    const std::size_t groups = std::min(spec.clusters, n_ / 2);
    members_.resize(std::max<std::size_t>(groups, 1));
    for (std::size_t i = 0; i < n_; ++i) {
      const std::size_t g = i * members_.size() / n_;
      members_[g].push_back(perm_[i]);
      group_of_[perm_[i]] = g;
    }
    std::vector<Qubit> popular(perm_);
    rng.shuffle(popular);
    popularity_ = popular;
    double total = 0.0;
    for (std::size_t r = 0; r < n_; ++r) {
      total += 1.0 / std::pow(static_cast<double>(r + 1), spec.zipf_exponent);
      cdf_.push_back(total);
    }
    for (double& c : cdf_) {
      c /= total;
    }
    const std::array<double, 4> w{spec.mix.uniform, spec.mix.clustered,
                                  spec.mix.sliding_window, spec.mix.power_law};
    double acc = 0.0;
    const double sum = std::accumulate(w.begin(), w.end(), 0.0);
    for (std::size_t i = 0; i < w.size(); ++i) {
      acc += w[i] / sum;
      mix_cdf_[i] = acc;
    }
  }

  [[nodiscard]] const std::vector<std::size_t>& groups() const {
    return group_of_;
  }

  std::pair<Qubit, Qubit> draw(Rng& rng, std::size_t index, std::size_t total) {
    switch (pick_pattern(rng)) {
    case Pattern::Uniform:
      return distinct_pair(rng, n_);
    case Pattern::Clustered:
      return clustered(rng);
    case Pattern::SlidingWindow:
      return sliding(rng, index, total);
    case Pattern::PowerLaw:
      return power_law(rng);
    }
    return distinct_pair(rng, n_);
  }

private:
  Pattern pick_pattern(Rng& rng) const {
    const double u = rng.unit();
    for (std::size_t i = 0; i < mix_cdf_.size(); ++i) {
      if (u < mix_cdf_[i]) {
        return static_cast<Pattern>(i);
      }
    }
    // Rounding can leave u just above the last cdf entry.
    for (std::size_t i = mix_cdf_.size(); i-- > 0;) {
      if (i == 0 || mix_cdf_[i] > mix_cdf_[i - 1]) {
        return static_cast<Pattern>(i);
      }
    }
    return Pattern::Uniform;
  }

  std::pair<Qubit, Qubit> clustered(Rng& rng) const {
    if (rng.unit() >= spec_.cluster_bias) {
      return distinct_pair(rng, n_);
    }
    const auto& group = members_[rng.below(members_.size())];
    const auto [i, j] = distinct_pair(rng, group.size());
    return {group[i], group[j]};
  }

  std::pair<Qubit, Qubit> sliding(Rng& rng, std::size_t index,
                                  std::size_t total) const {
    const std::size_t width = std::min(spec_.window, n_);
    const std::size_t centre = total == 0 ? 0 : index * n_ / total;
    const std::size_t base = centre + n_ - width / 2;
    const auto [i, j] = distinct_pair(rng, width);
    return {perm_[(base + i) % n_], perm_[(base + j) % n_]};
  }

  std::pair<Qubit, Qubit> power_law(Rng& rng) const {
    auto sample = [&] {
      const double u = rng.unit();
      const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
      const auto r = static_cast<std::size_t>(it - cdf_.begin());
      return popularity_[std::min(r, n_ - 1)];
    };
    const Qubit a = sample();
    Qubit b = sample();
    while (b == a) {
      b = sample();
    }
    return {a, b};
  }

  const RandomSpec& spec_;
  std::size_t n_;
  std::vector<Qubit> perm_;
  std::vector<std::size_t> group_of_;
  std::vector<std::vector<Qubit>> members_;
  std::vector<Qubit> popularity_;
  std::vector<double> cdf_;
  std::array<double, 4> mix_cdf_{};
};

bool all_counts_equal(const Pairs& pairs) {
  std::map<QubitPair, std::size_t> counts;
  for (const auto& [a, b] : pairs) {
    ++counts[QubitPair(a, b)];
  }
  return std::all_of(counts.begin(), counts.end(), [&](const auto& e) {
    return e.second == counts.begin()->second;
  });
}

} // namespace

Circuit gen_random(const RandomSpec& spec, std::string name) {
  spec.validate();
  Rng rng(spec.seed);
  const auto qubits =
      static_cast<std::size_t>(rng.between(spec.qubit_min, spec.qubit_max));
  const auto gates =
      static_cast<std::size_t>(rng.between(spec.gate_min, spec.gate_max));
  RandomSampler sampler(spec, qubits, rng);
  Pairs pairs;
  pairs.reserve(gates);
  for (std::size_t i = 0; i < gates; ++i) {
    pairs.push_back(sampler.draw(rng, i, gates));
  }
  return Circuit::from_pairs(std::move(name), qubits, pairs);
}

std::vector<std::size_t> cluster_assignment(const RandomSpec& spec) {
  spec.validate();
  // Same draws as gen_random up to the sampler's construction.
  Rng rng(spec.seed);
  const auto qubits =
      static_cast<std::size_t>(rng.between(spec.qubit_min, spec.qubit_max));
  (void)rng.between(spec.gate_min, spec.gate_max);
  return RandomSampler(spec, qubits, rng).groups();
}

Circuit gen_qft(std::size_t qubits, std::size_t gates_per_pair) {
  if (qubits < 2 || gates_per_pair == 0) {
    throw std::invalid_argument("qft needs >= 2 qubits and >= 1 gate per pair");
  }
  Pairs pairs;
  for (std::size_t i = 0; i < qubits; ++i) {
    for (std::size_t j = i + 1; j < qubits; ++j) {
      for (std::size_t k = 0; k < gates_per_pair; ++k) {
        pairs.emplace_back(static_cast<Qubit>(i), static_cast<Qubit>(j));
      }
    }
  }
  return Circuit::from_pairs("qft_" + std::to_string(qubits), qubits, pairs);
}

Circuit gen_qaoa(std::size_t qubits, std::size_t layers, double edge_density,
                 std::uint64_t seed) {
  if (qubits < 2 || layers == 0 || !(edge_density > 0.0) ||
      edge_density > 1.0) {
    throw std::invalid_argument("qaoa needs >= 2 qubits, >= 1 layer and "
                                "edge density in (0, 1]");
  }
  Rng rng(seed);
  Pairs all;
  for (std::size_t i = 0; i < qubits; ++i) {
    for (std::size_t j = i + 1; j < qubits; ++j) {
      all.emplace_back(static_cast<Qubit>(i), static_cast<Qubit>(j));
    }
  }
  rng.shuffle(all);
  const auto edges = std::max<std::size_t>(
      1, static_cast<std::size_t>(
             std::llround(edge_density * static_cast<double>(all.size()))));
  all.resize(std::min(edges, all.size()));
  Pairs pairs;
  for (std::size_t l = 0; l < layers; ++l) {
    pairs.insert(pairs.end(), all.begin(), all.end());
  }
  return Circuit::from_pairs("qaoa_" + std::to_string(qubits), qubits, pairs);
}

Circuit gen_supremacy_like(std::size_t qubits, std::size_t depth,
                           std::uint64_t seed) {
  if (qubits < 2 || depth == 0) {
    throw std::invalid_argument("supremacy needs >= 2 qubits and depth >= 1");
  }
  const auto rows = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::sqrt(static_cast<double>(qubits))));
  const std::size_t cols = (qubits + rows - 1) / rows;
  // 0/1: horizontal couplers starting at even/odd column, 2/3: vertical
  // couplers starting at even/odd row.
  std::array<Pairs, 4> patterns;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const std::size_t q = r * cols + c;
      if (q >= qubits) {
        continue;
      }
      if (c + 1 < cols && q + 1 < qubits) {
        patterns[c % 2].emplace_back(static_cast<Qubit>(q),
                                     static_cast<Qubit>(q + 1));
      }
      if (r + 1 < rows && q + cols < qubits) {
        patterns[2 + r % 2].emplace_back(static_cast<Qubit>(q),
                                         static_cast<Qubit>(q + cols));
      }
    }
  }
  Rng rng(seed);
  std::vector<std::size_t> cycle(depth);
  for (auto& p : cycle) {
    do {
      p = rng.below(4);
    } while (patterns[p].empty());
  }
  auto expand = [&] {
    Pairs out;
    for (const std::size_t p : cycle) {
      out.insert(out.end(), patterns[p].begin(), patterns[p].end());
    }
    return out;
  };
  Pairs pairs = expand();
  // Balanced pattern usage makes every coupler count equal; try another
  // pattern for the last cycle.
  const std::size_t original = cycle.back();
  for (std::size_t shift = 1; depth > 1 && shift < 4 && all_counts_equal(pairs);
       ++shift) {
    const std::size_t candidate = (original + shift) % 4;
    if (patterns[candidate].empty()) {
      continue;
    }
    cycle.back() = candidate;
    Pairs trial = expand();
    if (!all_counts_equal(trial)) {
      pairs = std::move(trial);
    }
    cycle.back() = original;
  }
  return Circuit::from_pairs("supremacy_" + std::to_string(qubits), qubits,
                             pairs);
}

Circuit gen_sqrt_like(std::size_t qubits, std::size_t gates,
                      std::uint64_t seed) {
  if (qubits < 3 || gates == 0) {
    throw std::invalid_argument("sqrt needs >= 3 qubits and >= 1 gate");
  }
  Rng rng(seed);
  Pairs pairs;
  auto emit = [&](std::size_t a, std::size_t b) {
    if (pairs.size() < gates) {
      pairs.emplace_back(static_cast<Qubit>(a), static_cast<Qubit>(b));
    }
  };
  // Each pass is a carry sweep over a random window: majority blocks going
  // up, un-majority blocks coming back down.
  while (pairs.size() < gates) {
    const auto len = static_cast<std::size_t>(rng.between(3, qubits));
    const auto start = static_cast<std::size_t>(rng.between(0, qubits - len));
    for (std::size_t i = start; i + 2 < start + len; ++i) {
      emit(i + 1, i + 2);
      emit(i, i + 2);
      emit(i + 1, i + 2);
      emit(i, i + 2);
      emit(i, i + 1);
    }
    for (std::size_t i = start + len - 2; i-- > start;) {
      emit(i, i + 1);
      emit(i + 1, i + 2);
    }
  }
  if (all_counts_equal(pairs) && pairs.size() > 1) {
    pairs.back() = pairs.front();
  }
  return Circuit::from_pairs("sqrt_" + std::to_string(qubits), qubits, pairs);
}

nlohmann::ordered_json SuiteManifest::to_json() const {
  nlohmann::ordered_json j;
  j["suite"] = suite;
  j["seed"] = seed;
  j["prng"] = prng;
  j["format"] = "ms-text";
  j["circuits"] = nlohmann::ordered_json::array();
  for (const auto& e : circuits) {
    nlohmann::ordered_json c;
    c["name"] = e.name;
    c["generator"] = e.generator;
    c["seed"] = e.seed;
    c["params"] = e.params;
    j["circuits"].push_back(std::move(c));
  }
  return j;
}

SuiteManifest SuiteManifest::from_json(const nlohmann::ordered_json& j) {
  SuiteManifest m;
  m.suite = j.at("suite").get<std::string>();
  m.seed = j.at("seed").get<std::uint64_t>();
  m.prng = j.at("prng").get<std::string>();
  if (m.prng != Rng::kAlgorithm) {
    throw std::invalid_argument("manifest uses unsupported prng " + m.prng);
  }
  std::set<std::string> names;
  for (const auto& c : j.at("circuits")) {
    SuiteEntry e;
    e.name = c.at("name").get<std::string>();
    e.generator = c.at("generator").get<std::string>();
    e.seed = c.at("seed").get<std::uint64_t>();
    e.params = c.at("params");
    if (!names.insert(e.name).second) {
      throw std::invalid_argument("duplicate circuit name " + e.name);
    }
    m.circuits.push_back(std::move(e));
  }
  return m;
}

namespace {

std::string indexed_name(const std::string& prefix, std::size_t i) {
  std::ostringstream out;
  out << prefix;
  out.width(3);
  out.fill('0');
  out << i;
  return out.str();
}

} // namespace

SuiteManifest random_suite_manifest(std::uint64_t seed, std::size_t count) {
  SuiteManifest m;
  m.suite = "random" + std::to_string(count);
  m.seed = seed;
  Rng rng(seed);
  const RandomSpec defaults;
  for (std::size_t i = 0; i < count; ++i) {
    SuiteEntry e;
    e.name = indexed_name("random_", i);
    e.generator = "random";
    e.seed = splitmix64(seed + i);
    // Each circuit gets its own blend of patterns.
    nlohmann::ordered_json mix;
    mix["uniform"] = std::round(rng.unit() * 100.0) / 100.0;
    mix["clustered"] = std::round(rng.unit() * 100.0) / 100.0;
    mix["sliding_window"] = std::round(rng.unit() * 100.0) / 100.0;
    mix["power_law"] = std::round(rng.unit() * 100.0) / 100.0;
    if (mix["uniform"].get<double>() + mix["clustered"].get<double>() +
            mix["sliding_window"].get<double>() +
            mix["power_law"].get<double>() <=
        0.0) {
      mix["uniform"] = 1.0;
    }
    e.params["qubit_range"] = {defaults.qubit_min, defaults.qubit_max};
    e.params["gate_range"] = {defaults.gate_min, defaults.gate_max};
    e.params["pattern_mix"] = mix;
    e.params["clusters"] = defaults.clusters;
    e.params["cluster_bias"] = defaults.cluster_bias;
    e.params["window"] = defaults.window;
    e.params["zipf_exponent"] = defaults.zipf_exponent;
    m.circuits.push_back(std::move(e));
  }
  return m;
}

SuiteManifest table1_manifest(std::uint64_t seed) {
  SuiteManifest m;
  m.suite = "table1";
  m.seed = seed;
  auto add = [&](std::string name, std::string gen,
                 nlohmann::ordered_json params, std::uint64_t salt) {
    m.circuits.push_back(SuiteEntry{std::move(name), std::move(gen),
                                    splitmix64(seed ^ salt),
                                    std::move(params)});
  };
  add("sqrt_stand_in", "sqrt", {{"qubits", 78}, {"gates", 1028}}, 1);
  add("supremacy_stand_in", "supremacy", {{"qubits", 64}, {"depth", 20}}, 2);
  add("qaoa_stand_in", "qaoa",
      {{"qubits", 64}, {"layers", 10}, {"edge_density", 0.0625}}, 3);
  add("qft_stand_in", "qft", {{"qubits", 64}, {"gates_per_pair", 2}}, 4);
  return m;
}

SuiteManifest suite_manifest(const std::string& suite, std::uint64_t seed) {
  if (suite == "table1") {
    return table1_manifest(seed);
  }
  if (suite.rfind("random", 0) == 0) {
    const std::string digits = suite.substr(6);
    if (digits.empty() ||
        !std::all_of(digits.begin(), digits.end(),
                     [](unsigned char ch) { return std::isdigit(ch); })) {
      throw std::invalid_argument("unknown suite " + suite);
    }
    return random_suite_manifest(seed, std::stoul(digits));
  }
  throw std::invalid_argument("unknown suite " + suite);
}

Circuit generate(const SuiteEntry& e) {
  const auto& p = e.params;
  Circuit c;
  if (e.generator == "random") {
    RandomSpec spec;
    spec.seed = e.seed;
    spec.qubit_min = p.at("qubit_range").at(0).get<std::size_t>();
    spec.qubit_max = p.at("qubit_range").at(1).get<std::size_t>();
    spec.gate_min = p.at("gate_range").at(0).get<std::size_t>();
    spec.gate_max = p.at("gate_range").at(1).get<std::size_t>();
    const auto& mix = p.at("pattern_mix");
    spec.mix = PatternMix{mix.at("uniform").get<double>(),
                          mix.at("clustered").get<double>(),
                          mix.at("sliding_window").get<double>(),
                          mix.at("power_law").get<double>()};
    spec.clusters = p.value("clusters", spec.clusters);
    spec.cluster_bias = p.value("cluster_bias", spec.cluster_bias);
    spec.window = p.value("window", spec.window);
    spec.zipf_exponent = p.value("zipf_exponent", spec.zipf_exponent);
    return gen_random(spec, e.name);
  }
  if (e.generator == "qft") {
    c = gen_qft(p.at("qubits").get<std::size_t>(),
                p.value("gates_per_pair", std::size_t{2}));
  } else if (e.generator == "qaoa") {
    c = gen_qaoa(p.at("qubits").get<std::size_t>(),
                 p.at("layers").get<std::size_t>(),
                 p.at("edge_density").get<double>(), e.seed);
  } else if (e.generator == "supremacy") {
    c = gen_supremacy_like(p.at("qubits").get<std::size_t>(),
                           p.at("depth").get<std::size_t>(), e.seed);
  } else if (e.generator == "sqrt") {
    c = gen_sqrt_like(p.at("qubits").get<std::size_t>(),
                      p.at("gates").get<std::size_t>(), e.seed);
  } else {
    throw std::invalid_argument("unknown generator " + e.generator);
  }
  return Circuit(e.name, c.num_qubits(), c.gates());
}

std::vector<Circuit> generate_suite(const SuiteManifest& m) {
  std::vector<Circuit> out;
  out.reserve(m.circuits.size());
  for (const auto& e : m.circuits) {
    out.push_back(generate(e));
  }
  return out;
}

void write_suite(const SuiteManifest& m, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& e : m.circuits) {
    std::ofstream out(dir / (e.name + ".ms"), std::ios::binary);
    out << serialize_ms_text(generate(e));
    if (!out) {
      throw std::runtime_error("failed writing " + (dir / e.name).string());
    }
  }
  std::ofstream out(dir / "manifest.json", std::ios::binary);
  out << m.to_json().dump(2) << "\n";
  if (!out) {
    throw std::runtime_error("failed writing manifest.json");
  }
}

SuiteManifest read_manifest(const std::filesystem::path& dir) {
  std::ifstream in(dir / "manifest.json", std::ios::binary);
  if (!in) {
    throw std::runtime_error("no manifest.json in " + dir.string());
  }
  return SuiteManifest::from_json(nlohmann::ordered_json::parse(in));
}

std::vector<Circuit> load_suite(const std::filesystem::path& dir) {
  const SuiteManifest m = read_manifest(dir);
  std::vector<Circuit> out;
  for (const auto& e : m.circuits) {
    out.push_back(load_circuit((dir / (e.name + ".ms")).string()));
  }
  return out;
}

} // namespace ionmap
