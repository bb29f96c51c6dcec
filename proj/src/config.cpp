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

#include "ionmap/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace ionmap {

namespace {

namespace pt = boost::property_tree;

/// Strips a trailing `# comment` and TOML string quotes.
std::string clean_value(std::string v) {
  bool quoted = false;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == '"') {
      quoted = !quoted;
    } else if (v[i] == '#' && !quoted) {
      v.resize(i);
      break;
    }
  }
  while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) {
    v.pop_back();
  }
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') {
    v = v.substr(1, v.size() - 2);
  }
  return v;
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) {
    throw ConfigError("config: '" + key + "' expects a number, got '" + v +
                      "'");
  }
  return out;
}

std::size_t to_count(const std::string& key, const std::string& v) {
  const double d = to_double(key, v);
  if (d < 0 || d != static_cast<double>(static_cast<std::size_t>(d))) {
    throw ConfigError("config: '" + key +
                      "' expects a non-negative integer, got '" + v + "'");
  }
  return static_cast<std::size_t>(d);
}

std::vector<PolicyKind> to_policies(const std::string& v) {
  std::vector<PolicyKind> out;
  std::string item;
  std::istringstream in(v);
  while (std::getline(in, item, ',')) {
    std::string name;
    for (const char ch : item) {
      if (!std::isspace(static_cast<unsigned char>(ch)) && ch != '"' &&
          ch != '[' && ch != ']') {
        name += ch;
      }
    }
    if (!name.empty()) {
      out.push_back(parse_policy_kind(name));
    }
  }
  return out;
}

} // namespace

void apply_config_text(const std::string& text, RunConfig& cfg) {
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }

  using Setter = std::function<void(const std::string&, const std::string&)>;
  const std::map<std::string, Setter> setters{
      {"topology.traps",
       [&](auto& k, auto& v) { cfg.topology.num_traps = to_count(k, v); }},
      {"topology.capacity",
       [&](auto& k, auto& v) { cfg.topology.trap_capacity = to_count(k, v); }},
      {"topology.load",
       [&](auto& k, auto& v) { cfg.topology.initial_load = to_count(k, v); }},
      {"fidelity.gamma",
       [&](auto& k, auto& v) { cfg.fidelity.gamma = to_double(k, v); }},
      {"fidelity.tau",
       [&](auto& k, auto& v) { cfg.fidelity.tau = to_double(k, v); }},
      {"fidelity.A",
       [&](auto& k, auto& v) { cfg.fidelity.coupling = to_double(k, v); }},
      {"fidelity.heat_per_shuttle",
       [&](auto& k, auto& v) {
         cfg.fidelity.heat_per_shuttle = to_double(k, v);
       }},
      {"fidelity.n0",
       [&](auto& k, auto& v) { cfg.fidelity.initial_energy = to_double(k, v); }},
      {"fidelity.shuttle_time",
       [&](auto& k, auto& v) { cfg.fidelity.shuttle_time = to_double(k, v); }},
      {"policy.step_blocks",
       [&](auto& k, auto& v) { cfg.params.n_blocks = to_count(k, v); }},
      {"policy.a_linear",
       [&](auto& k, auto& v) { cfg.params.a_linear = to_double(k, v); }},
      {"policy.a_exp",
       [&](auto& k, auto& v) { cfg.params.a_exp = to_double(k, v); }},
      {"policy.policies",
       [&](auto&, auto& v) { cfg.policies = to_policies(v); }},
      {"policy.baseline",
       [&](auto&, auto& v) { cfg.baseline = parse_policy_kind(v); }},
      {"sim.lookahead",
       [&](auto& k, auto& v) { cfg.sim.lookahead = to_count(k, v); }},
      {"run.threads",
       [&](auto& k, auto& v) { cfg.threads = to_count(k, v); }},
      {"run.seed", [&](auto& k, auto& v) { cfg.seed = to_count(k, v); }},
  };

  for (const auto& [section, body] : tree) {
    if (body.empty()) {
      throw ConfigError("config: key '" + section +
                        "' must live inside a [section]");
    }
    for (const auto& [key, node] : body) {
      const std::string full = section + "." + key;
      const auto it = setters.find(full);
      if (it == setters.end()) {
        throw ConfigError("config: unknown key '" + full + "'");
      }
      try {
        it->second(full, clean_value(node.get_value<std::string>()));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
      }
    }
  }
}

void apply_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  apply_config_text(buf.str(), cfg);
}

} // namespace ionmap
