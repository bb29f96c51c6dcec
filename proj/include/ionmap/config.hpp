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

#include "ionmap/harness.hpp"

#include <stdexcept>
#include <string>

namespace ionmap {

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Applies a TOML-style key/value file onto `cfg`. Recognised sections:
///
///   [topology] traps, capacity, load
///   [fidelity] gamma, tau, A, heat_per_shuttle, n0, shuttle_time
///   [policy]   step_blocks, a_linear, a_exp, policies, baseline
///   [sim]      lookahead
///   [run]      threads, seed
///
/// Unknown sections or keys are errors.
void apply_config_text(const std::string& text, RunConfig& cfg);
void apply_config_file(const std::string& path, RunConfig& cfg);

} // namespace ionmap
