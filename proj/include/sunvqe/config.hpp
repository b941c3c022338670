// Copyright 2026 The sunvqe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sunvqe/lattice_model.hpp"
#include "sunvqe/vqe.hpp"

namespace sunvqe {

/// Malformed or out-of-range configuration; the message names the field.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SweepSettings {
  std::vector<double> phi;  // strictly increasing, in [0, 1)
  bool mirror = false;
  bool double_budget_at_half = true;
};

struct OutputSettings {
  std::string directory = ".";
  std::string prefix = "sunvqe";
  std::vector<int> entropy_cut;  // empty: first floor(NL/2) qubits
  std::string log_base = "e";    // "e" (nats) or "2" (bits)
};

struct RunConfig {
  HubbardModel model;
  SpinSector sector;
  /// Sites occupied by each colour in the prepared state; empty means the default.
  std::vector<std::vector<int>> occupation;
  VqeConfig vqe;
  std::vector<std::uint64_t> seeds{1};
  SweepSettings sweep;
  OutputSettings output;

  std::uint64_t occupation_word() const;
};

/// Parses the JSON configuration (comments allowed). Missing keys take their
/// defaults, unknown keys are rejected, and every model, sector and vqe
/// invariant is checked. Throws ConfigError.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

RunConfig default_config();
/// Canonical JSON of a configuration; parse_config(to_json_text(c)) reproduces c.
std::string to_json_text(const RunConfig& config);
/// FNV-1a of the canonical JSON text.
std::uint64_t config_hash(const RunConfig& config);

}  // namespace sunvqe
