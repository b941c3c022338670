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
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "sunvqe/config.hpp"

namespace sunvqe {

/// Process exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitConfig = 1, kExitNonConvergence = 2 };

/// 17 significant digits, enough to reparse the exact double.
std::string format_double(double x);

struct ParameterFile {
  double phi = 0.0;
  int layers = 0;
  std::uint64_t seed = 0;
  std::vector<double> values;
};

/// `# key value` header lines, then one `index value` line per slot.
void write_parameter_file(const std::string& path, const ParameterFile& file);
ParameterFile read_parameter_file(const std::string& path);

struct CsvTable {
  std::map<std::string, std::string> metadata;  // from `# key value` lines
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const;
  double number(std::size_t row, const std::string& name) const;
};

CsvTable parse_csv(const std::string& text);

/// Serialized qubit Hamiltonian at model.phi.
int cmd_map(const RunConfig& config, std::ostream& out);
/// phi, energy_ed, current_ed, entropy_ed, degenerate over the sweep grid.
int cmd_ed(const RunConfig& config, std::ostream& out);
/// One sweep per configured seed; writes parameter files into output.directory
/// when `write_parameters` is set. Returns kExitNonConvergence if any point is flagged.
int cmd_vqe(const RunConfig& config, std::ostream& out, bool write_parameters, std::ostream& log);
/// Re-evaluates saved parameters with vqe.shots shots per group, once per seed.
int cmd_sample(const RunConfig& config, const std::vector<std::string>& parameter_files, std::ostream& out);
/// Closed-form complexity next to the counts read off the constructed circuit.
int cmd_counts(const RunConfig& config, std::ostream& out);
int cmd_defaults(std::ostream& out);

}  // namespace sunvqe
