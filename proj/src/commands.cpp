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

#include "sunvqe/commands.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "sunvqe/ansatz.hpp"
#include "sunvqe/fermion_ed.hpp"
#include "sunvqe/jw.hpp"
#include "sunvqe/rng.hpp"
#include "sunvqe/vqe.hpp"

namespace sunvqe {

namespace {

void write_metadata(std::ostream& out, const std::string& command, const RunConfig& config, std::uint64_t seed) {
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016" PRIx64, config_hash(config));
  out << "# command " << command << "\n# config_hash " << hash << "\n# seed " << seed << "\n";
}

double entropy_scale(const RunConfig& config) { return config.output.log_base == "2" ? 1.0 / std::numbers::ln2 : 1.0; }

std::vector<int> entropy_cut(const RunConfig& config) {
  return config.output.entropy_cut.empty() ? half_chain(config.model.qubits()) : config.output.entropy_cut;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_parameter_file(const std::string& path, const ParameterFile& file) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write parameter file " + path);
  out << "# phi " << format_double(file.phi) << "\n# layers " << file.layers << "\n# seed " << file.seed << "\n";
  for (std::size_t k = 0; k < file.values.size(); ++k) out << k << ' ' << format_double(file.values[k]) << '\n';
}

ParameterFile read_parameter_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("parameter file: cannot open " + path);
  ParameterFile file;
  bool have_phi = false, have_layers = false;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    if (line[0] == '#') {
      std::string hash, key;
      ss >> hash >> key;
      if (key == "phi") have_phi = static_cast<bool>(ss >> file.phi);
      else if (key == "layers") have_layers = static_cast<bool>(ss >> file.layers);
      else if (key == "seed") ss >> file.seed;
      continue;
    }
    std::size_t index;
    double value;
    if (!(ss >> index >> value))
      throw ConfigError("parameter file " + path + ":" + std::to_string(lineno) + ": expected 'index value'");
    if (index != file.values.size())
      throw ConfigError("parameter file " + path + ":" + std::to_string(lineno) + ": indices must be consecutive");
    file.values.push_back(value);
  }
  if (!have_phi || !have_layers) throw ConfigError("parameter file " + path + ": missing '# phi' or '# layers' header");
  return file;
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t k = 0; k < header.size(); ++k)
    if (header[k] == name) return k;
  throw std::out_of_range("csv: no column " + name);
}

double CsvTable::number(std::size_t row, const std::string& name) const {
  return std::stod(rows.at(row).at(column(name)));
}

CsvTable parse_csv(const std::string& text) {
  CsvTable t;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream ss(line.substr(1));
      std::string key, value;
      ss >> key;
      std::getline(ss >> std::ws, value);
      t.metadata[key] = value;
      continue;
    }
    if (t.header.empty()) t.header = split(line, ',');
    else t.rows.push_back(split(line, ','));
  }
  return t;
}

int cmd_map(const RunConfig& config, std::ostream& out) {
  out << serialize(build_qubit_hamiltonian(config.model, config.sector));
  return kExitOk;
}

int cmd_ed(const RunConfig& config, std::ostream& out) {
  const double scale = entropy_scale(config);
  const std::vector<int> cut = entropy_cut(config);
  write_metadata(out, "ed", config, config.vqe.seed);
  out << "phi,energy_ed,current_ed,entropy_ed,degenerate\n";
  for (double phi : config.sweep.phi) {
    const EdPoint p = solve_ed_point(config.model.with_phi(phi), config.sector, cut);
    out << format_double(phi) << ',' << format_double(p.energy) << ',' << format_double(p.current) << ','
        << format_double(p.entropy * scale) << ',' << (p.degenerate ? 1 : 0) << '\n';
  }
  return kExitOk;
}

int cmd_vqe(const RunConfig& config, std::ostream& out, bool write_parameters, std::ostream& log) {
  const double scale = entropy_scale(config);
  const std::vector<int> cut = entropy_cut(config);
  if (write_parameters) std::filesystem::create_directories(config.output.directory);
  write_metadata(out, "vqe", config, config.seeds.front());
  out << "phi,energy_vqe,energy_ed,current_vqe,current_ed,entropy_vqe,entropy_ed,layers,seed,evals,converged\n";
  bool all_converged = true;
  for (std::uint64_t seed : config.seeds) {
    VqeConfig vc = config.vqe;
    vc.seed = seed;
    std::size_t index = 0;
    const SweepResult result =
        sweep_flux(config.model, config.sector, config.sweep.phi, vc, cut, config.occupation_word(),
                   [&](const SweepRecord& r) {
                     log << "seed " << seed << " phi " << format_double(r.phi) << " E " << format_double(r.energy_vqe)
                         << " E_ed " << format_double(r.energy_ed) << (r.converged ? "" : " (not converged)") << '\n';
                     if (write_parameters) {
                       char name[64];
                       std::snprintf(name, sizeof name, "_seed%" PRIu64 "_phi%03zu.params", seed, index);
                       write_parameter_file(
                           (std::filesystem::path(config.output.directory) / (config.output.prefix + name)).string(),
                           {r.phi, vc.layers, seed, r.params});
                     }
                     ++index;
                   });
    for (const SweepRecord& r : result.records) {
      out << format_double(r.phi) << ',' << format_double(r.energy_vqe) << ',' << format_double(r.energy_ed) << ','
          << format_double(r.current_vqe) << ',' << format_double(r.current_ed) << ','
          << format_double(r.entropy_vqe * scale) << ',' << format_double(r.entropy_ed * scale) << ',' << vc.layers
          << ',' << seed << ',' << r.evaluations << ',' << (r.converged ? 1 : 0) << '\n';
    }
    all_converged = all_converged && result.all_converged();
  }
  return all_converged ? kExitOk : kExitNonConvergence;
}

int cmd_sample(const RunConfig& config, const std::vector<std::string>& parameter_files, std::ostream& out) {
  if (config.vqe.shots < 1) throw ConfigError("vqe.shots: must be >= 1");
  if (parameter_files.empty()) throw ConfigError("sample: no parameter files given");
  std::vector<ParameterFile> files;
  for (const auto& path : parameter_files) files.push_back(read_parameter_file(path));
  write_metadata(out, "sample", config, config.seeds.front());
  out << "phi,mean,stderr,shots,exact,seed\n";
  for (std::size_t f = 0; f < files.size(); ++f) {
    const ParameterFile& pf = files[f];
    const VqeProblem problem(config.model.with_phi(pf.phi), config.sector, pf.layers, {}, config.occupation_word());
    if (static_cast<int>(pf.values.size()) != problem.parameter_count())
      throw ConfigError("parameter file " + parameter_files[f] + ": expected " +
                        std::to_string(problem.parameter_count()) + " values");
    const double exact = problem.energy(pf.values);
    for (std::uint64_t seed : config.seeds) {
      const std::uint64_t stream = Rng(seed).split("sample").split(static_cast<std::uint64_t>(f)).seed();
      const ShotEstimate est = problem.sampled_energy(pf.values, config.vqe.shots, stream);
      out << format_double(pf.phi) << ',' << format_double(est.mean) << ',' << format_double(est.stderr) << ','
          << config.vqe.shots << ',' << format_double(exact) << ',' << seed << '\n';
    }
  }
  return kExitOk;
}

int cmd_counts(const RunConfig& config, std::ostream& out) {
  const int N = config.model.N, L = config.model.L, layers = config.vqe.layers;
  const ComplexityReport r = complexity_report(N, L, layers, config.sector.particles());
  const CircuitCounts one = count_gates(build_ansatz({L, config.sector, 1, default_occupation(L, config.sector)}));
  const CircuitCounts all = count_gates(build_ansatz(make_ansatz_spec(config.model, config.sector, layers)));
  struct Row {
    const char* name;
    long long formula, counted;
  };
  const Row rows[] = {
      {"cnot_per_layer", r.cnot_per_layer, one.cnot},
      {"depth_per_layer", r.depth_per_layer, one.cnot_depth},
      {"params_per_layer", r.params_per_layer, one.parameters - config.sector.particles()},
      {"cnot_total", r.cnot_total, all.cnot},
      {"parameter_total", r.parameter_total, all.parameters},
      {"measurement_cnot_depth", r.measurement_cnot_depth, r.measurement_cnot_depth},
  };
  out << "N=" << N << " L=" << L << " layers=" << layers << " particles=" << config.sector.particles() << '\n';
  out << std::left << std::setw(24) << "quantity" << std::right << std::setw(10) << "formula" << std::setw(10)
      << "counted" << '\n';
  for (const Row& row : rows)
    out << std::left << std::setw(24) << row.name << std::right << std::setw(10) << row.formula << std::setw(10)
        << row.counted << '\n';
  out << "\nquantity,formula,counted\n";
  for (const Row& row : rows) out << row.name << ',' << row.formula << ',' << row.counted << '\n';
  return kExitOk;
}

int cmd_defaults(std::ostream& out) {
  out << to_json_text(default_config()) << '\n';
  return kExitOk;
}

}  // namespace sunvqe
