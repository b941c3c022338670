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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sunvqe/commands.hpp"
#include "sunvqe/config.hpp"

namespace {

struct Common {
  std::string config_path;
  std::string out = "-";
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> shots;
  int threads = 0;
};

sunvqe::RunConfig load(const Common& c) {
  sunvqe::RunConfig cfg = c.config_path.empty() ? sunvqe::parse_config("{}") : sunvqe::load_config(c.config_path);
  if (c.seed) {
    cfg.seeds = {*c.seed};
    cfg.vqe.seed = *c.seed;
  }
  if (c.shots) {
    if (*c.shots < 1) throw sunvqe::ConfigError("--shots: must be >= 1");
    cfg.vqe.shots = *c.shots;
  }
  int threads = c.threads;
  if (threads == 0)
    if (const char* env = std::getenv("SUNVQE_THREADS")) threads = std::atoi(env);
  if (threads < 0) throw sunvqe::ConfigError("--threads: must be >= 1");
  cfg.vqe.threads = threads > 0 ? threads : 1;
  return cfg;
}

template <typename F>
int with_output(const std::string& path, F&& body) {
  if (path == "-") return body(std::cout);
  if (const auto parent = std::filesystem::path(path).parent_path(); !parent.empty())
    std::filesystem::create_directories(parent);
  std::ofstream out(path);
  if (!out) throw sunvqe::ConfigError("--out: cannot write " + path);
  return body(out);
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("-c,--config", c.config_path, "JSON configuration file (defaults when omitted)");
  sub->add_option("-o,--out", c.out, "output file, '-' for stdout");
  sub->add_option("--seed", c.seed, "override the configured master seed(s)");
  sub->add_option("--threads", c.threads, "worker threads (default: $SUNVQE_THREADS or 1)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sunvqe: VQE study of SU(N) fermions on a flux-threaded ring"};
  app.require_subcommand(1);
  Common common;
  std::vector<std::string> parameter_files;
  bool no_params = false;

  auto* map = app.add_subcommand("map", "write the qubit Hamiltonian");
  auto* ed = app.add_subcommand("ed", "exact diagonalization over the flux grid (CSV)");
  auto* vqe = app.add_subcommand("vqe", "VQE flux sweep (CSV and parameter files)");
  auto* sample = app.add_subcommand("sample", "re-evaluate saved parameters with shots (CSV)");
  auto* counts = app.add_subcommand("counts", "ansatz complexity report");
  auto* defaults = app.add_subcommand("defaults", "print the default configuration");
  for (auto* sub : {map, ed, vqe, sample, counts}) add_common(sub, common);
  vqe->add_flag("--no-params", no_params, "do not write parameter files");
  sample->add_option("--shots", common.shots, "shots per measurement group");
  sample->add_option("params", parameter_files, "parameter files written by 'vqe'")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : sunvqe::kExitConfig;
  }

  try {
    if (defaults->parsed()) return sunvqe::cmd_defaults(std::cout);
    const sunvqe::RunConfig cfg = load(common);
    if (map->parsed()) return with_output(common.out, [&](std::ostream& o) { return sunvqe::cmd_map(cfg, o); });
    if (ed->parsed()) return with_output(common.out, [&](std::ostream& o) { return sunvqe::cmd_ed(cfg, o); });
    if (vqe->parsed())
      return with_output(common.out, [&](std::ostream& o) { return sunvqe::cmd_vqe(cfg, o, !no_params, std::cerr); });
    if (sample->parsed())
      return with_output(common.out, [&](std::ostream& o) { return sunvqe::cmd_sample(cfg, parameter_files, o); });
    if (counts->parsed()) return with_output(common.out, [&](std::ostream& o) { return sunvqe::cmd_counts(cfg, o); });
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return sunvqe::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return sunvqe::kExitNonConvergence;
  }
  return sunvqe::kExitOk;
}
