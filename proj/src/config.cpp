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

#include "sunvqe/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace sunvqe {

namespace {

using nlohmann::json;

constexpr std::int64_t kDefaultQuasiNewtonBudget = 200000;
constexpr std::int64_t kDefaultNftBudget = 65536;

void check_keys(const json& block, const std::string& name, const std::set<std::string>& allowed) {
  if (!block.is_object()) throw ConfigError(name + ": expected an object");
  for (const auto& [key, value] : block.items())
    if (!allowed.count(key)) throw ConfigError(name + "." + key + ": unknown key");
}

template <typename T>
T get(const json& block, const std::string& block_name, const std::string& key, T fallback) {
  if (!block.contains(key) || block.at(key).is_null()) return fallback;
  try {
    return block.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(block_name + "." + key + ": wrong type");
  }
}

// Keeps the message field-prefixed while turning validation failures into ConfigError.
template <typename F>
void revalidate(F&& check, const std::string& block = "") {
  try {
    check();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    const std::string what = e.what();
    if (block.empty() || what.starts_with(block + ".")) throw ConfigError(what);
    throw ConfigError(block + "." + what);
  }
}

}  // namespace

std::uint64_t RunConfig::occupation_word() const {
  if (occupation.empty()) return 0;
  std::uint64_t w = 0;
  for (std::size_t s = 0; s < occupation.size(); ++s)
    for (int i : occupation[s]) w |= std::uint64_t{1} << (i + static_cast<int>(s) * model.L);
  return w;
}

RunConfig default_config() {
  RunConfig c;
  c.sector = SpinSector::one_per_colour(c.model.N);
  c.sweep.phi = default_flux_grid(21);
  c.vqe.max_evaluations = kDefaultQuasiNewtonBudget;
  return c;
}

RunConfig parse_config(std::string_view text) {
  json root;
  try {
    root = json::parse(text, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (root.is_null()) root = json::object();
  check_keys(root, "config", {"model", "sector", "vqe", "sweep", "output"});
  RunConfig c = default_config();

  const json model = root.value("model", json::object());
  check_keys(model, "model", {"L", "N", "t", "U", "V", "phi"});
  c.model.L = get(model, "model", "L", c.model.L);
  c.model.N = get(model, "model", "N", c.model.N);
  c.model.t = get(model, "model", "t", c.model.t);
  c.model.U = get(model, "model", "U", c.model.U);
  c.model.V = get(model, "model", "V", c.model.V);
  c.model.phi = get(model, "model", "phi", c.model.phi);

  const json sector = root.value("sector", json::object());
  check_keys(sector, "sector", {"counts", "occupation"});
  c.sector.counts = get(sector, "sector", "counts", SpinSector::one_per_colour(c.model.N).counts);
  c.occupation = get(sector, "sector", "occupation", std::vector<std::vector<int>>{});

  revalidate([&] { validate(c.model); }, "model");
  revalidate([&] { validate(c.model, c.sector); }, "sector");
  if (!c.occupation.empty()) {
    if (c.occupation.size() != c.sector.counts.size())
      throw ConfigError("sector.occupation: one site list per colour required");
    for (const auto& sites : c.occupation)
      for (int i : sites)
        if (i < 0 || i >= c.model.L) throw ConfigError("sector.occupation: site index out of range");
    if (!hamming_check(c.occupation_word(), c.model.L, c.sector))
      throw ConfigError("sector.occupation: per-colour site counts must match sector.counts");
  }

  const json vqe = root.value("vqe", json::object());
  check_keys(vqe, "vqe",
             {"layers", "optimizer", "mode", "shots", "seeds", "starts", "budget", "tolerance", "gradient", "fd_step",
              "nft_fit"});
  revalidate([&] {
    c.vqe.layers = get(vqe, "vqe", "layers", c.vqe.layers);
    c.vqe.optimizer = parse_optimizer(get(vqe, "vqe", "optimizer", to_string(c.vqe.optimizer)));
    c.vqe.mode = parse_cost_mode(get(vqe, "vqe", "mode", to_string(c.vqe.mode)));
    c.vqe.shots = get(vqe, "vqe", "shots", c.vqe.shots);
    c.vqe.starts = get(vqe, "vqe", "starts", c.vqe.starts);
    c.vqe.max_evaluations = get(vqe, "vqe", "budget",
                                c.vqe.optimizer == OptimizerKind::kNft ? kDefaultNftBudget : kDefaultQuasiNewtonBudget);
    c.vqe.tolerance = get(vqe, "vqe", "tolerance", c.vqe.tolerance);
    c.vqe.gradient = parse_gradient(get(vqe, "vqe", "gradient", to_string(c.vqe.gradient)));
    c.vqe.fd_step = get(vqe, "vqe", "fd_step", c.vqe.fd_step);
    c.vqe.nft_fit = parse_nft_fit(get(vqe, "vqe", "nft_fit", to_string(c.vqe.nft_fit)));
    c.seeds = get(vqe, "vqe", "seeds", c.seeds);
    if (c.seeds.empty()) throw ConfigError("vqe.seeds: at least one seed required");
    if (c.vqe.shots < 1) throw ConfigError("vqe.shots: must be >= 1");
    c.vqe.seed = c.seeds.front();
    validate(c.vqe);
  });

  const json sweep = root.value("sweep", json::object());
  check_keys(sweep, "sweep", {"phi", "points", "mirror", "double_budget_at_half"});
  if (sweep.contains("phi") && sweep.contains("points")) throw ConfigError("sweep: give either phi or points");
  if (sweep.contains("points")) {
    const int points = get(sweep, "sweep", "points", 21);
    if (points < 1) throw ConfigError("sweep.points: must be >= 1");
    c.sweep.phi = default_flux_grid(points);
  }
  c.sweep.phi = get(sweep, "sweep", "phi", c.sweep.phi);
  c.sweep.mirror = get(sweep, "sweep", "mirror", c.sweep.mirror);
  c.sweep.double_budget_at_half = get(sweep, "sweep", "double_budget_at_half", c.sweep.double_budget_at_half);
  if (c.sweep.phi.empty()) throw ConfigError("sweep.phi: grid is empty");
  for (std::size_t k = 0; k < c.sweep.phi.size(); ++k) {
    if (!(c.sweep.phi[k] >= 0.0 && c.sweep.phi[k] < 1.0)) throw ConfigError("sweep.phi: values must lie in [0, 1)");
    if (k > 0 && !(c.sweep.phi[k] > c.sweep.phi[k - 1]))
      throw ConfigError("sweep.phi: grid must be strictly increasing");
  }
  c.vqe.mirror = c.sweep.mirror;
  c.vqe.double_budget_at_half = c.sweep.double_budget_at_half;

  const json output = root.value("output", json::object());
  check_keys(output, "output", {"directory", "prefix", "entropy_cut", "log_base"});
  c.output.directory = get(output, "output", "directory", c.output.directory);
  c.output.prefix = get(output, "output", "prefix", c.output.prefix);
  c.output.entropy_cut = get(output, "output", "entropy_cut", c.output.entropy_cut);
  c.output.log_base = get(output, "output", "log_base", c.output.log_base);
  if (c.output.log_base != "e" && c.output.log_base != "2") throw ConfigError("output.log_base: expected \"e\" or \"2\"");
  std::set<int> seen;
  for (int q : c.output.entropy_cut) {
    if (q < 0 || q >= c.model.qubits()) throw ConfigError("output.entropy_cut: qubit index out of range");
    if (!seen.insert(q).second) throw ConfigError("output.entropy_cut: repeated qubit");
  }
  if (!c.output.entropy_cut.empty() && static_cast<int>(c.output.entropy_cut.size()) >= c.model.qubits())
    throw ConfigError("output.entropy_cut: must be a proper subset");
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string to_json_text(const RunConfig& c) {
  json j;
  j["model"] = {{"L", c.model.L}, {"N", c.model.N}, {"t", c.model.t},
                {"U", c.model.U}, {"V", c.model.V}, {"phi", c.model.phi}};
  j["sector"] = {{"counts", c.sector.counts}, {"occupation", c.occupation}};
  j["vqe"] = {{"layers", c.vqe.layers},
              {"optimizer", to_string(c.vqe.optimizer)},
              {"mode", to_string(c.vqe.mode)},
              {"shots", c.vqe.shots},
              {"seeds", c.seeds},
              {"starts", c.vqe.starts},
              {"budget", c.vqe.max_evaluations},
              {"tolerance", c.vqe.tolerance},
              {"gradient", to_string(c.vqe.gradient)},
              {"fd_step", c.vqe.fd_step},
              {"nft_fit", to_string(c.vqe.nft_fit)}};
  j["sweep"] = {{"phi", c.sweep.phi}, {"mirror", c.sweep.mirror}, {"double_budget_at_half", c.sweep.double_budget_at_half}};
  j["output"] = {{"directory", c.output.directory},
                 {"prefix", c.output.prefix},
                 {"entropy_cut", c.output.entropy_cut},
                 {"log_base", c.output.log_base}};
  return j.dump(2);
}

std::uint64_t config_hash(const RunConfig& c) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char ch : to_json_text(c)) h = (h ^ ch) * 0x100000001B3ull;
  return h;
}

}  // namespace sunvqe
