#pragma once

// Run configuration: a flat `key = value` text file with `#` comments.
// Lists are comma separated. Unknown keys are errors.
//
//   betas              = 0, 1, 2, 3, 5
//   grid.<name>        = G:v[:d]          moment grid (replaces the defaults)
//   phi.<name>         = 0.7, -1.2, 0.4   test function for grid.<name>
//   commutator.atoms   = 1, 2, 3
//   commutator.cell_mass = 0.5
//   seeds              = 1, 2, ..., 10
//   vectors_per_seed   = 3
//   kmax               = 8
//   truncation.levels  = 5     Fock levels N for relation suites
//   truncation.ladder  = 5     ladder size M for relation suites
//   truncation.ext_levels = 5
//   moment.levels, moment.ladder   override kmax + 1
//   spectral.jmax = 8, gram.nmax = 6
//   marginal.areas = 0.5, 1, 2
//   single_atom.masses = 0.5, 1, 2 ; single_atom.order = 6
//   tol.<suite>        commutator adjoint moment spectral_exact spectral
//                      marginal gram single_atom
//   corpus = builtin | <path>     workers = 0
//   out = <dir>   format = json | csv | both
//   distributions.beta, distributions.marginal, distributions.points

#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "swnlab/crosscheck.hpp"

namespace swnlab {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OutputFormat { Json, Csv, Both };

struct RunConfig {
  CheckSettings checks;
  std::optional<std::string> out;
  OutputFormat format = OutputFormat::Json;
  double dist_beta = 2.0;
  std::optional<double> dist_marginal;
  std::size_t dist_points = 401;
};

namespace config_detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

inline double to_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc() || ptr != end || !std::isfinite(v))
    throw ConfigError(key + ": '" + text + "' is not a number");
  return v;
}

inline std::uint64_t to_uint(const std::string& key, const std::string& text) {
  std::uint64_t v = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc() || ptr != end)
    throw ConfigError(key + ": '" + text + "' is not a non-negative integer");
  return v;
}

inline std::vector<double> doubles(const std::string& key, const std::string& text) {
  std::vector<double> out;
  for (const auto& s : split(text, ',')) out.push_back(to_double(key, s));
  if (out.empty()) throw ConfigError(key + ": empty list");
  return out;
}

inline std::vector<std::uint64_t> uints(const std::string& key, const std::string& text) {
  std::vector<std::uint64_t> out;
  for (const auto& s : split(text, ',')) out.push_back(to_uint(key, s));
  if (out.empty()) throw ConfigError(key + ": empty list");
  return out;
}

inline double positive(const std::string& key, double v) {
  if (!(v > 0.0)) throw ConfigError(key + ": must be > 0");
  return v;
}

inline std::size_t at_least_one(const std::string& key, std::uint64_t v) {
  if (v < 1) throw ConfigError(key + ": must be >= 1");
  return static_cast<std::size_t>(v);
}

}  // namespace config_detail

/// Parses "G:v[:d]" into a grid case (phi filled separately).
inline GridCase parse_grid_spec(const std::string& key, const std::string& text) {
  using namespace config_detail;
  const auto parts = split(text, ':');
  if (parts.size() < 2 || parts.size() > 3) throw ConfigError(key + ": expected G:v or G:v:d, got '" + text + "'");
  GridCase g;
  g.atoms = at_least_one(key, to_uint(key, parts[0]));
  g.cell_mass = positive(key, to_double(key, parts[1]));
  if (parts.size() == 3) g.dim = static_cast<int>(at_least_one(key, to_uint(key, parts[2])));
  return g;
}

inline OutputFormat parse_format(const std::string& text) {
  if (text == "json") return OutputFormat::Json;
  if (text == "csv") return OutputFormat::Csv;
  if (text == "both") return OutputFormat::Both;
  throw ConfigError("format: expected json, csv or both, got '" + text + "'");
}

inline void set_betas(CheckSettings& s, const std::vector<double>& betas) {
  for (double b : betas)
    if (!(b >= 0.0)) throw ConfigError("betas: beta must be >= 0");
  s.betas = betas;
}

/// Parses configuration text on top of `base`. `source` labels diagnostics.
inline RunConfig parse_config(const std::string& text, RunConfig base = {}, const std::string& source = "config") {
  using namespace config_detail;
  RunConfig cfg = std::move(base);
  auto& s = cfg.checks;
  std::vector<std::pair<std::string, GridCase>> grids;
  std::map<std::string, std::vector<double>> phis;
  std::map<std::string, std::size_t> seen;

  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = source + ":" + std::to_string(lineno) + ": ";
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(where + "empty key");
    if (seen.count(key)) throw ConfigError(where + "duplicate key '" + key + "' (first on line " +
                                           std::to_string(seen[key]) + ")");
    seen[key] = lineno;
    try {
      if (key == "betas") set_betas(s, doubles(key, value));
      else if (key.rfind("grid.", 0) == 0 && key.size() > 5) {
        GridCase g = parse_grid_spec(key, value);
        g.name = key.substr(5);
        grids.emplace_back(g.name, g);
      } else if (key.rfind("phi.", 0) == 0 && key.size() > 4) phis[key.substr(4)] = doubles(key, value);
      else if (key == "commutator.atoms") {
        s.commutator_atoms.clear();
        for (auto g : uints(key, value)) s.commutator_atoms.push_back(at_least_one(key, g));
      } else if (key == "commutator.cell_mass") s.commutator_cell_mass = positive(key, to_double(key, value));
      else if (key == "seeds") s.seeds = uints(key, value);
      else if (key == "vectors_per_seed") s.vectors_per_seed = at_least_one(key, to_uint(key, value));
      else if (key == "kmax") s.kmax = static_cast<int>(to_uint(key, value));
      else if (key == "truncation.levels") s.fock_levels = at_least_one(key, to_uint(key, value));
      else if (key == "truncation.ladder") s.ladder = at_least_one(key, to_uint(key, value));
      else if (key == "truncation.ext_levels") s.ext_levels = at_least_one(key, to_uint(key, value));
      else if (key == "moment.levels") s.moment_levels = at_least_one(key, to_uint(key, value));
      else if (key == "moment.ladder") s.moment_ladder = at_least_one(key, to_uint(key, value));
      else if (key == "spectral.jmax") s.spectral_jmax = static_cast<int>(to_uint(key, value));
      else if (key == "gram.nmax") s.gram_nmax = at_least_one(key, to_uint(key, value));
      else if (key == "marginal.areas") {
        s.areas = doubles(key, value);
        for (double a : s.areas) positive(key, a);
      } else if (key == "single_atom.masses") {
        s.single_atom_masses = doubles(key, value);
        for (double a : s.single_atom_masses) positive(key, a);
      } else if (key == "single_atom.order") s.single_atom_order = static_cast<int>(to_uint(key, value));
      else if (key == "tol.commutator") s.tol.commutator = positive(key, to_double(key, value));
      else if (key == "tol.adjoint") s.tol.adjoint = positive(key, to_double(key, value));
      else if (key == "tol.moment") s.tol.moment = positive(key, to_double(key, value));
      else if (key == "tol.spectral_exact") s.tol.spectral_exact = positive(key, to_double(key, value));
      else if (key == "tol.spectral") s.tol.spectral = positive(key, to_double(key, value));
      else if (key == "tol.marginal") s.tol.marginal = positive(key, to_double(key, value));
      else if (key == "tol.gram") s.tol.gram = positive(key, to_double(key, value));
      else if (key == "tol.single_atom") s.tol.single_atom = positive(key, to_double(key, value));
      else if (key == "corpus") {
        if (value.empty()) throw ConfigError(key + ": empty value");
        s.corpus = value;
      } else if (key == "workers") s.workers = static_cast<std::size_t>(to_uint(key, value));
      else if (key == "out") cfg.out = value;
      else if (key == "format") cfg.format = parse_format(value);
      else if (key == "distributions.beta") {
        cfg.dist_beta = to_double(key, value);
        if (cfg.dist_beta < 0.0) throw ConfigError(key + ": beta must be >= 0");
      } else if (key == "distributions.marginal") cfg.dist_marginal = positive(key, to_double(key, value));
      else if (key == "distributions.points") cfg.dist_points = at_least_one(key, to_uint(key, value));
      else throw ConfigError("unknown key '" + key + "'");
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
  }

  if (!grids.empty()) {
    s.moment_grids.clear();
    for (auto& [name, g] : grids) {
      auto it = phis.find(name);
      if (it == phis.end()) throw ConfigError(source + ": grid." + name + " has no phi." + name);
      if (it->second.size() != g.atoms)
        throw ConfigError(source + ": phi." + name + " has " + std::to_string(it->second.size()) +
                          " values but grid." + name + " has " + std::to_string(g.atoms) + " atoms");
      g.phi = it->second;
      phis.erase(it);
      s.moment_grids.push_back(std::move(g));
    }
  }
  if (!phis.empty()) throw ConfigError(source + ": phi." + phis.begin()->first + " has no matching grid");
  return cfg;
}

inline RunConfig load_config(const std::string& path, RunConfig base = {}) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), std::move(base), path);
}

/// Consistency checks that involve several keys.
inline void validate(const RunConfig& cfg) {
  const auto& s = cfg.checks;
  if (s.betas.empty()) throw ConfigError("betas: empty list");
  if (s.seeds.empty()) throw ConfigError("seeds: empty list");
  if (s.kmax > 8) throw ConfigError("kmax: moment order is capped at 8");
  if (s.gram_nmax > 8) throw ConfigError("gram.nmax: at most 8");
  if (s.moment_levels && *s.moment_levels < static_cast<std::size_t>(s.kmax) + 1)
    throw ConfigError("moment.levels: must be >= kmax + 1 = " + std::to_string(s.kmax + 1));
  if (s.moment_ladder && *s.moment_ladder < static_cast<std::size_t>(s.kmax) + 1)
    throw ConfigError("moment.ladder: must be >= kmax + 1 = " + std::to_string(s.kmax + 1));
  if (s.fock_levels < 2 || s.ladder < 3)
    throw ConfigError("truncation: relation suites need levels >= 2 and ladder >= 3");
  if (s.ext_levels < 2) throw ConfigError("truncation.ext_levels: must be >= 2");
  for (const auto& g : s.moment_grids)
    if (g.phi.size() != g.atoms) throw ConfigError("grid " + g.name + ": phi has the wrong length");
}

}  // namespace swnlab
