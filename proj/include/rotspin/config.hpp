#pragma once

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rotspin/model.hpp"

namespace rotspin {

// Full problem statement for one run: intrinsic parameters plus the
// chemical-potential drives that enter only the linear response.
struct RunConfig {
  ParamSet par;
  Vec3 grad_mu{};
  double dmu_dt = 0.0;
};

namespace config_detail {

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace config_detail

// Keys accepted in config files and sweep axes; mu_over_m is an alternative
// spelling of mu and is resolved against m at apply time.
inline const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "m",       "q",       "hbar",     "mu",        "mu_over_m", "tau",
      "T",       "B_x",     "B_y",      "B_z",       "Omega_x",   "Omega_y",
      "Omega_z", "E_x",     "E_y",      "E_z",       "x_x",       "x_y",
      "x_z",     "R",       "branch",   "grad_mu_x", "grad_mu_y", "grad_mu_z",
      "dmu_dt"};
  return keys;
}

// Sets one key on the config; returns false for unknown keys so callers can
// format their own error.
inline bool apply_config_key(RunConfig& cfg, const std::string& key, double v) {
  ParamSet& p = cfg.par;
  if (key == "m") p.m = v;
  else if (key == "q") p.q = v;
  else if (key == "hbar") p.hbar = v;
  else if (key == "mu") p.mu = v;
  else if (key == "mu_over_m") p.mu = v * p.m;
  else if (key == "tau") p.tau = v;
  else if (key == "T") p.T = v;
  else if (key == "B_x") p.B[0] = v;
  else if (key == "B_y") p.B[1] = v;
  else if (key == "B_z") p.B[2] = v;
  else if (key == "Omega_x") p.Omega[0] = v;
  else if (key == "Omega_y") p.Omega[1] = v;
  else if (key == "Omega_z") p.Omega[2] = v;
  else if (key == "E_x") p.Efield[0] = v;
  else if (key == "E_y") p.Efield[1] = v;
  else if (key == "E_z") p.Efield[2] = v;
  else if (key == "x_x") p.x[0] = v;
  else if (key == "x_y") p.x[1] = v;
  else if (key == "x_z") p.x[2] = v;
  else if (key == "R") p.R = v;
  else if (key == "branch") {
    if (v != 1.0 && v != -1.0)
      throw std::invalid_argument("config: branch must be 1 or -1");
    p.branch = static_cast<int>(v);
  } else if (key == "grad_mu_x") cfg.grad_mu[0] = v;
  else if (key == "grad_mu_y") cfg.grad_mu[1] = v;
  else if (key == "grad_mu_z") cfg.grad_mu[2] = v;
  else if (key == "dmu_dt") cfg.dmu_dt = v;
  else return false;
  return true;
}

// Parses "key = value" lines; '#' starts a comment, blank lines are skipped.
inline std::map<std::string, double> parse_key_values(std::istream& in) {
  std::map<std::string, double> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = config_detail::trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value, got '" + body + "'");
    const std::string key = config_detail::trim(body.substr(0, eq));
    const std::string val = config_detail::trim(body.substr(eq + 1));
    if (key.empty() || val.empty())
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": empty key or value");
    std::size_t used = 0;
    double num = 0.0;
    try {
      num = std::stod(val, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != val.size())
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": '" + val + "' is not a number");
    if (kv.count(key))
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": duplicate key '" + key + "'");
    kv[key] = num;
  }
  return kv;
}

// Builds a RunConfig from parsed pairs. Scale-setting keys go first so that
// mu_over_m always sees the configured mass.
inline RunConfig make_run_config(const std::map<std::string, double>& kv) {
  if (kv.count("mu") && kv.count("mu_over_m"))
    throw std::invalid_argument("config: give either mu or mu_over_m, not both");
  RunConfig cfg;
  for (const char* k : {"m", "q", "hbar"}) {
    const auto it = kv.find(k);
    if (it != kv.end()) apply_config_key(cfg, k, it->second);
  }
  for (const auto& [key, value] : kv) {
    if (key == "m" || key == "q" || key == "hbar") continue;
    if (!apply_config_key(cfg, key, value)) {
      std::string msg = "config: unknown key '" + key + "'; valid keys:";
      for (const auto& k : config_keys()) msg += " " + k;
      throw std::invalid_argument(msg);
    }
  }
  cfg.par.validate();
  return cfg;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
  auto kv = parse_key_values(in);
  return make_run_config(kv);
}

}  // namespace rotspin
