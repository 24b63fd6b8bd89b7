#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ekss/solver.hpp"

namespace ekss {

// Everything a harness experiment needs. Loaded from an INI file with
// sections [grid], [medium], [solver], [experiment], [data]; command-line
// flags override individual keys afterwards.
struct ExperimentConfig {
  SolverConfig solver;                 // grid, medium, integrator settings
  std::string g_spec = "default";      // default | zero | 15 comma-separated basis coefficients
  std::string perturbation = "gaussian";  // none | gaussian
  double perturbation_amplitude = 0.05;
  double delta = 0.25;
  std::uint64_t seed = 1;
  int seeds = 20;                      // ensemble size
  std::vector<double> eps{0.4, 0.2, 0.1};
  std::vector<double> T_list;          // extra horizons for the KSS trend
  double kappa0 = 1.0;                 // guess used for the lifespan horizon
  double T_budget = 200.0;             // per-run cap on the lifespan horizon
  std::string check = "all";           // inequality id or "all"
  double kss_L = 512.0;                // free-growth run geometry
  double kss_sigma = 24.0;
  double kss_T = 200.0;
  double kss_dt = 1.0;
  double profile_width = 1.0;          // phi(r) = exp(-(r / width)^2)
  std::string psi = "zero";            // zero | derivative (psi = phi'(r) / r)

  void validate() const;
  // Canonical INI dump, one section per key group; the input of the config
  // hash, and loadable again with apply_config_text.
  std::string canonical() const;
};

// Keys that the file may set, for error messages.
const std::vector<std::string>& config_keys();

ExperimentConfig load_config(const std::string& path);
void apply_config_text(ExperimentConfig& cfg, const std::string& ini_text);
// Sets one "section.key" entry from a string.
void set_config_value(ExperimentConfig& cfg, const std::string& key, const std::string& value);

// Resolves g_spec and perturbation into cfg.solver.medium.
void materialize_medium(ExperimentConfig& cfg);

std::vector<double> parse_list(const std::string& s);

}  // namespace ekss
