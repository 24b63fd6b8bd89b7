#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ekss/config.hpp"
#include "ekss/hodge.hpp"
#include "ekss/identity.hpp"
#include "ekss/inequalities.hpp"
#include "ekss/kss.hpp"
#include "ekss/solver.hpp"

namespace ekss {

// ---- identity residual ----

struct IdentityRun {
  GridSpec grid;
  double dt = 0.0;
  double T = 0.0;
  ResidualReport report;
};

// Manufactured solution on [0, T] with dt = cfl * dx / c1, forcing F = L_h u
// evaluated through the operator modules. h is the Gaussian-profiled default
// perturbation when `with_h`.
IdentityRun manufactured_identity(const GridSpec& grid, double delta, double T, bool with_h, double cfl = 0.5);

// Free linear evolution (F = 0, h = 0) from the unforced manufactured data at t = 0.
IdentityRun free_identity(const GridSpec& grid, double delta, double T, double cfl = 0.5);

// ---- KSS ----

// Gaussian vector data exp(-r^2 / (2 sigma^2)) (1, 1/2, -1/3), zero velocity.
State gaussian_data(const GridSpec& grid, double sigma);

struct KssGrowth {
  std::vector<KssGrowthPoint> growth;
  std::vector<RunRecord> records;
  LogFit fit;
  KssTerms terms;
};

// Free linear run from Gaussian data, integrand recorded at every step.
KssGrowth kss_free_growth(const GridSpec& grid, double sigma, double T, double dt, double delta,
                          double fit_t_min, double fit_t_max);

// Forced perturbed run: random localized data (seed) and forcing
// cos(t) * random localized field (seed + 100000), h = `h`.
KssTerms kss_forced_run(const GridSpec& grid, const PerturbationField& h, double delta, std::uint64_t seed, double T);

struct KssEnsemble {
  std::vector<std::uint64_t> seeds;
  std::vector<KssTerms> terms;
  double max_ratio = 0.0;
  double max_first_half = 0.0;
  double max_second_half = 0.0;
  double batch_spread = 0.0;  // |a - b| / max(a, b) for the two half-ensemble maxima
  bool all_finite = true;
};
KssEnsemble kss_forced_ensemble(const GridSpec& grid, const PerturbationField& h, double delta,
                                std::uint64_t first_seed, int count, double T);

// ---- Hodge ----

struct HodgeCheck {
  std::uint64_t seed = 0;
  double reconstruction = 0.0;   // ||u - u_cf - u_df|| / ||u||
  double curl_of_cf = 0.0;       // ||curl u_cf|| / ||grad u||
  double div_of_df = 0.0;        // ||div u_df|| / ||grad u||
  double parseval_l2 = 0.0;      // | ||u||^2 - ||u_cf||^2 - ||u_df||^2 | / ||u||^2
  double parseval_grad = 0.0;    // same for the gradients
  double orthogonality = 0.0;    // |<u_cf, u_df>| / ||u||^2
  double formula = 0.0;          // || u_cf - grad div Lap^{-1} u || / ||u||
  double worst() const;
};
HodgeCheck hodge_check(const GridSpec& grid, std::uint64_t seed);

// ---- lifespan sweep ----

struct SweepRow {
  double eps = 0.0;
  std::uint64_t seed = 0;
  int n = 0;
  double horizon = 0.0;
  double blowup_time = 0.0;  // horizon when censored
  bool censored = true;
  BlowupTrigger trigger = BlowupTrigger::None;
};

struct LinearFit {
  double slope = 0.0;  // kappa-hat for log T against 1/eps
  double intercept = 0.0;
  double correlation = 0.0;
  std::size_t points = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // in input order
  std::optional<LinearFit> fit;
};

// min(10 exp(kappa0 / eps), budget)
double lifespan_horizon(double eps, double kappa0, double budget);

// OLS of log T on 1/eps over uncensored rows, omitted below 4 such rows.
std::optional<LinearFit> fit_lifespan(const std::vector<SweepRow>& rows);

// Requires a strictly decreasing eps list. Runs one radial quasilinear solve
// per eps in a worker pool; `on_row` is invoked under a single lock as rows
// complete.
SweepResult sweep_lifespan(const ExperimentConfig& cfg, const std::function<void(const SweepRow&)>& on_row = {});

// Radial data of the config: phi(r) = exp(-(r / width)^2), psi zero or phi'(r)/r.
State config_radial_data(const ExperimentConfig& cfg, double eps);

// ---- plot data ----

void emit_energy_dat(const std::string& path, const std::vector<RunRecord>& records);
void emit_kss_growth_dat(const std::string& path, const std::vector<KssGrowthPoint>& growth);
void emit_ratio_hist_dat(const std::string& path, const std::vector<double>& ratios, int bins);
// Rows sorted by 1/eps; censored rows are kept with a flag column.
void emit_lifespan_dat(const std::string& path, const std::vector<SweepRow>& rows);

}  // namespace ekss
