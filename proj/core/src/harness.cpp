#include "ekss/harness.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <mutex>
#include <numeric>
#include <thread>

#include "ekss/errors.hpp"
#include "ekss/random_fields.hpp"
#include "ekss/report_io.hpp"
#include "ekss/spectral.hpp"

namespace ekss {

// ---- identity residual ----

IdentityRun manufactured_identity(const GridSpec& grid, double delta, double T, bool with_h, double cfl) {
  ElasticMedium medium;
  if (with_h) medium.h = ManufacturedSolution::default_perturbation(grid);
  const ManufacturedSolution ms(grid);
  IdentityRun run;
  run.grid = grid;
  const int steps = static_cast<int>(std::ceil(T / (cfl * grid.dx() / medium.c1) - 1e-9));
  run.dt = T / steps;
  run.T = T;
  IdentityAccumulator acc(grid, medium, delta);
  for (int s = 0; s <= steps; ++s) {
    const double t = s * run.dt;
    const VectorField F = ms.forcing(t, medium);
    acc.add(t, ms.u(t), ms.v(t), &F);
  }
  run.report = acc.finish();
  return run;
}

IdentityRun free_identity(const GridSpec& grid, double delta, double T, double cfl) {
  SolverConfig cfg;
  cfg.grid = grid;
  cfg.cfl = cfl;
  cfg.T = T;
  const int steps = static_cast<int>(std::ceil(T / (cfl * grid.dx() / cfg.medium.c1) - 1e-9));
  cfg.dt = T / steps;
  const ManufacturedSolution ms(grid);
  State s0{ms.u(0.0), ms.v(0.0), 0.0};
  IdentityAccumulator acc(grid, cfg.medium, delta);
  simulate(cfg, std::move(s0), nullptr, [&](const State& s, const VectorField*) { acc.add(s.t, s.u, s.v, nullptr); });
  IdentityRun run;
  run.grid = grid;
  run.dt = cfg.dt;
  run.T = T;
  run.report = acc.finish();
  return run;
}

// ---- KSS ----

State gaussian_data(const GridSpec& grid, double sigma) {
  const ScalarField g = gaussian(grid, sigma);
  State s{VectorField(grid), VectorField(grid), 0.0};
  s.u[0] = g;
  s.u[1] = 0.5 * g;
  s.u[2] = (-1.0 / 3.0) * g;
  return s;
}

KssGrowth kss_free_growth(const GridSpec& grid, double sigma, double T, double dt, double delta, double fit_t_min,
                          double fit_t_max) {
  SolverConfig cfg;
  cfg.grid = grid;
  cfg.T = T;
  cfg.dt = dt;
  KssAccumulator acc(grid, PerturbationField{}, delta, KssVariant::Weighted);
  KssGrowth out;
  const RunReport rep = simulate(cfg, gaussian_data(grid, sigma), nullptr,
                                 [&](const State& s, const VectorField*) { acc.add(s.t, s.u, s.v, nullptr); });
  out.records = rep.records;
  out.growth = acc.growth();
  out.terms = acc.result();
  out.fit = fit_log_growth(out.growth, fit_t_min, fit_t_max);
  return out;
}

KssTerms kss_forced_run(const GridSpec& grid, const PerturbationField& h, double delta, std::uint64_t seed, double T) {
  SolverConfig cfg;
  cfg.grid = grid;
  cfg.T = T;
  cfg.mode = SolverMode::Perturbed;
  cfg.medium.h = h;
  const int steps = static_cast<int>(std::ceil(T / (cfg.cfl * grid.dx() / cfg.medium.c1) - 1e-9));
  cfg.dt = T / steps;
  const VectorField shape = random_localized_vector(grid, seed + 100000, 1.0, 1.0);
  const Forcing F = [&shape](double t, VectorField& out) { out.axpy(std::cos(t), shape); };
  State s0{random_localized_vector(grid, seed, 1.0, 1.0), VectorField(grid), 0.0};
  KssAccumulator acc(grid, h, delta, KssVariant::Weighted);
  const RunReport rep =
      simulate(cfg, std::move(s0), &F, [&](const State& s, const VectorField* f) { acc.add(s.t, s.u, s.v, f); });
  if (rep.blowup) throw BlowupError("kss: forced run blew up at t = " + num(rep.blowup->t));
  return acc.result();
}

KssEnsemble kss_forced_ensemble(const GridSpec& grid, const PerturbationField& h, double delta,
                                std::uint64_t first_seed, int count, double T) {
  if (count < 2) throw ValidationError("kss ensemble: need at least two seeds");
  KssEnsemble e;
  for (int i = 0; i < count; ++i) {
    const std::uint64_t seed = first_seed + static_cast<std::uint64_t>(i);
    const KssTerms k = kss_forced_run(grid, h, delta, seed, T);
    e.seeds.push_back(seed);
    e.terms.push_back(k);
    if (!std::isfinite(k.ratio) || k.degenerate) e.all_finite = false;
    e.max_ratio = std::max(e.max_ratio, k.ratio);
    (i < count / 2 ? e.max_first_half : e.max_second_half) =
        std::max(i < count / 2 ? e.max_first_half : e.max_second_half, k.ratio);
  }
  const double hi = std::max(e.max_first_half, e.max_second_half);
  e.batch_spread = hi > 0.0 ? std::abs(e.max_first_half - e.max_second_half) / hi : 0.0;
  return e;
}

// ---- Hodge ----

double HodgeCheck::worst() const {
  return std::max({reconstruction, curl_of_cf, div_of_df, parseval_l2, parseval_grad, orthogonality, formula});
}

HodgeCheck hodge_check(const GridSpec& grid, std::uint64_t seed) {
  const VectorField u = random_smooth_vector(grid, seed);
  const HodgePair p = hodge_decompose(u);
  HodgeCheck c;
  c.seed = seed;
  const double un = norm_l2(u);
  const double gn = norm_l2(gradient_tensor(u));
  c.reconstruction = norm_l2(u - p.cf - p.df) / un;
  c.curl_of_cf = norm_l2(curl(p.cf)) / gn;
  c.div_of_df = norm_l2(divergence(p.df)) / gn;
  const double ncf = norm_l2(p.cf), ndf = norm_l2(p.df);
  c.parseval_l2 = std::abs(un * un - ncf * ncf - ndf * ndf) / (un * un);
  const double gcf = norm_l2(gradient_tensor(p.cf)), gdf = norm_l2(gradient_tensor(p.df));
  c.parseval_grad = std::abs(gn * gn - gcf * gcf - gdf * gdf) / (gn * gn);
  c.orthogonality = std::abs(inner(p.cf, p.df)) / (un * un);
  const VectorField via_formula = gradient(divergence(inverse_laplacian(u)));
  c.formula = norm_l2(p.cf - via_formula) / un;
  return c;
}

// ---- lifespan sweep ----

double lifespan_horizon(double eps, double kappa0, double budget) {
  if (eps <= 0.0) return budget;
  const double x = kappa0 / eps;
  if (x > 700.0) return budget;
  return std::min(10.0 * std::exp(x), budget);
}

std::optional<LinearFit> fit_lifespan(const std::vector<SweepRow>& rows) {
  std::vector<double> xs, ys;
  for (const auto& r : rows)
    if (!r.censored && r.eps > 0.0 && r.blowup_time > 0.0) {
      xs.push_back(1.0 / r.eps);
      ys.push_back(std::log(r.blowup_time));
    }
  if (xs.size() < 4) return std::nullopt;
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0) return std::nullopt;
  LinearFit f;
  f.points = xs.size();
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.correlation = syy > 0.0 ? sxy / std::sqrt(sxx * syy) : 0.0;
  return f;
}

State config_radial_data(const ExperimentConfig& cfg, double eps) {
  const double w = cfg.profile_width;
  auto phi = [w](double r) { return std::exp(-(r * r) / (w * w)); };
  std::function<double(double)> psi;
  if (cfg.psi == "derivative") psi = [w](double r) { return -2.0 / (w * w) * std::exp(-(r * r) / (w * w)); };
  return radial_data(phi, psi, eps, cfg.solver.grid);
}

SweepResult sweep_lifespan(const ExperimentConfig& cfg_in, const std::function<void(const SweepRow&)>& on_row) {
  ExperimentConfig cfg = cfg_in;
  cfg.validate();
  for (std::size_t i = 1; i < cfg.eps.size(); ++i)
    if (!(cfg.eps[i] < cfg.eps[i - 1])) throw ValidationError("sweep: eps list must be strictly decreasing");
  materialize_medium(cfg);
  cfg.solver.mode = cfg.solver.mode == SolverMode::Linear ? SolverMode::Linear : SolverMode::Quasilinear;

  std::mutex writer;
  auto run_one = [&](std::size_t i) {
    SweepRow row;
    row.eps = cfg.eps[i];
    row.seed = cfg.seed;
    row.n = cfg.solver.grid.n;
    row.horizon = lifespan_horizon(row.eps, cfg.kappa0, cfg.T_budget);
    SolverConfig sc = cfg.solver;
    sc.T = row.horizon;
    sc.record_every = std::max(1, sc.steps() / 200);
    const RunReport rep = simulate(sc, config_radial_data(cfg, row.eps));
    if (rep.blowup) {
      row.censored = false;
      row.blowup_time = rep.blowup->t;
      row.trigger = rep.blowup->trigger;
    } else {
      row.blowup_time = row.horizon;
    }
    if (on_row) {
      std::lock_guard lock(writer);
      on_row(row);
    }
    return row;
  };

  SweepResult res;
  res.rows.resize(cfg.eps.size());
  const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  std::size_t next = 0;
  while (next < cfg.eps.size()) {
    std::vector<std::pair<std::size_t, std::future<SweepRow>>> batch;
    for (std::size_t w = 0; w < workers && next < cfg.eps.size(); ++w, ++next)
      batch.emplace_back(next, std::async(std::launch::async, run_one, next));
    for (auto& [i, f] : batch) res.rows[i] = f.get();
  }
  res.fit = fit_lifespan(res.rows);
  return res;
}

// ---- plot data ----

void emit_energy_dat(const std::string& path, const std::vector<RunRecord>& records) {
  std::vector<std::vector<double>> rows;
  for (const auto& r : records) rows.push_back({r.t, r.energy, r.elastic_energy, r.sup_grad});
  write_columns(path, {"t", "energy", "elastic_energy", "sup_grad"}, rows);
}

void emit_kss_growth_dat(const std::string& path, const std::vector<KssGrowthPoint>& growth) {
  std::vector<std::vector<double>> rows;
  for (const auto& p : growth) rows.push_back({std::log(2.0 + p.t), p.integral, p.t});
  write_columns(path, {"log(2+t)", "kss_integral", "t"}, rows);
}

void emit_ratio_hist_dat(const std::string& path, const std::vector<double>& ratios, int bins) {
  std::vector<std::vector<double>> rows;
  if (!ratios.empty() && bins > 0) {
    const double hi = *std::max_element(ratios.begin(), ratios.end());
    const double width = hi > 0.0 ? hi / bins : 1.0;
    std::vector<double> counts(static_cast<std::size_t>(bins), 0.0);
    for (double r : ratios) {
      const int b = std::min(bins - 1, static_cast<int>(r / width));
      counts[static_cast<std::size_t>(std::max(0, b))] += 1.0;
    }
    for (int b = 0; b < bins; ++b) rows.push_back({(b + 0.5) * width, counts[static_cast<std::size_t>(b)]});
  }
  write_columns(path, {"ratio_bin_centre", "count"}, rows);
}

void emit_lifespan_dat(const std::string& path, const std::vector<SweepRow>& rows_in) {
  std::vector<SweepRow> rows;
  for (const auto& r : rows_in)
    if (r.eps > 0.0) rows.push_back(r);
  std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) { return a.eps > b.eps; });
  std::vector<std::vector<double>> out;
  for (const auto& r : rows) out.push_back({1.0 / r.eps, std::log(r.blowup_time), r.censored ? 1.0 : 0.0});
  write_columns(path, {"inv_eps", "log_T", "censored"}, out);
}

}  // namespace ekss
