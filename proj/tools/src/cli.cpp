#include "ekss_tools/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "ekss/config.hpp"
#include "ekss/errors.hpp"
#include "ekss/harness.hpp"
#include "ekss/report_io.hpp"

namespace ekss::cli {

namespace {

struct Flags {
  std::string config;
  std::string out = "ekss_out";
  std::uint64_t seed = 0;
  int n = 0;
  double L = 0.0;
  double delta = 0.0;
  std::string eps;
  double T = 0.0;
  std::string mode;
  int seeds = 0;
  std::string check;
  std::map<std::string, CLI::Option*> opts;

  bool given(const std::string& name) const {
    auto it = opts.find(name);
    return it != opts.end() && it->second->count() > 0;
  }
  bool any_parameter() const {
    for (const auto& [name, opt] : opts)
      if (name != "out" && opt->count() > 0) return true;
    return false;
  }
};

void add_flags(CLI::App* sub, Flags& f) {
  f.opts["config"] = sub->add_option("--config", f.config, "INI configuration file");
  f.opts["out"] = sub->add_option("--out", f.out, "output directory");
  f.opts["seed"] = sub->add_option("--seed", f.seed, "first random seed");
  f.opts["n"] = sub->add_option("--n", f.n, "grid points per axis");
  f.opts["L"] = sub->add_option("--L", f.L, "half box length");
  f.opts["delta"] = sub->add_option("--delta", f.delta, "weight exponent");
  f.opts["eps"] = sub->add_option("--eps", f.eps, "amplitude or comma-separated amplitude list");
  f.opts["T"] = sub->add_option("--T", f.T, "final time");
  f.opts["mode"] = sub->add_option("--mode", f.mode, "linear | perturbed | quasilinear");
  f.opts["seeds"] = sub->add_option("--seeds", f.seeds, "ensemble size");
  f.opts["check"] = sub->add_option("--check", f.check, "inequality id, riesz, or all");
}

ExperimentConfig build_config(const Flags& f) {
  if (!f.any_parameter())
    throw ValidationError("no configuration given: pass --config PATH or parameter flags (--n, --L, --T, ...)");
  ExperimentConfig cfg = f.given("config") ? load_config(f.config) : ExperimentConfig{};
  if (f.given("seed")) cfg.seed = f.seed;
  if (f.given("n")) cfg.solver.grid.n = f.n;
  if (f.given("L")) cfg.solver.grid.L = f.L;
  if (f.given("delta")) cfg.delta = f.delta;
  if (f.given("eps")) cfg.eps = parse_list(f.eps);
  if (f.given("T")) cfg.solver.T = f.T;
  if (f.given("mode")) cfg.solver.mode = solver_mode_from_string(f.mode);
  if (f.given("seeds")) cfg.seeds = f.seeds;
  if (f.given("check")) cfg.check = f.check;
  cfg.validate();
  materialize_medium(cfg);
  return cfg;
}

// Writes summary.txt and echoes it.
void finish(Manifest& m, const std::string& summary, std::ostream& out) {
  {
    std::ofstream s(m.path("summary.txt"));
    s << summary;
  }
  m.add("summary.txt");
  m.write();
  out << summary;
}

std::ofstream open_csv(Manifest& m, const std::string& name, const ExperimentConfig& cfg,
                       const std::vector<std::string>& cols) {
  std::ofstream os(m.path(name));
  if (!os) throw Error("cannot write " + m.path(name).string());
  write_csv_header(os, fnv1a64(cfg.canonical()), cfg.seed, cols);
  m.add(name);
  return os;
}

int cmd_simulate(const ExperimentConfig& cfg, Manifest& m, std::ostream& out) {
  const double eps = cfg.eps.front();
  const State s0 = config_radial_data(cfg, eps);
  SolverConfig sc = cfg.solver;
  sc.track_rotations = true;
  const RunReport rep = simulate(sc, s0);
  {
    auto os = open_csv(m, "run.csv", cfg,
                       {"t", "energy", "elastic_energy", "energy_cf", "energy_df", "sup_grad", "rotation_ratio"});
    for (const auto& r : rep.records)
      os << num(r.t) << "," << num(r.energy) << "," << num(r.elastic_energy) << "," << num(r.energy_cf) << ","
         << num(r.energy_df) << "," << num(r.sup_grad) << "," << num(r.rotation_ratio) << "\n";
  }
  emit_energy_dat(m.path("energy.dat").string(), rep.records);
  m.add("energy.dat");
  std::ostringstream s;
  s << "simulate mode=" << to_string(sc.mode) << " n=" << sc.grid.n << " L=" << num(sc.grid.L)
    << " eps=" << num(eps) << " dt=" << num(rep.dt) << " steps=" << rep.steps_taken << "\n";
  if (rep.blowup)
    s << "blow-up at t=" << num(rep.blowup->t) << " trigger=" << to_string(rep.blowup->trigger) << "\n";
  else
    s << "no blow-up up to T=" << num(sc.T) << "\n";
  if (!rep.records.empty()) {
    const double e0 = rep.records.front().elastic_energy;
    const double e1 = rep.records.back().elastic_energy;
    s << "elastic energy drift=" << num(e0 > 0 ? std::abs(e1 - e0) / e0 : 0.0) << "\n";
  }
  finish(m, s.str(), out);
  return kOk;
}

int cmd_verify_identity(const ExperimentConfig& cfg, Manifest& m, std::ostream& out) {
  const bool with_h = cfg.perturbation != "none";
  const IdentityRun run = manufactured_identity(cfg.solver.grid, cfg.delta, cfg.solver.T, with_h, cfg.solver.cfl);
  const ResidualReport& r = run.report;
  {
    auto os = open_csv(m, "identity.csv", cfg,
                       {"t", "q1", "q2", "q3", "q4", "q5", "boundary", "pairing", "min_q12", "lower_violations"});
    for (const auto& x : r.samples)
      os << num(x.t) << "," << num(x.q1) << "," << num(x.q2) << "," << num(x.q3) << "," << num(x.q4) << ","
         << num(x.q5) << "," << num(x.boundary) << "," << num(x.pairing) << "," << num(x.min_q12) << ","
         << x.lower_violations << "\n";
  }
  constexpr double kBudget = 1e-3;
  const bool ok = r.normalized <= kBudget && r.min_q12 >= 0.0 && r.lower_violations == 0;
  std::ostringstream s;
  s << "verify-identity n=" << run.grid.n << " L=" << num(run.grid.L) << " dt=" << num(run.dt)
    << " T=" << num(run.T) << " h=" << (with_h ? "gaussian" : "none") << "\n"
    << "bulk=" << num(r.bulk) << " boundary=" << num(r.boundary) << " pairing=" << num(r.pairing)
    << " residual=" << num(r.residual) << "\n"
    << "normalized residual " << num(r.normalized) << (r.normalized <= kBudget ? " <= " : " > ") << "1e-3\n"
    << "min(q1+q2)=" << num(r.min_q12) << " lower-bound c=" << num(r.lower_bound_c)
    << " violations=" << r.lower_violations << "\n"
    << "outer energy share=" << num(r.max_outer_fraction) << "\n";
  finish(m, s.str(), out);
  return ok ? kOk : kNumerical;
}

int cmd_verify_kss(const ExperimentConfig& cfg, Manifest& m, std::ostream& out) {
  const GridSpec growth_grid{cfg.solver.grid.n, cfg.kss_L, true};
  const KssGrowth g =
      kss_free_growth(growth_grid, cfg.kss_sigma, cfg.kss_T, cfg.kss_dt, cfg.delta, 1.0, cfg.kss_T);
  emit_kss_growth_dat(m.path("kss_growth.dat").string(), g.growth);
  m.add("kss_growth.dat");

  const KssEnsemble e =
      kss_forced_ensemble(cfg.solver.grid, cfg.solver.medium.h, cfg.delta, cfg.seed, cfg.seeds, cfg.solver.T);
  std::vector<double> ratios;
  {
    auto os = open_csv(m, "kss_ratios.csv", cfg,
                       {"seed", "lhs", "rhs", "ratio", "energy_sup", "kss_grad", "kss_field", "data", "forcing", "dh",
                        "h_inv", "h_log"});
    for (std::size_t i = 0; i < e.terms.size(); ++i) {
      const KssTerms& k = e.terms[i];
      ratios.push_back(k.ratio);
      os << e.seeds[i] << "," << num(k.lhs) << "," << num(k.rhs) << "," << num(k.ratio) << "," << num(k.energy_sup)
         << "," << num(k.kss_grad) << "," << num(k.kss_field) << "," << num(k.data) << "," << num(k.forcing) << ","
         << num(k.dh) << "," << num(k.h_inv) << "," << num(k.h_log) << "\n";
    }
  }
  emit_ratio_hist_dat(m.path("ratio_hist.dat").string(), ratios, 10);
  m.add("ratio_hist.dat");

  const bool ok = g.fit.relative_rms <= 0.10 && e.all_finite && e.batch_spread <= 0.25;
  std::ostringstream s;
  s << "verify-kss delta=" << num(cfg.delta) << "\n"
    << "free growth n=" << growth_grid.n << " L=" << num(growth_grid.L) << " T=" << num(cfg.kss_T)
    << ": integral ~ a log(2+T) + b with a=" << num(g.fit.a) << " b=" << num(g.fit.b)
    << " relative misfit=" << num(g.fit.relative_rms) << "\n"
    << "forced ensemble n=" << cfg.solver.grid.n << " seeds=" << cfg.seeds << ": max ratio=" << num(e.max_ratio)
    << " batch maxima " << num(e.max_first_half) << " / " << num(e.max_second_half)
    << " spread=" << num(e.batch_spread) << "\n";
  finish(m, s.str(), out);
  return ok ? kOk : kNumerical;
}

int cmd_hodge_check(const ExperimentConfig& cfg, Manifest& m, std::ostream& out) {
  double worst = 0.0;
  const int count = cfg.seeds;
  {
    auto os = open_csv(m, "hodge.csv", cfg,
                       {"seed", "reconstruction", "curl_of_cf", "div_of_df", "parseval_l2", "parseval_grad",
                        "orthogonality", "formula"});
    for (int i = 0; i < count; ++i) {
      const HodgeCheck c = hodge_check(cfg.solver.grid, cfg.seed + static_cast<std::uint64_t>(i));
      worst = std::max(worst, c.worst());
      os << c.seed << "," << num(c.reconstruction) << "," << num(c.curl_of_cf) << "," << num(c.div_of_df) << ","
         << num(c.parseval_l2) << "," << num(c.parseval_grad) << "," << num(c.orthogonality) << ","
         << num(c.formula) << "\n";
    }
  }
  std::ostringstream s;
  s << "hodge-check n=" << cfg.solver.grid.n << " seeds=" << count << " first_seed=" << cfg.seed << "\n"
    << "worst relative defect=" << num(worst) << (worst <= 1e-10 ? " <= " : " > ") << "1e-10\n";
  finish(m, s.str(), out);
  return worst <= 1e-10 ? kOk : kNumerical;
}

int cmd_sobolev_check(const ExperimentConfig& cfg, Manifest& m, std::ostream& out) {
  std::vector<InequalityId> ids;
  bool riesz_check = false;
  if (cfg.check == "all") {
    ids = all_inequalities();
    riesz_check = true;
  } else if (cfg.check == "riesz") {
    riesz_check = true;
  } else {
    ids.push_back(inequality_from_string(cfg.check));
  }
  std::ostringstream s;
  s << "sobolev-check n=" << cfg.solver.grid.n << " L=" << num(cfg.solver.grid.L) << " delta=" << num(cfg.delta)
    << " seeds=" << cfg.seeds << "\n";
  bool finite = true;
  std::vector<double> all_ratios;
  {
    auto os = open_csv(m, "ratios.csv", cfg, {"id", "seed", "n", "L", "delta", "lhs", "rhs", "ratio"});
    for (InequalityId id : ids) {
      const EnsembleReport rep = inequality_ensemble(id, cfg.solver.grid, cfg.delta, cfg.seed, cfg.seeds);
      write_ratio_rows(os, rep);
      for (const auto& r : rep.rows) {
        if (!std::isfinite(r.report.ratio)) finite = false;
        all_ratios.push_back(r.report.ratio);
      }
      s << to_string(id) << ": max=" << num(rep.max_ratio) << " median=" << num(rep.median_ratio)
        << " flagged=" << rep.flagged << "\n";
    }
    if (riesz_check) {
      const RieszStats st = weighted_riesz_ensemble(cfg.solver.grid, cfg.delta, cfg.seed, cfg.seeds);
      for (std::size_t i = 0; i < st.ratios.size(); ++i) {
        if (!std::isfinite(st.ratios[i])) finite = false;
        all_ratios.push_back(st.ratios[i]);
        os << "riesz," << st.seeds[i] << "," << cfg.solver.grid.n << "," << num(cfg.solver.grid.L) << ","
           << num(cfg.delta) << ",,," << num(st.ratios[i]) << "\n";
      }
      s << "riesz: max=" << num(st.max) << " mean=" << num(st.mean) << "\n";
    }
  }
  emit_ratio_hist_dat(m.path("ratio_hist.dat").string(), all_ratios, 20);
  m.add("ratio_hist.dat");
  s << (finite ? "all ratios finite\n" : "non-finite ratio encountered\n");
  finish(m, s.str(), out);
  return finite ? kOk : kNumerical;
}

int cmd_sweep(const ExperimentConfig& cfg, Manifest& m, std::ostream& out, std::ostream& err) {
  const SweepResult res = sweep_lifespan(cfg, [&](const SweepRow& r) {
    err << "eps=" << num(r.eps) << (r.censored ? " censored at T=" : " blow-up at t=") << num(r.blowup_time) << "\n";
  });
  {
    auto os = open_csv(m, "lifespan.csv", cfg, {"eps", "blowup_time", "censored", "trigger", "n", "seed", "horizon"});
    for (const auto& r : res.rows)
      os << num(r.eps) << "," << num(r.blowup_time) << "," << (r.censored ? 1 : 0) << "," << to_string(r.trigger)
         << "," << r.n << "," << r.seed << "," << num(r.horizon) << "\n";
  }
  emit_lifespan_dat(m.path("lifespan.dat").string(), res.rows);
  m.add("lifespan.dat");
  std::ostringstream s;
  s << "sweep-lifespan mode=" << to_string(cfg.solver.mode) << " n=" << cfg.solver.grid.n
    << " rows=" << res.rows.size() << "\n";
  int uncensored = 0;
  for (const auto& r : res.rows) uncensored += r.censored ? 0 : 1;
  s << "uncensored rows=" << uncensored << "\n";
  if (res.fit)
    s << "fit log T = " << num(res.fit->slope) << " / eps + " << num(res.fit->intercept)
      << ", correlation=" << num(res.fit->correlation) << "\n";
  else
    s << "fit omitted (fewer than 4 uncensored rows)\n";
  finish(m, s.str(), out);
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"ekss: elastic wave simulator and weighted-estimate verification"};
  app.require_subcommand(1, 1);
  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub subs[] = {{"simulate", "run the solver and record energies"},
                      {"verify-identity", "multiplier identity residual on a manufactured solution"},
                      {"verify-kss", "KSS log growth and forced-run ratio ensemble"},
                      {"hodge-check", "Hodge decomposition checks on random fields"},
                      {"sobolev-check", "weighted inequality ratio ensembles"},
                      {"sweep-lifespan", "blow-up times across amplitudes"}};
  std::map<std::string, Flags> flags;
  std::map<std::string, CLI::App*> apps;
  for (const Sub& s : subs) {
    apps[s.name] = app.add_subcommand(s.name, s.help);
    add_flags(apps[s.name], flags[s.name]);
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  std::string name;
  for (const auto& [n, a] : apps)
    if (a->parsed()) name = n;
  const Flags& f = flags[name];
  try {
    const ExperimentConfig cfg = build_config(f);
    Manifest m(f.out);
    {
      std::ofstream c(m.path("config.ini"));
      c << cfg.canonical();
    }
    m.add("config.ini");
    if (name == "simulate") return cmd_simulate(cfg, m, out);
    if (name == "verify-identity") return cmd_verify_identity(cfg, m, out);
    if (name == "verify-kss") return cmd_verify_kss(cfg, m, out);
    if (name == "hodge-check") return cmd_hodge_check(cfg, m, out);
    if (name == "sobolev-check") return cmd_sobolev_check(cfg, m, out);
    if (name == "sweep-lifespan") return cmd_sweep(cfg, m, out, err);
    return kUsage;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n" << apps[name]->help();
    return kUsage;
  } catch (const BlowupError& e) {
    err << "blow-up: " << e.what() << "\n";
    return kBlowup;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << "\n";
    return kNumerical;
  }
}

}  // namespace ekss::cli
