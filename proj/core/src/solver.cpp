#include "ekss/solver.hpp"

#include <algorithm>
#include <cmath>

#include "ekss/errors.hpp"
#include "ekss/hodge.hpp"
#include "ekss/spectral.hpp"
#include "ekss/zfields.hpp"

namespace ekss {

std::string to_string(SolverMode m) {
  switch (m) {
    case SolverMode::Linear: return "linear";
    case SolverMode::Perturbed: return "perturbed";
    case SolverMode::Quasilinear: return "quasilinear";
  }
  return "?";
}

SolverMode solver_mode_from_string(const std::string& s) {
  if (s == "linear") return SolverMode::Linear;
  if (s == "perturbed") return SolverMode::Perturbed;
  if (s == "quasilinear") return SolverMode::Quasilinear;
  throw ValidationError("unknown solver mode '" + s + "' (linear, perturbed, quasilinear)");
}

std::string to_string(BlowupTrigger t) {
  switch (t) {
    case BlowupTrigger::None: return "none";
    case BlowupTrigger::NonFinite: return "nonfinite";
    case BlowupTrigger::Gradient: return "gradient";
    case BlowupTrigger::SpectralTail: return "spectral_tail";
  }
  return "?";
}

double SolverConfig::step() const { return dt > 0.0 ? dt : cfl * grid.dx() / medium.c1; }

int SolverConfig::steps() const { return static_cast<int>(std::ceil(T / step() - 1e-9)); }

void SolverConfig::validate() const {
  grid.validate();
  medium.validate();
  if (!(cfl > 0.0 && cfl <= 0.5)) throw ValidationError("solver: cfl must lie in (0, 0.5]");
  if (dt < 0.0) throw ValidationError("solver: dt must be positive");
  if (step() > cfl * grid.dx() / medium.c1 * (1.0 + 1e-12))
    throw ValidationError("solver: dt violates dt <= cfl * dx / c1");
  if (!(T > 0.0)) throw ValidationError("solver: T must be positive");
  if (record_every < 1) throw ValidationError("solver: record_every must be >= 1");
  if (!(blowup_threshold > 0.0)) throw ValidationError("solver: blowup_threshold must be positive");
}

Derivative rhs(const State& s, const SolverConfig& cfg, const Forcing* forcing) {
  // A non-finite stage means the run has blown up; simulate() turns this into
  // a NonFinite event.
  if (!all_finite(s.u) || !all_finite(s.v))
    throw NumericalError("rhs: non-finite state at t = " + std::to_string(s.t));
  const SpectralVectorField U = fft_forward(s.u);
  VectorField dv = fft_inverse(elastic_spatial(U, cfg.medium.c1, cfg.medium.c2));
  if (cfg.mode == SolverMode::Perturbed && !cfg.medium.h.empty()) {
    dv -= apply_H_from_gradient(gradient_tensor(U), cfg.medium.h);
  } else if (cfg.mode == SolverMode::Quasilinear && !cfg.medium.g.is_zero()) {
    dv += apply_N(s.u, s.u, cfg.medium.g, cfg.dealias);
  }
  if (forcing && *forcing) (*forcing)(s.t, dv);
  return {s.v, std::move(dv)};
}

State step_rk4(const State& s, const SolverConfig& cfg, double dt, const Forcing* forcing) {
  auto stage = [&](const State& base, const Derivative& d, double h) {
    State out{base.u, base.v, base.t + h};
    out.u.axpy(h, d.du);
    out.v.axpy(h, d.dv);
    return out;
  };
  const Derivative k1 = rhs(s, cfg, forcing);
  const Derivative k2 = rhs(stage(s, k1, 0.5 * dt), cfg, forcing);
  const Derivative k3 = rhs(stage(s, k2, 0.5 * dt), cfg, forcing);
  const Derivative k4 = rhs(stage(s, k3, dt), cfg, forcing);
  State out{s.u, s.v, s.t + dt};
  const double a = dt / 6.0, b = dt / 3.0;
  out.u.axpy(a, k1.du).axpy(b, k2.du).axpy(b, k3.du).axpy(a, k4.du);
  out.v.axpy(a, k1.dv).axpy(b, k2.dv).axpy(b, k3.dv).axpy(a, k4.dv);
  return out;
}

State step_rk4(const State& s, const SolverConfig& cfg, const Forcing* forcing) {
  return step_rk4(s, cfg, cfg.step(), forcing);
}

State radial_data(const std::function<double(double)>& phi, const std::function<double(double)>& psi, double eps,
                  const GridSpec& grid) {
  grid.validate();
  State s{VectorField(grid), VectorField(grid), 0.0};
  double inner_max = 0.0, outer_max = 0.0;
  for (int k = 0; k < grid.n; ++k)
    for (int j = 0; j < grid.n; ++j)
      for (int i = 0; i < grid.n; ++i) {
        const double x = grid.coord(i), y = grid.coord(j), z = grid.coord(k);
        const double r = std::sqrt(x * x + y * y + z * z);
        const double p = phi(r);
        const double q = psi ? psi(r) : 0.0;
        const double mag = r * std::max(std::abs(p), std::abs(q));
        (r > 0.5 * grid.L ? outer_max : inner_max) = std::max(r > 0.5 * grid.L ? outer_max : inner_max, mag);
        const std::size_t idx = grid.index(i, j, k);
        s.u[0][idx] = eps * x * p;
        s.u[1][idx] = eps * y * p;
        s.u[2][idx] = eps * z * p;
        s.v[0][idx] = eps * x * q;
        s.v[1][idx] = eps * y * q;
        s.v[2][idx] = eps * z * q;
      }
  if (outer_max > 1e-8 * std::max(inner_max, outer_max))
    throw ValidationError("radial_data: profile is not supported in r <= L/2");
  return s;
}

State radial_data(double eps, const GridSpec& grid) {
  return radial_data([](double r) { return std::exp(-r * r); }, nullptr, eps, grid);
}

namespace {

// max over the grid of the pointwise Frobenius norm |grad u|.
double sup_frobenius(const TensorField& g) {
  double m = 0.0;
  for (std::size_t p = 0; p < g[0][0].size(); ++p) {
    double s = 0.0;
    for (const auto& row : g)
      for (const auto& c : row) s += c[p] * c[p];
    if (!std::isfinite(s)) return s;
    m = std::max(m, s);
  }
  return std::sqrt(m);
}

}  // namespace

double spectral_tail_fraction(const VectorField& u, bool dealias) {
  const GridSpec& g = u.grid();
  const SpectralVectorField U = fft_forward(u);
  const double cut = (dealias ? g.n / 3.0 : g.n / 2.0) * 2.0 / 3.0;
  double total = 0.0, tail = 0.0;
  for_each_mode(g, [&](const Mode& md) {
    const double m2 = md.m[0] * md.m[0] + md.m[1] * md.m[1] + md.m[2] * md.m[2];
    double e = 0.0;
    for (int c = 0; c < 3; ++c) e += std::norm(U[c][md.idx]);
    e *= md.weight * md.k2;
    total += e;
    if (m2 > cut * cut) tail += e;
  });
  return total > 0.0 ? tail / total : 0.0;
}

BlowupDetector::BlowupDetector(double threshold, double initial_sup_grad, bool dealias)
    : limit_(threshold * (initial_sup_grad + 1.0)), dealias_(dealias) {}

std::optional<BlowupEvent> BlowupDetector::check(const State& s) const {
  if (!all_finite(s.u) || !all_finite(s.v)) return BlowupEvent{s.t, BlowupTrigger::NonFinite};
  const double sup = sup_frobenius(gradient_tensor(s.u));
  if (!std::isfinite(sup)) return BlowupEvent{s.t, BlowupTrigger::NonFinite};
  if (sup >= limit_) return BlowupEvent{s.t, BlowupTrigger::Gradient};
  if (spectral_tail_fraction(s.u, dealias_) >= kTailFraction) return BlowupEvent{s.t, BlowupTrigger::SpectralTail};
  return std::nullopt;
}

RunRecord measure(const State& s, const SolverConfig& cfg) {
  const GridSpec& g = s.u.grid();
  const double c1s = cfg.medium.c1 * cfg.medium.c1;
  const double c2s = cfg.medium.c2 * cfg.medium.c2;
  const SpectralVectorField U = fft_forward(s.u);
  const SpectralVectorField V = fft_forward(s.v);
  const SpectralHodgePair Uh = hodge_project(U);
  const SpectralHodgePair Vh = hodge_project(V);
  double v2 = 0, gu2 = 0, div2 = 0, vcf = 0, vdf = 0, gcf = 0, gdf = 0;
  for_each_mode(g, [&](const Mode& md) {
    const std::size_t i = md.idx;
    const double kd2 = md.kd[0] * md.kd[0] + md.kd[1] * md.kd[1] + md.kd[2] * md.kd[2];
    cplx dv{0.0, 0.0};
    for (int c = 0; c < 3; ++c) {
      v2 += md.weight * std::norm(V[c][i]);
      gu2 += md.weight * kd2 * std::norm(U[c][i]);
      dv += md.kd[c] * U[c][i];
      vcf += md.weight * std::norm(Vh.cf[c][i]);
      vdf += md.weight * std::norm(Vh.df[c][i]);
      gcf += md.weight * kd2 * std::norm(Uh.cf[c][i]);
      gdf += md.weight * kd2 * std::norm(Uh.df[c][i]);
    }
    div2 += md.weight * std::norm(dv);
  });
  const double vol = g.box_volume();
  RunRecord r;
  r.t = s.t;
  r.energy = std::sqrt(vol * (v2 + gu2));
  r.elastic_energy = std::sqrt(vol * (v2 + c2s * gu2 + (c1s - c2s) * div2));
  r.energy_cf = std::sqrt(vol * (vcf + c1s * gcf));
  r.energy_df = std::sqrt(vol * (vdf + c2s * gdf));
  const TensorField grad = gradient_tensor(U);
  r.sup_grad = sup_frobenius(grad);
  if (cfg.track_rotations) {
    const double un = norm_l2(s.u);
    double worst = 0.0;
    for (auto [i, j] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}})
      worst = std::max(worst, norm_l2(rotation_from_gradient(i, j, s.u, grad)));
    r.rotation_ratio = un > 0.0 ? worst / un : 0.0;
  }
  return r;
}

RunReport simulate(const SolverConfig& cfg, State initial, const Forcing* forcing, const Recorder& recorder) {
  cfg.validate();
  require_same_grid(initial.u.grid(), cfg.grid, "simulate: u");
  require_same_grid(initial.v.grid(), cfg.grid, "simulate: v");
  RunReport rep;
  rep.dt = cfg.step();
  const int nsteps = cfg.steps();

  auto record = [&](const State& s) {
    rep.records.push_back(measure(s, cfg));
    if (recorder) {
      if (forcing && *forcing) {
        VectorField F(cfg.grid);
        (*forcing)(s.t, F);
        recorder(s, &F);
      } else {
        recorder(s, nullptr);
      }
    }
  };

  // Linear and perturbed runs are linear systems; only non-finite values count there.
  const bool watch = cfg.mode == SolverMode::Quasilinear;
  if (!all_finite(initial.u) || !all_finite(initial.v)) {
    rep.blowup = BlowupEvent{initial.t, BlowupTrigger::NonFinite};
    return rep;
  }
  record(initial);
  const BlowupDetector detector(cfg.blowup_threshold, rep.records.front().sup_grad, cfg.dealias);
  State s = std::move(initial);
  for (int step = 1; step <= nsteps; ++step) {
    try {
      s = step_rk4(s, cfg, rep.dt, forcing);
    } catch (const NumericalError&) {
      rep.blowup = BlowupEvent{s.t + rep.dt, BlowupTrigger::NonFinite};
      break;
    }
    rep.steps_taken = step;
    if (!all_finite(s.u) || !all_finite(s.v)) {
      rep.blowup = BlowupEvent{s.t, BlowupTrigger::NonFinite};
      break;
    }
    if (watch) {
      if (auto ev = detector.check(s)) {
        rep.blowup = ev;
        record(s);
        break;
      }
    }
    if (step % cfg.record_every == 0 || step == nsteps) record(s);
  }
  return rep;
}

}  // namespace ekss
