#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <cstring>
#include <limits>
#include <numbers>

#include "ekss/errors.hpp"
#include "ekss/hodge.hpp"
#include "ekss/random_fields.hpp"
#include "ekss/solver.hpp"
#include "ekss/spectral.hpp"
#include "ekss/zfields.hpp"

using namespace ekss;
using std::numbers::pi;

namespace {

double rel(const VectorField& a, const VectorField& b) { return norm_l2(a - b) / norm_l2(b); }

// Longitudinal plane wave u = e_0 cos(k x_0 - w t), w = c1 k.
struct PlaneWave {
  GridSpec g;
  double k, w;
  VectorField u(double t) const {
    return sample_vector(g, [&](double x, double, double) {
      return std::array<double, 3>{std::cos(k * x - w * t), 0.0, 0.0};
    });
  }
  VectorField v(double t) const {
    return sample_vector(g, [&](double x, double, double) {
      return std::array<double, 3>{w * std::sin(k * x - w * t), 0.0, 0.0};
    });
  }
};

SolverConfig linear_config(const GridSpec& g, double T, double dt) {
  SolverConfig c;
  c.grid = g;
  c.T = T;
  c.dt = dt;
  return c;
}

State run(const SolverConfig& cfg, State s, int steps, double dt, const Forcing* f = nullptr) {
  for (int i = 0; i < steps; ++i) s = step_rk4(s, cfg, dt, f);
  return s;
}

bool bitwise_equal(const VectorField& a, const VectorField& b) {
  for (int c = 0; c < 3; ++c)
    for (std::size_t p = 0; p < a[c].size(); ++p) {
      const double x = a[c][p], y = b[c][p];
      if (std::memcmp(&x, &y, sizeof(double)) != 0) return false;
    }
  return true;
}

State zero_mean_random_state(const GridSpec& g, std::uint64_t seed) {
  return {random_smooth_vector(g, seed, 2.0), random_smooth_vector(g, seed + 1, 2.0), 0.0};
}

}  // namespace

TEST(SolverConfig, Validation) {
  SolverConfig c;
  c.grid = {32, 8.0, true};
  EXPECT_NO_THROW(c.validate());
  EXPECT_DOUBLE_EQ(c.step(), 0.5 * c.grid.dx() / c.medium.c1);
  c.cfl = 0.6;
  EXPECT_THROW(c.validate(), ValidationError);
  c.cfl = 0.5;
  c.dt = c.grid.dx();  // above the CFL limit
  EXPECT_THROW(c.validate(), ValidationError);
  c.dt = 0.0;
  c.T = 0.0;
  EXPECT_THROW(c.validate(), ValidationError);
  EXPECT_EQ(solver_mode_from_string(to_string(SolverMode::Quasilinear)), SolverMode::Quasilinear);
  EXPECT_THROW(solver_mode_from_string("cubic"), ValidationError);
}

TEST(Rhs, LongitudinalEigenmode) {
  const GridSpec g{16, 4.0, true};
  const PlaneWave pw{g, 2 * pi / g.L, 0.0};
  const State s{pw.u(0.0), VectorField(g), 0.0};
  const SolverConfig cfg = linear_config(g, 1.0, 0.0);
  const Derivative d = rhs(s, cfg);
  EXPECT_LT(rel(d.dv, -(4.0 * pw.k * pw.k) * s.u), 1e-12);
  EXPECT_EQ(norm_l2(d.du), 0.0);
}

TEST(Rhs, QuasilinearWithZeroTensorIsLinearBitwise) {
  const GridSpec g{16, 8.0, true};
  const State s = zero_mean_random_state(g, 3);
  SolverConfig lin = linear_config(g, 1.0, 0.0);
  lin.medium.g = Tensor6{};
  SolverConfig ql = lin;
  ql.mode = SolverMode::Quasilinear;
  for (bool dealias : {false, true}) {
    ql.dealias = dealias;
    EXPECT_TRUE(bitwise_equal(rhs(s, ql).dv, rhs(s, lin).dv));
  }
}

TEST(Rhs, PerturbedMatchesOperatorComposition) {
  const GridSpec g{32, 8.0, true};
  const State s = zero_mean_random_state(g, 5);
  Tensor4 t;
  t(0, 0, 0, 0) = 0.03;
  t(0, 1, 1, 0) = t(1, 0, 0, 1) = -0.02;
  t(2, 2, 1, 1) = 0.01;
  t(1, 2, 0, 2) = t(2, 1, 2, 0) = 0.015;
  SolverConfig lin = linear_config(g, 1.0, 0.0);
  SolverConfig pert = lin;
  pert.mode = SolverMode::Perturbed;
  pert.medium.h = PerturbationField::constant(t);
  // -(Hu)^i = h^{ij}_{lm} k_l k_m u^j on coefficients.
  const SpectralVectorField U = fft_forward(s.u);
  SpectralVectorField O(g);
  for_each_mode(g, [&](const Mode& md) {
    for (int i = 0; i < 3; ++i) {
      cplx acc = 0.0;
      for (int j = 0; j < 3; ++j)
        for (int l = 0; l < 3; ++l)
          for (int m = 0; m < 3; ++m) acc += t(i, j, l, m) * md.kd[l] * md.kd[m] * U[j][md.idx];
      O[i][md.idx] = acc;
    }
  });
  const VectorField oracle = rhs(s, lin).dv + fft_inverse(O);
  EXPECT_LT(rel(rhs(s, pert).dv, oracle), 1e-12);
}

TEST(Rhs, ForcingIsAdded) {
  const GridSpec g{16, 8.0, true};
  const State s = zero_mean_random_state(g, 7);
  const SolverConfig cfg = linear_config(g, 1.0, 0.0);
  const VectorField f = random_smooth_vector(g, 9);
  const Forcing F = [&](double, VectorField& out) { out += f; };
  EXPECT_LT(rel(rhs(s, cfg, &F).dv, rhs(s, cfg).dv + f), 1e-15);
}

TEST(Rhs, NonFiniteInputThrows) {
  const GridSpec g{16, 8.0, true};
  State s = zero_mean_random_state(g, 1);
  s.u[1][17] = std::numeric_limits<double>::quiet_NaN();
  const SolverConfig cfg = linear_config(g, 1.0, 0.0);
  EXPECT_THROW(rhs(s, cfg), NumericalError);
}

TEST(Rk4, ZeroDataStaysExactlyZero) {
  const GridSpec g{16, 8.0, true};
  SolverConfig cfg = linear_config(g, 1.0, 0.0);
  cfg.mode = SolverMode::Quasilinear;
  const State s = run(cfg, {VectorField(g), VectorField(g), 0.0}, 5, cfg.step());
  EXPECT_EQ(norm_l2(s.u), 0.0);
  EXPECT_EQ(norm_l2(s.v), 0.0);
}

TEST(Rk4, PlaneWaveErrorMatchesStabilityFunction) {
  // On an eigenmode RK4 multiplies (c1 k u + i v) by R(-i w dt) per step, so
  // the exact discrete error is known in closed form.
  const GridSpec g{16, 4.0, true};
  PlaneWave pw{g, 2 * pi / g.L, 0.0};
  pw.w = 2.0 * pw.k;
  const double T = 2 * pi / pw.w;
  const int steps = 200;
  const double dt = T / steps;
  const SolverConfig cfg = linear_config(g, T, dt);
  const State s = run(cfg, {pw.u(0.0), pw.v(0.0), 0.0}, steps, dt);
  const std::complex<double> z(0.0, pw.w * dt);
  const std::complex<double> R = 1.0 + z + z * z / 2.0 + z * z * z / 6.0 + z * z * z * z / 24.0;
  const double predicted = std::abs(std::pow(R, steps) - std::exp(z * double(steps)));
  const double err = rel(s.u, pw.u(T));
  EXPECT_NEAR(err, predicted, 0.02 * predicted);
  EXPECT_LT(err, 1e-7);
}

TEST(Rk4, RichardsonOrder) {
  const GridSpec g{16, 4.0, true};
  PlaneWave pw{g, 2 * pi / g.L, 0.0};
  pw.w = 2.0 * pw.k;
  const double T = 2 * pi / pw.w;
  const SolverConfig cfg = linear_config(g, T, T / 40);
  const State s0{pw.u(0.0), pw.v(0.0), 0.0};
  const double e1 = rel(run(cfg, s0, 40, T / 40).u, pw.u(T));
  const double e2 = rel(run(cfg, s0, 80, T / 80).u, pw.u(T));
  const double p = std::log2(e1 / e2);
  EXPECT_GE(p, 3.8);
  EXPECT_LE(p, 4.2);
}

TEST(Rk4, TimeReversibility) {
  const GridSpec g{32, 8.0, true};
  const State s0 = zero_mean_random_state(g, 11);
  const double dt = 0.01;
  const SolverConfig cfg = linear_config(g, 2.0, dt);
  const State fwd = run(cfg, s0, 200, dt);
  const State back = run(cfg, fwd, 200, -dt);
  EXPECT_LT(rel(back.u, s0.u), 1e-7);
  EXPECT_LT(rel(back.v, s0.v), 1e-7);
}

TEST(Simulate, LinearEnergyAndHodgeSplitConserved) {
  // 10^4 steps over T = 50.
  const GridSpec g{32, 8.0, true};
  const State s0 = zero_mean_random_state(g, 13);
  SolverConfig cfg = linear_config(g, 50.0, 0.005);
  cfg.record_every = 500;
  const RunReport rep = simulate(cfg, s0);
  ASSERT_EQ(rep.steps_taken, 10000);
  ASSERT_FALSE(rep.blowup.has_value());
  const RunRecord& a = rep.records.front();
  for (const RunRecord& r : rep.records) {
    EXPECT_LE(std::abs(r.elastic_energy - a.elastic_energy), 1e-6 * a.elastic_energy) << r.t;
    EXPECT_LE(std::abs(r.energy_cf - a.energy_cf), 1e-6 * a.energy_cf) << r.t;
    EXPECT_LE(std::abs(r.energy_df - a.energy_df), 1e-6 * a.energy_df) << r.t;
  }
  for (std::size_t i = 1; i < rep.records.size(); ++i) EXPECT_GT(rep.records[i].t, rep.records[i - 1].t);
}

TEST(Simulate, MeasureAgreesWithDefinitions) {
  const GridSpec g{32, 8.0, true};
  const State s = zero_mean_random_state(g, 15);
  const SolverConfig cfg = linear_config(g, 1.0, 0.0);
  const RunRecord r = measure(s, cfg);
  const TensorField gr = gradient_tensor(s.u);
  const double grad2 = std::pow(norm_l2(gr), 2);
  EXPECT_NEAR(r.energy, std::sqrt(std::pow(norm_l2(s.v), 2) + grad2), 1e-10 * r.energy);
  const double div2 = std::pow(norm_l2(divergence(s.u)), 2);
  EXPECT_NEAR(r.elastic_energy, std::sqrt(std::pow(norm_l2(s.v), 2) + grad2 + 3.0 * div2), 1e-10 * r.elastic_energy);
  const HodgePair u = hodge_decompose(s.u), v = hodge_decompose(s.v);
  const double ecf = std::pow(norm_l2(v.cf), 2) + 4.0 * std::pow(norm_l2(gradient_tensor(u.cf)), 2);
  const double edf = std::pow(norm_l2(v.df), 2) + std::pow(norm_l2(gradient_tensor(u.df)), 2);
  EXPECT_NEAR(r.energy_cf, std::sqrt(ecf), 1e-10 * r.energy_cf);
  EXPECT_NEAR(r.energy_df, std::sqrt(edf), 1e-10 * r.energy_df);
  double sup = 0.0;
  for (std::size_t p = 0; p < g.size(); ++p) {
    double s2 = 0.0;
    for (const auto& row : gr)
      for (const auto& c : row) s2 += c[p] * c[p];
    sup = std::max(sup, std::sqrt(s2));
  }
  EXPECT_NEAR(r.sup_grad, sup, 1e-12 * sup);
}

TEST(Simulate, DuhamelBoundForForcedRun) {
  const GridSpec g{32, 8.0, true};
  const State s0 = zero_mean_random_state(g, 17);
  const VectorField f = random_localized_vector(g, 19);
  const Forcing F = [&](double t, VectorField& out) { out.axpy(std::cos(2 * t), f); };
  SolverConfig cfg = linear_config(g, 4.0, 0.0);
  const RunReport rep = simulate(cfg, s0, &F);
  ASSERT_FALSE(rep.blowup.has_value());
  const double nf = norm_l2(f);
  // int_0^t |cos 2s| ds: 1 per period pi / 2, closed form inside a period.
  auto int_abs_cos = [](double t) {
    const int full = static_cast<int>(std::floor(t / (pi / 2)));
    const double rest = t - full * (pi / 2);
    return full + (rest <= pi / 4 ? 0.5 * std::sin(2 * rest) : 1.0 - 0.5 * std::sin(2 * rest));
  };
  const double e0 = rep.records.front().elastic_energy;
  for (const RunRecord& r : rep.records)
    EXPECT_LE(r.elastic_energy, 1.05 * (e0 + nf * int_abs_cos(r.t))) << r.t;
}

TEST(Radial, ZeroAmplitudeGivesZeroData) {
  const GridSpec g{32, 10.0, true};
  const State s = radial_data(0.0, g);
  EXPECT_EQ(norm_l2(s.u), 0.0);
  EXPECT_EQ(norm_l2(s.v), 0.0);
}

TEST(Radial, DataIsAnnihilatedByRotations) {
  const GridSpec g{64, 10.0, true};
  const State s = radial_data(0.1, g);
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      const Checked c = rotation_field(i, j, s.u);
      EXPECT_LE(norm_l2(c.value), 1e-8 * norm_l2(s.u));
    }
}

TEST(Radial, AmplitudeHomogeneity) {
  const GridSpec g{32, 10.0, true};
  const State a = radial_data(0.1, g), b = radial_data(0.2, g);
  double na = 0.0, nb = 0.0;
  for (int c = 0; c < 3; ++c) {
    na += std::pow(homogeneous_sobolev_norm(a.u[c], 1.0), 2) + std::pow(homogeneous_sobolev_norm(a.u[c], 3.0), 2);
    nb += std::pow(homogeneous_sobolev_norm(b.u[c], 1.0), 2) + std::pow(homogeneous_sobolev_norm(b.u[c], 3.0), 2);
  }
  EXPECT_NEAR(std::sqrt(nb), 2 * std::sqrt(na), 1e-12 * std::sqrt(nb));
}

TEST(Radial, SupportViolationRejected) {
  EXPECT_THROW(radial_data(0.1, GridSpec{32, 6.0, true}), ValidationError);
  EXPECT_THROW(radial_data([](double r) { return std::exp(-0.1 * r * r); }, nullptr, 0.1, GridSpec{32, 10.0, true}),
               ValidationError);
}

TEST(Radial, QuasilinearFlowPreservesRadialSymmetry) {
  // The quadratic product of this profile is resolved to roundoff at n = 128;
  // a sharp dealiasing cut would add non-localized ringing instead.
  const GridSpec g{128, 10.0, true};
  SolverConfig cfg;
  cfg.grid = g;
  cfg.mode = SolverMode::Quasilinear;
  cfg.dealias = false;
  cfg.T = 0.5;
  cfg.track_rotations = true;
  const RunReport rep = simulate(cfg, radial_data(0.2, g));
  ASSERT_FALSE(rep.blowup.has_value());
  for (const RunRecord& r : rep.records) EXPECT_LE(r.rotation_ratio, 1e-6) << r.t;
}

TEST(Dealias, QuadraticAliasingRemoved) {
  // u = e_0 cos(k x_0) at |m| = 10 on n = 32: N(u, u) for the default tensor
  // lives at |m| = 20, which wraps to 12 without the filter.
  const GridSpec g{32, 8.0, true};
  const double k = 10 * pi / g.L;
  const VectorField u = sample_vector(g, [&](double x, double, double) {
    return std::array<double, 3>{std::cos(k * x), 0.0, 0.0};
  });
  const VectorField aliased = apply_N(u, u, default_g(), false);
  const VectorField filtered = apply_N(u, u, default_g(), true);
  EXPECT_GT(norm_l2(aliased), 1.0);
  EXPECT_LE(norm_l2(filtered), 1e-12 * norm_l2(aliased));
}

TEST(Blowup, LinearRunNeverFlagged) {
  const GridSpec g{32, 8.0, true};
  SolverConfig cfg = linear_config(g, 20.0, 0.0);
  cfg.record_every = 20;
  const RunReport rep = simulate(cfg, zero_mean_random_state(g, 21));
  EXPECT_FALSE(rep.blowup.has_value());
}

TEST(Blowup, DetectorTriggers) {
  const GridSpec g{32, 8.0, true};
  const State calm{random_localized_vector(g, 1, 2.0), VectorField(g), 0.0};
  const BlowupDetector det(1e3, 1.0, false);
  EXPECT_FALSE(det.check(calm).has_value());

  State big = calm;
  big.u *= 1e5;
  ASSERT_TRUE(det.check(big).has_value());
  EXPECT_EQ(det.check(big)->trigger, BlowupTrigger::Gradient);

  // Energy concentrated at |m| = 14 sits in the top third of the spectrum.
  const double k = 14 * pi / g.L;
  State rough = calm;
  rough.u[1] += sample(g, [&](double x, double, double) { return 0.1 * std::cos(k * x); });
  EXPECT_GE(spectral_tail_fraction(rough.u, false), BlowupDetector::kTailFraction);
  ASSERT_TRUE(det.check(rough).has_value());
  EXPECT_EQ(det.check(rough)->trigger, BlowupTrigger::SpectralTail);

  State nan = calm;
  nan.v[2][5] = std::numeric_limits<double>::infinity();
  ASSERT_TRUE(det.check(nan).has_value());
  EXPECT_EQ(det.check(nan)->trigger, BlowupTrigger::NonFinite);
}

TEST(Blowup, NonFiniteStateRecordedNotThrown) {
  const GridSpec g{16, 8.0, true};
  State s = zero_mean_random_state(g, 1);
  s.u[0][3] = std::numeric_limits<double>::quiet_NaN();
  SolverConfig cfg = linear_config(g, 1.0, 0.0);
  const RunReport rep = simulate(cfg, s);
  ASSERT_TRUE(rep.blowup.has_value());
  EXPECT_EQ(rep.blowup->trigger, BlowupTrigger::NonFinite);
  EXPECT_LE(rep.blowup->t, cfg.T);
}
