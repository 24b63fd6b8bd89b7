#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <numbers>

#include "ekss/errors.hpp"
#include "ekss/inequalities.hpp"
#include "ekss/random_fields.hpp"
#include "ekss/shells.hpp"
#include "ekss/spectral.hpp"
#include "ekss/weights.hpp"
#include "ekss/xnorm.hpp"

using namespace ekss;
using std::numbers::pi;

namespace {

// Composite Simpson on [a, b] with an even number of panels.
double simpson(const std::function<double(double)>& f, double a, double b, int panels = 20000) {
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

// 4 pi int_0^R r^2 g(r) dr with the substitution r = s^2, which removes the
// r^{-1/2} type singularity of the weights at the origin.
double radial_integral(const std::function<double(double)>& g, double R) {
  return 4 * pi * simpson([&](double s) { return s == 0.0 ? 0.0 : 2 * s * std::pow(s, 4) * g(s * s); }, 0.0,
                          std::sqrt(R));
}

VectorField radial_vector(const GridSpec& g, double a) {
  return sample_vector(g, [a](double x, double y, double z) {
    const double f = std::exp(-a * (x * x + y * y + z * z));
    return std::array<double, 3>{x * f, y * f, z * f};
  });
}

}  // namespace

TEST(Weights, DirectEvaluation) {
  EXPECT_NEAR(weight_value({WeightKind::Kss1, 0.25}, 1.0), std::pow(2.0, -0.125), 1e-15);
  EXPECT_NEAR(weight_value({WeightKind::Kss1, 0.25}, 1.0), 0.9170, 5e-5);
  EXPECT_NEAR(weight_value({WeightKind::Half, 0.25}, 3.0), std::pow(10.0, -0.25), 1e-15);
  EXPECT_NEAR(weight_value({WeightKind::Kss2, 0.25}, 2.0), std::pow(5.0, -0.125) * std::pow(2.0, -1.25), 1e-15);
  EXPECT_NEAR(weight_value({WeightKind::Inv, 0.25}, 2.0), 1.0 / std::sqrt(5.0), 1e-15);
}

TEST(Weights, DeltaRangeValidated) {
  EXPECT_THROW((WeightSpec{WeightKind::Kss1, 0.0}).validate(), ValidationError);
  EXPECT_THROW((WeightSpec{WeightKind::Kss1, 0.6}).validate(), ValidationError);
  EXPECT_NO_THROW((WeightSpec{WeightKind::Kss1, 0.5}).validate());
}

TEST(Weights, KssWeightDominatesHalfWeight) {
  // w_kss1 / w_half = (<r>/r)^{1/2 - delta} >= 1 at every radius.
  const GridSpec g{32, 8.0, true};
  const RadialFrames fr = radial_frames(g);
  for (std::size_t p = 0; p < g.size(); ++p) {
    const double r = fr.r[p];
    ASSERT_GE(weight_value({WeightKind::Kss1, 0.25}, r), weight_value({WeightKind::Half, 0.25}, r)) << r;
  }
  // The two weights merge at large r.
  EXPECT_NEAR(weight_value({WeightKind::Kss1, 0.25}, 1e4) / weight_value({WeightKind::Half, 0.25}, 1e4), 1.0, 1e-8);
}

TEST(WeightedL2, ZeroField) {
  const GridSpec g{16, 8.0, true};
  EXPECT_EQ(weighted_l2(VectorField(g), {WeightKind::Kss1, 0.25}), 0.0);
}

TEST(WeightedL2, SingularWeightNeedsOffsetGrid) {
  const GridSpec g{16, 8.0, false};
  const ScalarField f(g, 1.0);
  EXPECT_THROW(weighted_l2(f, {WeightKind::Kss2, 0.25}), ValidationError);
  EXPECT_NO_THROW(weighted_l2(f, {WeightKind::Half, 0.25}));
}

TEST(WeightedL2, GaussianAgainstRadialQuadrature) {
  const GridSpec g{64, 8.0, true};
  const ScalarField u = gaussian(g, 1.0);
  auto gauss2 = [](double r) { return std::exp(-r * r); };
  for (WeightKind kind : {WeightKind::Half, WeightKind::Kss1, WeightKind::Kss2, WeightKind::ThreeHalf}) {
    const WeightSpec w{kind, 0.25};
    const double oracle =
        std::sqrt(radial_integral([&](double r) { return std::pow(weight_value(w, r), 2) * gauss2(r); }, 8.0));
    EXPECT_NEAR(weighted_l2(u, w), oracle, 0.01 * oracle) << to_string(kind);
  }
}

TEST(WeightedL2, ScalingHomogeneityOfPlainNorms) {
  const GridSpec g{64, 8.0, true};
  const VectorField u = radial_vector(g, 0.5);
  const VectorField ul = radial_vector(g, 0.5 * 4.0);
  // u(2x) = ul * 2, so ||u(2 .)|| = 2 ||ul||.
  EXPECT_NEAR(2 * norm_l2(ul) / norm_l2(u), std::pow(2.0, -1.5), 0.02 * std::pow(2.0, -1.5));
  EXPECT_NEAR(2 * norm_l2(gradient_tensor(ul)) / norm_l2(gradient_tensor(u)), std::pow(2.0, -0.5),
              0.02 * std::pow(2.0, -0.5));
}

TEST(MixedNorm, ZeroField) {
  const GridSpec g{32, 8.0, true};
  EXPECT_EQ(mixed_norm(VectorField(g), 2.0, 4.0).value, 0.0);
}

TEST(MixedNorm, RadialFieldIsIndependentOfAngularExponent) {
  const GridSpec g{64, 8.0, true};
  const VectorField u = radial_vector(g, 0.5);
  const ShellGrid sh = make_shell_grid(g);
  double area = 0.0;
  for (double w : sh.weights) area += w;
  // The angular measure is unnormalized; divide out area^{1/q}.
  const double m2 = mixed_norm(u, 2.0, 2.0).value / std::pow(area, 0.5);
  const double m6 = mixed_norm(u, 2.0, 6.0).value / std::pow(area, 1.0 / 6.0);
  EXPECT_NEAR(m2, m6, 0.01 * m2);
  EXPECT_NEAR(area, 4 * pi, 0.01 * 4 * pi);
}

TEST(MixedNorm, L2L2MatchesPlainNorm) {
  const GridSpec g{64, 8.0, true};
  VectorField u(g);
  u[0] = gaussian(g, 1.0);
  u[1] = gaussian(g, 0.9, 0.5, 0.0, -0.3);
  const MixedNorm m = mixed_norm(u, 2.0, 2.0);
  EXPECT_FALSE(m.warning.has_value());
  EXPECT_NEAR(m.value, norm_l2(u), 0.02 * norm_l2(u));
}

TEST(MixedNorm, SupportViolationWarns) {
  const GridSpec g{32, 8.0, true};
  VectorField u(g);
  u[0] = gaussian(g, 1.0, 6.0, 0.0, 0.0);
  EXPECT_TRUE(mixed_norm(u, 2.0, 4.0).warning.has_value());
}

TEST(MixedNorm, ExponentsValidated) {
  const GridSpec g{16, 8.0, true};
  EXPECT_THROW(mixed_norm(VectorField(g), 3.0, 4.0), ValidationError);
  EXPECT_THROW(mixed_norm(VectorField(g), 2.0, 1.5), ValidationError);
}

TEST(Inequalities, HardyAgainstRadialQuadrature) {
  const GridSpec g{64, 8.0, true};
  const VectorField u = radial_vector(g, 1.0);
  const RatioReport r = inequality_check(InequalityId::Hardy, u, 0.25);
  // |u/r|^2 = e^{-2r^2}, |grad u|^2 = e^{-2r^2} (3 - 4r^2 + 4r^4).
  const double lhs = std::sqrt(radial_integral([](double s) { return std::exp(-2 * s * s); }, 8.0));
  const double rhs = std::sqrt(radial_integral(
      [](double s) { return std::exp(-2 * s * s) * (3 - 4 * s * s + 4 * std::pow(s, 4)); }, 8.0));
  EXPECT_NEAR(r.lhs, lhs, 0.01 * lhs);
  EXPECT_NEAR(r.rhs, rhs, 0.01 * rhs);
  EXPECT_LE(r.ratio, 2.05);
  EXPECT_EQ(r.status, RatioStatus::Ok);
}

TEST(Inequalities, ZeroFieldIsDegenerate) {
  const GridSpec g{32, 8.0, true};
  for (InequalityId id : all_inequalities()) {
    const RatioReport r = inequality_check(id, VectorField(g), 0.25);
    EXPECT_EQ(r.status, RatioStatus::Degenerate) << to_string(id);
    EXPECT_TRUE(std::isfinite(r.ratio));
  }
}

TEST(Inequalities, NamesRoundTrip) {
  for (InequalityId id : all_inequalities()) EXPECT_EQ(inequality_from_string(to_string(id)), id);
  EXPECT_THROW(inequality_from_string("nope"), ValidationError);
}

TEST(Inequalities, InterpolationHoldsWithUnitConstant) {
  // ||u||_{Hs} <= ||u||^{1-s} ||u||_{H1}^s is Hoelder on the spectrum, constant 1.
  const GridSpec g{32, 8.0, true};
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const VectorField u = random_localized_vector(g, seed);
    EXPECT_LE(inequality_check(InequalityId::InterpHs, u, 0.25).ratio, 1.0 + 1e-12);
  }
}

TEST(Inequalities, EnsembleRatiosFiniteAndTripwire) {
  const GridSpec g{48, 8.0, true};
  for (InequalityId id : all_inequalities()) {
    const EnsembleReport rep = inequality_ensemble(id, g, 0.25, 1, 6);
    ASSERT_EQ(rep.rows.size(), 6u);
    int flagged = 0;
    for (const EnsembleRow& row : rep.rows) {
      EXPECT_TRUE(std::isfinite(row.report.ratio)) << to_string(id);
      EXPECT_GT(row.report.ratio, 0.0) << to_string(id);
      EXPECT_EQ(row.flagged, row.report.ratio > 3 * rep.median_ratio) << to_string(id);
      flagged += row.flagged;
    }
    EXPECT_EQ(flagged, rep.flagged);
  }
}

TEST(XNorm, EmptyHistoryRejected) {
  EXPECT_THROW(x_norm({}, 1, 0.25, XVariant::Z), ValidationError);
}

TEST(XNorm, ZeroHistoryIsZero) {
  const GridSpec g{16, 8.0, true};
  std::vector<HistorySample> h;
  for (int s = 0; s < 3; ++s) h.push_back({0.5 * s, VectorField(g), VectorField(g)});
  const XNormBreakdown b = x_norm(h, 2, 0.25, XVariant::Z);
  EXPECT_EQ(b.total, 0.0);
}

TEST(XNorm, StaticFieldOnDegenerateWindow) {
  const GridSpec g{32, 8.0, true};
  const VectorField u = random_localized_vector(g, 3);
  const XNormBreakdown b = x_norm({{0.0, u, VectorField(g)}}, 1, 0.25, XVariant::Z);
  EXPECT_EQ(b.kss_grad, 0.0);
  EXPECT_EQ(b.kss_field, 0.0);
  EXPECT_NEAR(b.energy_sup, norm_l2(gradient_tensor(u)), 1e-12 * b.energy_sup);
}

TEST(XNorm, PlaneWaveOverOnePeriod) {
  // u = e_0 sin(k x_0 - w t), w = c1 k. Over one period the time integral of
  // sin^2 and cos^2 is T/2 at every point.
  const GridSpec g{32, 8.0, true};
  const double k = 2 * pi / g.L, w = 2.0 * k, T = 2 * pi / w;
  const int steps = 16;
  std::vector<HistorySample> h;
  for (int s = 0; s <= steps; ++s) {
    const double t = T * s / steps;
    const VectorField u = sample_vector(g, [&](double x, double, double) {
      return std::array<double, 3>{std::sin(k * x - w * t), 0.0, 0.0};
    });
    const VectorField v = sample_vector(g, [&](double x, double, double) {
      return std::array<double, 3>{-w * std::cos(k * x - w * t), 0.0, 0.0};
    });
    h.push_back({t, u, v});
  }
  const XNormBreakdown b = x_norm(h, 1, 0.25, XVariant::Gradient);

  // Box integral of w^2: radial quadrature inside r < L plus midpoint sums
  // over the corner cells, where the weights are smooth.
  auto box_weight = [&](const WeightSpec& ws) {
    double corner = 0.0;
    const RadialFrames fr = radial_frames(g);
    for (std::size_t p = 0; p < g.size(); ++p)
      if (fr.r[p] >= g.L) corner += std::pow(weight_value(ws, fr.r[p]), 2);
    return radial_integral([&](double r) { return std::pow(weight_value(ws, r), 2); }, g.L) +
           corner * g.cell_volume();
  };
  const double norm = 1.0 / std::sqrt(std::log(2.0 + T));
  const double kss_grad = norm * std::sqrt((w * w + k * k) * 0.5 * T * box_weight({WeightKind::Kss1, 0.25}));
  const double kss_field = norm * std::sqrt(0.5 * T * box_weight({WeightKind::Kss2, 0.25}));
  const double energy = std::sqrt((w * w + k * k) * 0.5 * g.box_volume());
  EXPECT_NEAR(b.energy_sup, energy, 0.01 * energy);
  EXPECT_NEAR(b.kss_grad, kss_grad, 0.01 * kss_grad);
  EXPECT_NEAR(b.kss_field, kss_field, 0.01 * kss_field);
  EXPECT_NEAR(b.total, energy + kss_grad + kss_field, 0.01 * (energy + kss_grad + kss_field));
}

TEST(XNorm, GradientVariantMatchesZVariantOnRadialHistory) {
  const GridSpec g{48, 8.0, true};
  std::vector<HistorySample> h;
  for (int s = 0; s < 3; ++s) {
    const double a = 0.3 + 0.1 * s;
    h.push_back({0.5 * s, radial_vector(g, a), radial_vector(g, a + 0.05)});
  }
  // Rotation words vanish on radial fields, so only the gradient words count.
  const XNormBreakdown z1 = x_norm(h, 1, 0.25, XVariant::Z);
  const XNormBreakdown d1 = x_norm(h, 1, 0.25, XVariant::Gradient);
  EXPECT_NEAR(z1.total, d1.total, 1e-6 * d1.total);
  const XNormBreakdown z2 = x_norm(h, 2, 0.25, XVariant::Z);
  const XNormBreakdown d2 = x_norm(h, 2, 0.25, XVariant::Gradient);
  EXPECT_NEAR(z2.total, d2.total, 1e-6 * d2.total);
}
