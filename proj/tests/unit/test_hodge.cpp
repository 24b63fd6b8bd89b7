#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ekss/errors.hpp"
#include "ekss/harness.hpp"
#include "ekss/hodge.hpp"
#include "ekss/identity.hpp"
#include "ekss/random_fields.hpp"
#include "ekss/spectral.hpp"

using namespace ekss;
using std::numbers::pi;

TEST(Hodge, SuiteOnRandomFields) {
  const GridSpec g{32, 8.0, true};
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const HodgeCheck c = hodge_check(g, seed);
    EXPECT_LT(c.worst(), 1e-10) << "seed " << seed;
  }
}

TEST(Hodge, RecoversKnownPotentialAndStreamParts) {
  const GridSpec g{64, 8.0, true};
  const ManufacturedSolution ms(g);
  const VectorField cf = ms.curl_free_part();
  const VectorField df = ms.div_free_part();
  const HodgePair p = hodge_decompose(cf + df);
  EXPECT_LT(norm_l2(p.cf - cf) / norm_l2(cf), 1e-10);
  EXPECT_LT(norm_l2(p.df - df) / norm_l2(df), 1e-10);
}

TEST(Hodge, ConstantComponentIsRejected) {
  const GridSpec g{16, 8.0, true};
  VectorField u = random_smooth_vector(g, 1);
  u[0] += ScalarField(g, 0.3);
  EXPECT_THROW(hodge_decompose(u), ValidationError);
}

TEST(Hodge, LongitudinalAndTransversePlaneWaves) {
  const GridSpec g{16, 4.0, true};
  const double k = 2 * pi / g.L;
  // Longitudinal: u parallel to k; transverse: u perpendicular.
  const VectorField lon = sample_vector(g, [&](double x, double, double) {
    return std::array<double, 3>{std::sin(k * x), 0.0, 0.0};
  });
  const VectorField tra = sample_vector(g, [&](double x, double, double) {
    return std::array<double, 3>{0.0, std::sin(k * x), 0.0};
  });
  const HodgePair a = hodge_decompose(lon);
  const HodgePair b = hodge_decompose(tra);
  EXPECT_LT(norm_l2(a.df), 1e-14 * norm_l2(lon));
  EXPECT_LT(norm_l2(b.cf), 1e-14 * norm_l2(tra));
}

TEST(Riesz, ComposesToSecondDerivativeOverLaplacian) {
  const GridSpec g{32, 8.0, true};
  const ScalarField f = random_smooth_scalar(g, 4);
  // R_i R_l f = -d_i d_l Lap^{-1} f
  const ScalarField lhs = riesz(0, riesz(1, f));
  const ScalarField rhs = -1.0 * partial(partial(inverse_laplacian(f), 1), 0);
  EXPECT_LT(norm_l2(lhs - rhs) / norm_l2(rhs), 1e-12);
}

TEST(Riesz, IsAnL2Isometry) {
  const GridSpec g{32, 8.0, true};
  const ScalarField f = random_smooth_scalar(g, 7);
  double s = 0.0;
  for (int a = 0; a < 3; ++a) {
    const double n = norm_l2(riesz(a, f));
    s += n * n;
  }
  EXPECT_NEAR(std::sqrt(s), norm_l2(f), 1e-12 * norm_l2(f));
}

TEST(Riesz, WeightedRatioIsFiniteAndValidatesInput) {
  const GridSpec g{32, 8.0, true};
  ScalarField f = random_localized_scalar(g, 3, 1.0, 1.0);
  f -= ScalarField(g, mean(f));
  const double r = weighted_riesz_ratio(f, 0, 0.25);
  EXPECT_TRUE(std::isfinite(r));
  EXPECT_GT(r, 0.0);
  EXPECT_THROW(weighted_riesz_ratio(f, 0, 0.5), ValidationError);
  EXPECT_THROW(weighted_riesz_ratio(f, 0, 0.0), ValidationError);
  EXPECT_THROW(weighted_riesz_ratio(ScalarField(g), 0, 0.25), ValidationError);
}

TEST(Riesz, EnsembleCoversAllAxes) {
  const GridSpec g{16, 8.0, true};
  const RieszStats st = weighted_riesz_ensemble(g, 0.25, 1, 4);
  EXPECT_EQ(st.ratios.size(), 12u);
  EXPECT_EQ(st.seeds.size(), st.ratios.size());
  for (double r : st.ratios) EXPECT_TRUE(std::isfinite(r));
  EXPECT_GE(st.max, st.mean);
}
