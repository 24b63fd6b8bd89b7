#include "ekss/random_fields.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "ekss/spectral.hpp"

namespace ekss {

ScalarField random_smooth_scalar(const GridSpec& grid, std::uint64_t seed, double ell) {
  // Coefficients are drawn per integer wavevector in a fixed order that does
  // not depend on n, so one seed gives the same continuous field on every grid
  // that resolves it.
  const double kscale = std::numbers::pi / grid.L;
  const double kcut = 12.0 / ell;  // envelope below 1e-15 beyond
  // The draw order is fixed for n <= 128; larger grids see a truncated band.
  const int mcut = std::min(63, static_cast<int>(std::ceil(kcut / kscale)));
  const int mmax = grid.n / 2 - 1;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  SpectralField F(grid);
  double power = 0.0;
  for (int m1 = 0; m1 <= mcut; ++m1)
    for (int m2 = -mcut; m2 <= mcut; ++m2)
      for (int m3 = -mcut; m3 <= mcut; ++m3) {
        const bool upper = m1 > 0 || m2 > 0 || (m2 == 0 && m3 > 0);
        if (!upper) continue;
        const double k2 = kscale * kscale * (m1 * m1 + m2 * m2 + m3 * m3);
        if (k2 > kcut * kcut) continue;
        const double re = normal(rng);
        const double im = normal(rng);
        if (m1 > mmax || std::abs(m2) > mmax || std::abs(m3) > mmax) continue;
        const cplx c = std::exp(-k2 * ell * ell / 4.0) * cplx(re, im);
        F.set_coefficient(m1, m2, m3, c);
        power += 2.0 * std::norm(c);
      }
  ScalarField f = fft_inverse(F);
  if (power > 0.0) f *= 1.0 / std::sqrt(power);
  return f;
}

VectorField random_smooth_vector(const GridSpec& grid, std::uint64_t seed, double ell) {
  std::seed_seq seq{seed, std::uint64_t{0x9e3779b97f4a7c15ULL}};
  std::array<std::uint32_t, 3> sub{};
  seq.generate(sub.begin(), sub.end());
  return VectorField(random_smooth_scalar(grid, sub[0], ell), random_smooth_scalar(grid, sub[1], ell),
                     random_smooth_scalar(grid, sub[2], ell));
}

ScalarField gaussian(const GridSpec& grid, double sigma, double cx, double cy, double cz) {
  const double a = 1.0 / (2.0 * sigma * sigma);
  return sample(grid, [&](double x, double y, double z) {
    const double d2 = (x - cx) * (x - cx) + (y - cy) * (y - cy) + (z - cz) * (z - cz);
    return std::exp(-a * d2);
  });
}

ScalarField random_localized_scalar(const GridSpec& grid, std::uint64_t seed, double ell, double width) {
  ScalarField f = random_smooth_scalar(grid, seed, ell);
  f.multiply(gaussian(grid, width));
  return f;
}

VectorField random_localized_vector(const GridSpec& grid, std::uint64_t seed, double ell, double width) {
  VectorField u = random_smooth_vector(grid, seed, ell);
  u.scale(gaussian(grid, width));
  return u;
}

}  // namespace ekss
