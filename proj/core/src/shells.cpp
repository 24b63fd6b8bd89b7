#include "ekss/shells.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ekss/errors.hpp"
#include "ekss/zfields.hpp"

namespace ekss {

ShellGrid make_shell_grid(const GridSpec& grid, int n_theta) {
  if (n_theta < 2) throw ValidationError("shells: n_theta must be at least 2");
  ShellGrid s;
  s.dr = grid.dx();
  for (int k = 0; k < grid.n / 2; ++k) s.radii.push_back((k + 0.5) * s.dr);
  const int n_phi = 2 * n_theta;
  const double dth = std::numbers::pi / n_theta;
  const double dph = 2.0 * std::numbers::pi / n_phi;
  for (int a = 0; a < n_theta; ++a) {
    const double th = (a + 0.5) * dth;
    for (int b = 0; b < n_phi; ++b) {
      const double ph = b * dph;
      s.directions.push_back({std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)});
      s.weights.push_back(std::sin(th) * dth * dph);
    }
  }
  return s;
}

double interpolate(const ScalarField& f, double x, double y, double z) {
  const GridSpec& g = f.grid();
  const double shift = g.offset ? 0.5 : 0.0;
  const double h = g.dx();
  std::array<int, 3> i0{};
  std::array<double, 3> w{};
  const std::array<double, 3> p{x, y, z};
  for (int d = 0; d < 3; ++d) {
    const double s = (p[d] + g.L) / h - shift;
    const double fl = std::floor(s);
    w[d] = s - fl;
    i0[d] = static_cast<int>(fl);
  }
  auto wrap = [n = g.n](int i) { return ((i % n) + n) % n; };
  double acc = 0.0;
  for (int c = 0; c < 8; ++c) {
    const int dx = c & 1, dy = (c >> 1) & 1, dz = (c >> 2) & 1;
    const double wt = (dx ? w[0] : 1.0 - w[0]) * (dy ? w[1] : 1.0 - w[1]) * (dz ? w[2] : 1.0 - w[2]);
    acc += wt * f.at(wrap(i0[0] + dx), wrap(i0[1] + dy), wrap(i0[2] + dz));
  }
  return acc;
}

double angular_norm(const VectorField& u, double r, double q, const ShellGrid& shells) {
  if (!(q >= 1.0)) throw ValidationError("angular norm: q must be at least 1");
  double acc = 0.0;
  for (std::size_t a = 0; a < shells.directions.size(); ++a) {
    const auto& d = shells.directions[a];
    const double x = r * d[0], y = r * d[1], z = r * d[2];
    const double v0 = interpolate(u[0], x, y, z), v1 = interpolate(u[1], x, y, z), v2 = interpolate(u[2], x, y, z);
    const double mag = std::sqrt(v0 * v0 + v1 * v1 + v2 * v2);
    if (std::isinf(q))
      acc = std::max(acc, mag);
    else
      acc += shells.weights[a] * std::pow(mag, q);
  }
  return std::isinf(q) ? acc : std::pow(acc, 1.0 / q);
}

std::vector<double> shell_profile(const VectorField& u, double q, const ShellGrid& shells) {
  std::vector<double> out;
  out.reserve(shells.radii.size());
  for (double r : shells.radii) out.push_back(angular_norm(u, r, q, shells));
  return out;
}

MixedNorm mixed_norm(const VectorField& u, double p, double q, int n_theta) {
  if (!(p == 2.0 || std::isinf(p))) throw ValidationError("mixed norm: p must be 2 or infinity");
  if (!(q >= 2.0) || std::isinf(q)) throw ValidationError("mixed norm: q must lie in [2, infinity)");
  MixedNorm out;
  const double frac = outside_fraction(u, 0.6);
  if (frac > 1e-8) out.warning = "support check: energy fraction " + std::to_string(frac) + " outside |x| <= 0.6 L";
  const ShellGrid shells = make_shell_grid(u.grid(), n_theta);
  const std::vector<double> prof = shell_profile(u, q, shells);
  if (std::isinf(p)) {
    for (double v : prof) out.value = std::max(out.value, v);
    return out;
  }
  double acc = 0.0;
  for (std::size_t s = 0; s < prof.size(); ++s) acc += prof[s] * prof[s] * shells.radii[s] * shells.radii[s] * shells.dr;
  out.value = std::sqrt(acc);
  return out;
}

}  // namespace ekss
