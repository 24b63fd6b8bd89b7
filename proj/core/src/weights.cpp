#include "ekss/weights.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "ekss/errors.hpp"

namespace ekss {

namespace {

// 4-point Gauss-Legendre on [-1/2, 1/2].
constexpr std::array<double, 4> kNodes{-0.4305681557970263, -0.1699905217924281, 0.1699905217924281,
                                       0.4305681557970263};
constexpr std::array<double, 4> kWeights{0.1739274225337269, 0.3260725774662731, 0.3260725774662731,
                                         0.1739274225337269};

double w2_at(const WeightSpec& w, double x, double y, double z) {
  const double v = weight_value(w, std::sqrt(x * x + y * y + z * z));
  return v * v;
}

// Cell averages of w^2 times 1, (x - c)_a / h0 and (x - c)_a (x - c)_b / h0^2
// over the cube of side h centred at c; offsets are measured from c0.
using Moments = std::array<double, 10>;

void add_scaled(Moments& acc, const Moments& m, double s) {
  for (std::size_t q = 0; q < acc.size(); ++q) acc[q] += s * m[q];
}

Moments cell_moments(const WeightSpec& w, std::array<double, 3> c, double h, std::array<double, 3> c0, double h0,
                     int depth) {
  const bool touches_origin =
      std::abs(c[0]) <= 0.5 * h + 1e-12 * h && std::abs(c[1]) <= 0.5 * h + 1e-12 * h &&
      std::abs(c[2]) <= 0.5 * h + 1e-12 * h;
  Moments m{};
  if (touches_origin && depth > 0) {
    for (int a = 0; a < 8; ++a) {
      std::array<double, 3> cc{c[0] + ((a & 1) ? 0.25 : -0.25) * h, c[1] + ((a & 2) ? 0.25 : -0.25) * h,
                               c[2] + ((a & 4) ? 0.25 : -0.25) * h};
      add_scaled(m, cell_moments(w, cc, 0.5 * h, c0, h0, depth - 1), 0.125);
    }
    return m;
  }
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) {
        const double x = c[0] + kNodes[i] * h, y = c[1] + kNodes[j] * h, z = c[2] + kNodes[k] * h;
        const double s = kWeights[i] * kWeights[j] * kWeights[k] * w2_at(w, x, y, z);
        const double dx = (x - c0[0]) / h0, dy = (y - c0[1]) / h0, dz = (z - c0[2]) / h0;
        const Moments p{1.0, dx, dy, dz, dx * dx, dy * dy, dz * dz, dx * dy, dx * dz, dy * dz};
        add_scaled(m, p, s);
      }
  return m;
}

}  // namespace

void WeightSpec::validate() const {
  if (!(delta > 0.0 && delta <= 0.5)) throw ValidationError("weight: delta must lie in (0, 1/2]");
}

std::string to_string(WeightKind kind) {
  switch (kind) {
    case WeightKind::Half: return "W_HALF";
    case WeightKind::ThreeHalf: return "W_3HALF";
    case WeightKind::Kss1: return "W_KSS1";
    case WeightKind::Kss2: return "W_KSS2";
    case WeightKind::Inv: return "W_INV";
    case WeightKind::InvR: return "W_INVR";
  }
  return "?";
}

double weight_value(const WeightSpec& w, double r) {
  switch (w.kind) {
    case WeightKind::Half: return 1.0 / std::sqrt(japanese(r));
    case WeightKind::ThreeHalf: return std::pow(japanese(r), -1.5);
    case WeightKind::Kss1: return std::pow(japanese(r), -w.delta) * std::pow(r, -0.5 + w.delta);
    case WeightKind::Kss2: return std::pow(japanese(r), -w.delta) * std::pow(r, -1.5 + w.delta);
    case WeightKind::Inv: return 1.0 / japanese(r);
    case WeightKind::InvR: return 1.0 / r;
  }
  return 0.0;
}

WeightTable weight_squared_table(const GridSpec& grid, const WeightSpec& w) {
  w.validate();
  if (w.singular() && !grid.offset)
    throw ValidationError("weight " + to_string(w.kind) + " is singular at r = 0 and needs an offset grid");
  const double h = grid.dx();
  const double near = 6.0 * h;
  WeightTable t{ScalarField(grid), {}};
  for (int k = 0; k < grid.n; ++k)
    for (int j = 0; j < grid.n; ++j)
      for (int i = 0; i < grid.n; ++i) {
        const double x = grid.coord(i), y = grid.coord(j), z = grid.coord(k);
        const double r = std::sqrt(x * x + y * y + z * z);
        const std::size_t idx = grid.index(i, j, k);
        if (w.singular() && r < near) {
          const Moments m = cell_moments(w, {x, y, z}, h, {x, y, z}, h, 12);
          t.w2[idx] = m[0];
          t.near.push_back({idx, i, j, k, {m[1], m[2], m[3]}, {m[4], m[5], m[6], m[7], m[8], m[9]}});
        } else {
          const double s = weight_value(w, r);
          t.w2[idx] = s * s;
        }
      }
  return t;
}

double weighted_integral(const WeightTable& table, const ScalarField& f) {
  const GridSpec& g = f.grid();
  require_same_grid(table.w2.grid(), g, "weighted_integral");
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += table.w2[i] * f[i];
  // Second-order correction from the variation of f inside near-origin cells;
  // derivatives are central differences in units of the spacing.
  const int n = g.n;
  auto at = [&](int i, int j, int k) { return f.at((i + n) % n, (j + n) % n, (k + n) % n); };
  for (const auto& c : table.near) {
    const int i = c.i, j = c.j, k = c.k;
    const double f0 = f[c.idx];
    const std::array<double, 3> d1{0.5 * (at(i + 1, j, k) - at(i - 1, j, k)), 0.5 * (at(i, j + 1, k) - at(i, j - 1, k)),
                                   0.5 * (at(i, j, k + 1) - at(i, j, k - 1))};
    const std::array<double, 6> d2{
        at(i + 1, j, k) - 2 * f0 + at(i - 1, j, k),
        at(i, j + 1, k) - 2 * f0 + at(i, j - 1, k),
        at(i, j, k + 1) - 2 * f0 + at(i, j, k - 1),
        0.25 * (at(i + 1, j + 1, k) - at(i + 1, j - 1, k) - at(i - 1, j + 1, k) + at(i - 1, j - 1, k)),
        0.25 * (at(i + 1, j, k + 1) - at(i + 1, j, k - 1) - at(i - 1, j, k + 1) + at(i - 1, j, k - 1)),
        0.25 * (at(i, j + 1, k + 1) - at(i, j + 1, k - 1) - at(i, j - 1, k + 1) + at(i, j - 1, k - 1))};
    double corr = c.m1[0] * d1[0] + c.m1[1] * d1[1] + c.m1[2] * d1[2];
    corr += 0.5 * (c.m2[0] * d2[0] + c.m2[1] * d2[1] + c.m2[2] * d2[2]);
    corr += c.m2[3] * d2[3] + c.m2[4] * d2[4] + c.m2[5] * d2[5];
    s += corr;
  }
  return s * g.cell_volume();
}

double weighted_integral(const ScalarField& table, const ScalarField& f) {
  require_same_grid(table.grid(), f.grid(), "weighted_integral");
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += table[i] * f[i];
  return s * f.grid().cell_volume();
}

double weighted_l2(const ScalarField& u, const WeightSpec& w) {
  const WeightTable t = weight_squared_table(u.grid(), w);
  return std::sqrt(std::max(0.0, weighted_integral(t, u * u)));
}

double weighted_l2(const VectorField& u, const WeightSpec& w) {
  const WeightTable t = weight_squared_table(u.grid(), w);
  double s = 0.0;
  for (int c = 0; c < 3; ++c) s += weighted_integral(t, u[c] * u[c]);
  return std::sqrt(std::max(0.0, s));
}

double weighted_l2(const TensorField& g, const WeightSpec& w) {
  const WeightTable t = weight_squared_table(g[0][0].grid(), w);
  double s = 0.0;
  for (const auto& row : g)
    for (const auto& c : row) s += weighted_integral(t, c * c);
  return std::sqrt(std::max(0.0, s));
}

}  // namespace ekss
