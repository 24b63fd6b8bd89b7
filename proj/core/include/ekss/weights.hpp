#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "ekss/grid.hpp"

namespace ekss {

enum class WeightKind {
  Half,       // <r>^{-1/2}
  ThreeHalf,  // <r>^{-3/2}
  Kss1,       // <r>^{-delta} r^{-1/2+delta}
  Kss2,       // <r>^{-delta} r^{-3/2+delta}
  Inv,        // <r>^{-1}
  InvR,       // r^{-1}, used by the Hardy check
};

struct WeightSpec {
  WeightKind kind = WeightKind::Kss1;
  double delta = 0.25;

  // 0 < delta <= 1/2.
  void validate() const;
  bool singular() const { return kind == WeightKind::Kss1 || kind == WeightKind::Kss2 || kind == WeightKind::InvR; }
};

std::string to_string(WeightKind kind);

// <r> = (1 + r^2)^{1/2}
inline double japanese(double r) { return std::sqrt(1.0 + r * r); }

double weight_value(const WeightSpec& w, double r);

// Quadrature table for integrals of w^2 f with f smooth. Away from the origin
// it holds midpoint samples of w^2. When the weight is singular, cells within
// six spacings of the origin also carry the first and second moments of w^2
// about the cell centre (Gauss points plus recursive subdivision of the cells
// touching the origin); f is then expanded to second order in each such cell
// using central differences, so the rule stays second order near r = 0.
struct WeightTable {
  struct NearCell {
    std::size_t idx;
    int i, j, k;
    // Cell averages of w^2 (x - c)_a / h and w^2 (x - c)_a (x - c)_b / h^2,
    // second moments ordered xx, yy, zz, xy, xz, yz.
    std::array<double, 3> m1;
    std::array<double, 6> m2;
  };
  ScalarField w2;  // cell average of w^2 near the origin, midpoint sample elsewhere
  std::vector<NearCell> near;
};

WeightTable weight_squared_table(const GridSpec& grid, const WeightSpec& w);

// ||w u||_2. Singular kinds require an offset grid.
double weighted_l2(const ScalarField& u, const WeightSpec& w);
double weighted_l2(const VectorField& u, const WeightSpec& w);
double weighted_l2(const TensorField& g, const WeightSpec& w);

// Integral of w^2 f for a precomputed table.
double weighted_integral(const WeightTable& table, const ScalarField& f);

// sum(table * f) * dV for a plain sample table.
double weighted_integral(const ScalarField& table, const ScalarField& f);

}  // namespace ekss
