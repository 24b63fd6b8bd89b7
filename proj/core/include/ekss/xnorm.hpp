#pragma once

#include <string>
#include <vector>

#include "ekss/grid.hpp"

namespace ekss {

enum class XVariant { Z, Gradient };

struct XNormBreakdown {
  double energy_sup = 0.0;  // sup_t sum_a ||d Z^a u||
  double kss_grad = 0.0;    // (log(2+T))^{-1/2} sum_a ||<r>^{-delta} r^{-1/2+delta} d Z^a u||_{L2L2}
  double kss_field = 0.0;   // (log(2+T))^{-1/2} sum_a ||<r>^{-delta} r^{-3/2+delta} Z^a u||_{L2L2}
  double total = 0.0;
  int k = 0;
  XVariant variant = XVariant::Z;
};

struct HistorySample {
  double t = 0.0;
  VectorField u;
  VectorField v;  // d_t u
};

// Words Z^a with |a| <= k - 1, d = (d_t, grad). The Z variant ranges over
// (grad, rotations) with k <= 4, the gradient variant over grad only with
// k <= 3. Samples must be uniformly spaced in t; time integrals use the
// trapezoid rule and T is the span of the history.
XNormBreakdown x_norm(const std::vector<HistorySample>& history, int k, double delta, XVariant variant);

}  // namespace ekss
