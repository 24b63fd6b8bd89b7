#pragma once

#include <optional>

#include "ekss/elastic.hpp"
#include "ekss/grid.hpp"
#include "ekss/spectral.hpp"

namespace ekss {

// f(r) = (r / (1 + r))^{2 delta} and the derived radial coefficients.
struct MultiplierValues {
  double f = 0.0;
  double fp = 0.0;                  // f'
  double f_over_r_minus_half_fp = 0.0;  // f/r - f'/2
  double lap_bound = 0.0;           // -2 delta (1 - 2 delta) r^{2 delta - 3} (1 + r)^{-2 delta - 2}
  double fp_minus_f_over_r = 0.0;   // f' - f/r
};

// Requires r > 0 and 0 < delta < 1/2.
MultiplierValues f_eval(double r, double delta);
// Exact Lap(f/r) = -2 delta r^{2 delta - 3} (1 + r)^{-2 delta - 2} (1 - 2 delta + 2 r).
double laplacian_f_over_r(double r, double delta);
// Largest c with q1 + q2 >= c * (weighted quadratic form), in closed form:
// min(delta, c2^2 delta (1 - 2 delta)).
double lower_bound_constant(double delta, double c2);

struct MultiplierDensities {
  ScalarField e1, e2;
  ScalarField q1, q2, q3, q4, q5;
  ScalarField lower_bound_lhs;  // q1 + q2
  ScalarField lower_bound_rhs;  // eight weighted quadratic terms
  ScalarField pairing;          // <M u_cf, F_cf> + <M u_df, F_df>, zero without forcing
};

// Grid tables of the radial coefficients, reused across time samples.
struct MultiplierTables {
  explicit MultiplierTables(const GridSpec& grid, double delta);

  GridSpec grid;
  double delta;
  RadialFrames frames;
  ScalarField f, fp, f_over_r, a, lap_f_over_r, b;  // a = f/r - f'/2, b = f' - f/r
  ScalarField w_time, w_angular, w_field;           // weights of the lower-bound form
};

// Mu = f d_r u + (f/r) u
VectorField apply_multiplier(const VectorField& u, const TensorField& grad, const MultiplierTables& t);

// All densities for one time sample. h empty gives q3 = q4 = q5 = 0.
// `forcing` is L_h u; when given, the pairing density is filled in.
MultiplierDensities densities(const VectorField& u, const VectorField& v, const ElasticMedium& medium,
                              const MultiplierTables& t, const VectorField* forcing = nullptr);

// <M u_cf, F_cf> + <M u_df, F_df> pointwise.
ScalarField pairing_density(const VectorField& u, const VectorField& F, const MultiplierTables& t);

// div(M u_df) two ways: the closed form (f' - f/r) omega . (d_r u_df + u_df/r)
// and a spectral divergence. Returns the closed form.
ScalarField div_multiplier_closed_form(const VectorField& u_df, const TensorField& grad, const MultiplierTables& t);
// curl(M u_cf) = (f' - f/r) omega x (d_r u_cf + u_cf/r)
VectorField curl_multiplier_closed_form(const VectorField& u_cf, const TensorField& grad, const MultiplierTables& t);

}  // namespace ekss
