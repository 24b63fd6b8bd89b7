#pragma once

#include <vector>

#include "ekss/elastic.hpp"
#include "ekss/grid.hpp"
#include "ekss/multiplier.hpp"

namespace ekss {

// Space integrals of the densities at one time sample.
struct IdentitySample {
  double t = 0.0;
  double q1 = 0.0, q2 = 0.0, q3 = 0.0, q4 = 0.0, q5 = 0.0;
  double boundary = 0.0;  // int (e1 + e2)
  double pairing = 0.0;   // int <M u_cf, F_cf> + <M u_df, F_df>
  double min_q12 = 0.0;   // min over the grid of q1 + q2
  double min_lower_gap = 0.0;  // min of (q1 + q2 - c * rhs) / max(q1 + q2)
  int lower_violations = 0;
  double outer_fraction = 0.0;  // share of |v|^2 + |grad u|^2 in the layer |x|_inf >= 0.8 L
};

struct ResidualReport {
  double bulk = 0.0;      // int_0^T int (q1 + q2 + q3 - q4 - q5)
  double boundary = 0.0;  // [int (e1 + e2)]_0^T
  double pairing = 0.0;   // int_0^T int pairing
  double residual = 0.0;  // bulk + boundary - pairing
  double scale = 0.0;     // largest constituent in absolute value
  double normalized = 0.0;
  double max_outer_fraction = 0.0;
  bool localized = true;
  double min_q12 = 0.0;
  double lower_bound_c = 0.0;
  int lower_violations = 0;
  std::vector<IdentitySample> samples;
};

// Streams time samples of (u, u_t, L_h u) on a uniform time mesh and closes
// the space-time integrals with the trapezoid rule.
class IdentityAccumulator {
 public:
  IdentityAccumulator(const GridSpec& grid, const ElasticMedium& medium, double delta);

  // `forcing` may be null for a free run (L_h u = 0).
  void add(double t, const VectorField& u, const VectorField& v, const VectorField* forcing);
  std::size_t size() const { return samples_.size(); }
  // Throws NumericalError when the localization precondition (outer share
  // <= 1e-10) fails and `require_localized` is set.
  ResidualReport finish(bool require_localized = true) const;

  static constexpr double kLocalizationTolerance = 1e-10;

 private:
  GridSpec grid_;
  ElasticMedium medium_;
  MultiplierTables tables_;
  double c_;
  ScalarField outer_mask_;
  std::vector<IdentitySample> samples_;
};

// Smooth localized u(t, x) = sum a_p(t) grad phi_p + sum b_p(t) curl(e_p phi_p)
// with Gaussian phi_p centred away from the origin, evaluated in closed form.
// forcing(t) = u_tt - Au + Hu for the medium passed in.
class ManufacturedSolution {
 public:
  explicit ManufacturedSolution(const GridSpec& grid, double omega = 1.0);

  VectorField u(double t) const;
  VectorField v(double t) const;
  VectorField forcing(double t, const ElasticMedium& medium) const;
  // Constant-in-time parts: the curl-free and divergence-free pieces of u at
  // unit amplitude, used by the Hodge tests.
  VectorField curl_free_part() const;
  VectorField div_free_part() const;

  // Gaussian-profiled symmetric perturbation of size ~0.05 overlapping the support.
  static PerturbationField default_perturbation(const GridSpec& grid);

 private:
  VectorField combine(double t, int derivative) const;

  GridSpec grid_;
  double omega_;
  std::vector<VectorField> grad_phi_;
  std::vector<VectorField> curl_terms_;
  std::vector<double> freq_, phase_;
};

}  // namespace ekss
