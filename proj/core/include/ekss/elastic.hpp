#pragma once

#include <array>
#include <optional>
#include <vector>

#include "ekss/grid.hpp"
#include "ekss/spectral.hpp"
#include "ekss/tensor.hpp"

namespace ekss {

// Static coefficient field h^{ij}_{lm}(x) given as a sum of terms
// profile(x) * C^{ij}_{lm} (a missing profile means 1), or as 81 sampled
// components. Every construction path checks h^{ij}_{lm} = h^{ji}_{ml} exactly.
class PerturbationField {
 public:
  struct Term {
    std::optional<ScalarField> profile;
    Tensor4 coeff;
  };

  PerturbationField() = default;
  static PerturbationField constant(const Tensor4& c);
  static PerturbationField profiled(const ScalarField& profile, const Tensor4& c);
  static PerturbationField from_components(std::vector<ScalarField> components);

  void add_term(std::optional<ScalarField> profile, const Tensor4& c);

  bool empty() const { return terms_.empty() && !dense_; }
  const std::vector<Term>& terms() const { return terms_; }

  ScalarField component(const GridSpec& grid, int i, int j, int l, int m) const;
  // All 81 components, (i, j, l, m) order.
  std::vector<ScalarField> expand(const GridSpec& grid) const;
  // |h| = sum |h^{ij}_{lm}| at each sample.
  ScalarField abs_sum(const GridSpec& grid) const;
  // |grad h| = sum over (i,j,l,m) of the Euclidean length of grad h^{ij}_{lm}.
  ScalarField grad_abs_sum(const GridSpec& grid) const;
  double sup_abs(const GridSpec& grid) const;
  // Raised when sup |h| >= 0.1.
  bool smallness_flag(const GridSpec& grid) const { return sup_abs(grid) >= 0.1; }

  // F[i][l] = h^{ij}_{lm} d_m u^j for grad[j][m] = d_m u^j.
  TensorField flux(const TensorField& grad) const;
  // Same contraction with (omega . grad) h in place of h.
  TensorField radial_derivative_flux(const TensorField& grad, const VectorField& omega) const;

 private:
  std::vector<Term> terms_;
  std::optional<std::vector<ScalarField>> dense_;
};

struct ElasticMedium {
  double c1 = 2.0;
  double c2 = 1.0;
  Tensor6 g = default_g();
  PerturbationField h;

  // 0 < c2 < c1
  void validate() const;
};

// Au = c2^2 Lap u + (c1^2 - c2^2) grad div u
VectorField elastic_spatial(const VectorField& u, const ElasticMedium& m);
SpectralVectorField elastic_spatial(const SpectralVectorField& U, double c1, double c2);

// (div F)^i = d_l F[i][l], spectral; optionally two-thirds dealiased.
VectorField divergence_rows(const TensorField& F, bool dealias_output = false);
SpectralVectorField divergence_rows_spectral(const TensorField& F);

// (Hu)^i = d_l(h^{ij}_{lm} d_m u^j)
VectorField apply_H(const VectorField& u, const PerturbationField& h);
VectorField apply_H_from_gradient(const TensorField& grad, const PerturbationField& h);

// N(u,v)^i = d_l(g^{ijk}_{lmn} d_m u^j d_n v^k). With `dealias` the gradients
// and the flux are two-thirds filtered.
VectorField apply_N(const VectorField& u, const VectorField& v, const Tensor6& g, bool dealias = false);
// Flux from precomputed gradients.
TensorField nonlinear_flux(const TensorField& gu, const TensorField& gv, const Tensor6& g);

// h^{ij}_{lm} = g^{ijk}_{lmn} d_n u^k, the coefficient field for which
// H_h u = N(u, u).
PerturbationField linearized_coefficients(const VectorField& u, const Tensor6& g);

}  // namespace ekss
