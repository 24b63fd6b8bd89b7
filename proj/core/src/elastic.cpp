#include "ekss/elastic.hpp"

#include <cmath>
#include <string>

#include "ekss/errors.hpp"

namespace ekss {

namespace {

constexpr cplx I{0.0, 1.0};

std::string quadruple(const std::array<int, 4>& q) {
  return "(" + std::to_string(q[0] + 1) + "," + std::to_string(q[1] + 1) + "," + std::to_string(q[2] + 1) + "," +
         std::to_string(q[3] + 1) + ")";
}

void require_symmetric(const Tensor4& c) {
  if (auto v = c.symmetry_violation())
    throw ValidationError("perturbation: h^{ij}_{lm} != h^{ji}_{ml} at (i,j,l,m) = " + quadruple(*v));
}

TensorField zero_tensor(const GridSpec& grid) {
  TensorField t;
  for (auto& row : t)
    for (auto& c : row) c = ScalarField(grid);
  return t;
}

// F[i][l] += s(x) * C^{ij}_{lm} grad[j][m]; s may be null for 1.
void accumulate_flux(TensorField& F, const TensorField& grad, const Tensor4& C, const ScalarField* s) {
  const std::size_t N = grad[0][0].size();
  for (int i = 0; i < 3; ++i)
    for (int l = 0; l < 3; ++l) {
      double* out = F[i][l].data();
      for (int j = 0; j < 3; ++j)
        for (int m = 0; m < 3; ++m) {
          const double c = C(i, j, l, m);
          if (c == 0.0) continue;
          const double* gv = grad[j][m].data();
          if (s) {
            const double* sv = s->data();
            for (std::size_t p = 0; p < N; ++p) out[p] += c * sv[p] * gv[p];
          } else {
            for (std::size_t p = 0; p < N; ++p) out[p] += c * gv[p];
          }
        }
    }
}

}  // namespace

PerturbationField PerturbationField::constant(const Tensor4& c) {
  PerturbationField h;
  h.add_term(std::nullopt, c);
  return h;
}

PerturbationField PerturbationField::profiled(const ScalarField& profile, const Tensor4& c) {
  PerturbationField h;
  h.add_term(profile, c);
  return h;
}

PerturbationField PerturbationField::from_components(std::vector<ScalarField> components) {
  if (components.size() != 81) throw ValidationError("perturbation: expected 81 components");
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int l = 0; l < 3; ++l)
        for (int m = 0; m < 3; ++m) {
          const auto& a = components[static_cast<std::size_t>(Tensor4::index(i, j, l, m))];
          const auto& b = components[static_cast<std::size_t>(Tensor4::index(j, i, m, l))];
          require_same_grid(a.grid(), b.grid(), "perturbation components");
          for (std::size_t p = 0; p < a.size(); ++p)
            if (a[p] != b[p])
              throw ValidationError("perturbation: h^{ij}_{lm} != h^{ji}_{ml} at (i,j,l,m) = " +
                                    quadruple({i, j, l, m}));
        }
  PerturbationField h;
  h.dense_ = std::move(components);
  return h;
}

void PerturbationField::add_term(std::optional<ScalarField> profile, const Tensor4& c) {
  require_symmetric(c);
  if (profile) require_finite(*profile, "perturbation profile");
  terms_.push_back({std::move(profile), c});
}

ScalarField PerturbationField::component(const GridSpec& grid, int i, int j, int l, int m) const {
  if (dense_) return (*dense_)[static_cast<std::size_t>(Tensor4::index(i, j, l, m))];
  ScalarField out(grid);
  for (const Term& t : terms_) {
    const double c = t.coeff(i, j, l, m);
    if (c == 0.0) continue;
    if (t.profile)
      out.axpy(c, *t.profile);
    else
      for (double& v : out.values()) v += c;
  }
  return out;
}

std::vector<ScalarField> PerturbationField::expand(const GridSpec& grid) const {
  std::vector<ScalarField> out;
  out.reserve(81);
  for (int q = 0; q < 81; ++q) out.push_back(component(grid, q / 27, (q / 9) % 3, (q / 3) % 3, q % 3));
  return out;
}

ScalarField PerturbationField::abs_sum(const GridSpec& grid) const {
  ScalarField out(grid);
  for (int q = 0; q < 81; ++q) {
    const ScalarField c = component(grid, q / 27, (q / 9) % 3, (q / 3) % 3, q % 3);
    for (std::size_t p = 0; p < out.size(); ++p) out[p] += std::abs(c[p]);
  }
  return out;
}

ScalarField PerturbationField::grad_abs_sum(const GridSpec& grid) const {
  ScalarField out(grid);
  if (empty()) return out;
  if (!dense_) {
    // Each term contributes |C^{ij}_{lm}| |grad profile|.
    for (const Term& t : terms_) {
      if (!t.profile) continue;
      const VectorField g = gradient(*t.profile);
      const ScalarField mag = magnitude(g);
      out.axpy(t.coeff.abs_sum(), mag);
    }
    return out;
  }
  for (const ScalarField& c : *dense_) out += magnitude(gradient(c));
  return out;
}

double PerturbationField::sup_abs(const GridSpec& grid) const { return max_abs(abs_sum(grid)); }

TensorField PerturbationField::flux(const TensorField& grad) const {
  const GridSpec& grid = grad[0][0].grid();
  TensorField F = zero_tensor(grid);
  if (dense_) {
    const std::size_t N = grid.size();
    for (int i = 0; i < 3; ++i)
      for (int l = 0; l < 3; ++l)
        for (int j = 0; j < 3; ++j)
          for (int m = 0; m < 3; ++m) {
            const double* h = (*dense_)[static_cast<std::size_t>(Tensor4::index(i, j, l, m))].data();
            const double* g = grad[j][m].data();
            double* out = F[i][l].data();
            for (std::size_t p = 0; p < N; ++p) out[p] += h[p] * g[p];
          }
    return F;
  }
  for (const Term& t : terms_) accumulate_flux(F, grad, t.coeff, t.profile ? &*t.profile : nullptr);
  return F;
}

TensorField PerturbationField::radial_derivative_flux(const TensorField& grad, const VectorField& omega) const {
  const GridSpec& grid = grad[0][0].grid();
  if (dense_) {
    std::vector<ScalarField> dr;
    dr.reserve(81);
    for (const ScalarField& c : *dense_) dr.push_back(dot(omega, gradient(c)));
    PerturbationField tmp;
    tmp.dense_ = std::move(dr);
    return tmp.flux(grad);
  }
  TensorField F = zero_tensor(grid);
  for (const Term& t : terms_) {
    if (!t.profile) continue;  // constant terms have no derivative
    const ScalarField dr = dot(omega, gradient(*t.profile));
    accumulate_flux(F, grad, t.coeff, &dr);
  }
  return F;
}

void ElasticMedium::validate() const {
  if (!(c2 > 0.0 && c2 < c1)) throw ValidationError("medium: wave speeds must satisfy 0 < c2 < c1");
}

SpectralVectorField elastic_spatial(const SpectralVectorField& U, double c1, double c2) {
  const GridSpec& g = U.grid();
  SpectralVectorField out(g);
  const double a = c2 * c2;
  const double b = c1 * c1 - c2 * c2;
  for_each_mode(g, [&](const Mode& md) {
    const std::size_t i = md.idx;
    const cplx kdu = md.kd[0] * U[0][i] + md.kd[1] * U[1][i] + md.kd[2] * U[2][i];
    for (int c = 0; c < 3; ++c) out[c][i] = -a * md.k2 * U[c][i] - b * md.kd[c] * kdu;
  });
  return out;
}

VectorField elastic_spatial(const VectorField& u, const ElasticMedium& m) {
  m.validate();
  return fft_inverse(elastic_spatial(fft_forward(u), m.c1, m.c2));
}

SpectralVectorField divergence_rows_spectral(const TensorField& F) {
  const GridSpec& g = F[0][0].grid();
  SpectralVectorField out(g);
  for (int l = 0; l < 3; ++l)
    for (int i = 0; i < 3; ++i) {
      const SpectralField Fil = fft_forward(F[i][l]);
      for_each_mode(g, [&](const Mode& md) { out[i][md.idx] += I * md.kd[l] * Fil[md.idx]; });
    }
  return out;
}

VectorField divergence_rows(const TensorField& F, bool dealias_output) {
  SpectralVectorField out = divergence_rows_spectral(F);
  if (dealias_output) dealias(out);
  return fft_inverse(out);
}

VectorField apply_H_from_gradient(const TensorField& grad, const PerturbationField& h) {
  if (h.empty()) return VectorField(grad[0][0].grid());
  return divergence_rows(h.flux(grad));
}

VectorField apply_H(const VectorField& u, const PerturbationField& h) {
  if (h.empty()) return VectorField(u.grid());
  return apply_H_from_gradient(gradient_tensor(u), h);
}

TensorField nonlinear_flux(const TensorField& gu, const TensorField& gv, const Tensor6& g) {
  const GridSpec& grid = gu[0][0].grid();
  TensorField F = zero_tensor(grid);
  const std::size_t N = grid.size();
  for (const Tensor6::Entry& e : g.nonzeros()) {
    double* out = F[e.il / 3][e.il % 3].data();
    const double* a = gu[e.jm / 3][e.jm % 3].data();
    const double* b = gv[e.kn / 3][e.kn % 3].data();
    const double c = e.value;
    for (std::size_t p = 0; p < N; ++p) out[p] += c * a[p] * b[p];
  }
  return F;
}

VectorField apply_N(const VectorField& u, const VectorField& v, const Tensor6& g, bool dealias_on) {
  if (g.is_zero()) return VectorField(u.grid());
  auto grad_of = [&](const VectorField& w) {
    SpectralVectorField W = fft_forward(w);
    if (dealias_on) dealias(W);
    return gradient_tensor(W);
  };
  const TensorField gu = grad_of(u);
  const TensorField gv = (&u == &v) ? gu : grad_of(v);
  return divergence_rows(nonlinear_flux(gu, gv, g), dealias_on);
}

PerturbationField linearized_coefficients(const VectorField& u, const Tensor6& g) {
  const TensorField gu = gradient_tensor(u);
  const GridSpec& grid = u.grid();
  std::vector<ScalarField> comps(81, ScalarField(grid));
  for (int q = 0; q < 729; ++q) {
    const int i = q / 243, j = (q / 81) % 3, k = (q / 27) % 3, l = (q / 9) % 3, m = (q / 3) % 3, n = q % 3;
    const double c = g(i, j, k, l, m, n);
    if (c == 0.0) continue;
    comps[static_cast<std::size_t>(Tensor4::index(i, j, l, m))].axpy(c, gu[k][n]);
  }
  return PerturbationField::from_components(std::move(comps));
}

}  // namespace ekss
