#include "ekss/multiplier.hpp"

#include <algorithm>
#include <cmath>

#include "ekss/errors.hpp"
#include "ekss/hodge.hpp"

namespace ekss {

namespace {

constexpr cplx I{0.0, 1.0};

void check_delta(double delta) {
  if (!(delta > 0.0 && delta < 0.5)) throw ValidationError("multiplier: delta must lie in (0, 1/2)");
}

struct Parts {
  VectorField u;
  TensorField grad;
  VectorField dr;  // d_r u^i = omega . grad u^i
};

Parts make_parts(const SpectralVectorField& U, const VectorField& omega) {
  Parts p{fft_inverse(U), gradient_tensor(U), VectorField(omega.grid())};
  for (int c = 0; c < 3; ++c)
    for (std::size_t q = 0; q < omega[0].size(); ++q)
      p.dr[c][q] = omega[0][q] * p.grad[c][0][q] + omega[1][q] * p.grad[c][1][q] + omega[2][q] * p.grad[c][2][q];
  return p;
}

// |grad u|^2 - |d_r u|^2, evaluated as the squared length of the tangential part.
ScalarField angular_sq(const Parts& p, const VectorField& omega) {
  ScalarField out(omega.grid());
  for (std::size_t q = 0; q < out.size(); ++q) {
    double s = 0.0;
    for (int c = 0; c < 3; ++c)
      for (int m = 0; m < 3; ++m) {
        const double t = p.grad[c][m][q] - omega[m][q] * p.dr[c][q];
        s += t * t;
      }
    out[q] = s;
  }
  return out;
}

VectorField multiplier_of(const Parts& p, const MultiplierTables& t) {
  VectorField out(t.grid);
  for (int c = 0; c < 3; ++c)
    for (std::size_t q = 0; q < out[c].size(); ++q) out[c][q] = t.f[q] * p.dr[c][q] + t.f_over_r[q] * p.u[c][q];
  return out;
}

}  // namespace

MultiplierValues f_eval(double r, double delta) {
  if (!(r > 0.0)) throw ValidationError("f_eval: r must be positive");
  check_delta(delta);
  MultiplierValues v;
  const double d2 = 2.0 * delta;
  v.f = std::pow(r / (1.0 + r), d2);
  v.fp = d2 * std::pow(r, d2 - 1.0) * std::pow(1.0 + r, -d2 - 1.0);
  v.f_over_r_minus_half_fp = std::pow(r, d2 - 1.0) * std::pow(1.0 + r, -d2) * (1.0 - delta / (1.0 + r));
  v.lap_bound = -d2 * (1.0 - d2) * std::pow(r, d2 - 3.0) * std::pow(1.0 + r, -d2 - 2.0);
  v.fp_minus_f_over_r = std::pow(r, d2 - 1.0) * std::pow(1.0 + r, -d2) * (d2 / (1.0 + r) - 1.0);
  return v;
}

double laplacian_f_over_r(double r, double delta) {
  if (!(r > 0.0)) throw ValidationError("laplacian_f_over_r: r must be positive");
  check_delta(delta);
  const double d2 = 2.0 * delta;
  return -d2 * std::pow(r, d2 - 3.0) * std::pow(1.0 + r, -d2 - 2.0) * (1.0 - d2 + 2.0 * r);
}

double lower_bound_constant(double delta, double c2) {
  check_delta(delta);
  return std::min(delta, c2 * c2 * delta * (1.0 - 2.0 * delta));
}

MultiplierTables::MultiplierTables(const GridSpec& g, double d) : grid(g), delta(d), frames(radial_frames(g)) {
  check_delta(d);
  f = fp = f_over_r = a = lap_f_over_r = b = ScalarField(g);
  w_time = w_angular = w_field = ScalarField(g);
  const double d2 = 2.0 * d;
  for (std::size_t q = 0; q < g.size(); ++q) {
    const double r = frames.r[q];
    const MultiplierValues v = f_eval(r, d);
    f[q] = v.f;
    fp[q] = v.fp;
    f_over_r[q] = v.f / r;
    a[q] = v.f_over_r_minus_half_fp;
    b[q] = v.fp_minus_f_over_r;
    lap_f_over_r[q] = laplacian_f_over_r(r, d);
    w_time[q] = std::pow(r, d2 - 1.0) * std::pow(1.0 + r, -d2 - 1.0);
    w_angular[q] = std::pow(r, d2 - 1.0) * std::pow(1.0 + r, -d2);
    w_field[q] = std::pow(r, d2 - 3.0) * std::pow(1.0 + r, -d2 - 2.0);
  }
}

VectorField apply_multiplier(const VectorField& u, const TensorField& grad, const MultiplierTables& t) {
  VectorField out(t.grid);
  for (int c = 0; c < 3; ++c)
    for (std::size_t q = 0; q < out[c].size(); ++q) {
      const double dr = t.frames.omega[0][q] * grad[c][0][q] + t.frames.omega[1][q] * grad[c][1][q] +
                        t.frames.omega[2][q] * grad[c][2][q];
      out[c][q] = t.f[q] * dr + t.f_over_r[q] * u[c][q];
    }
  return out;
}

ScalarField div_multiplier_closed_form(const VectorField& u_df, const TensorField& grad, const MultiplierTables& t) {
  ScalarField out(t.grid);
  const auto& w = t.frames.omega;
  for (std::size_t q = 0; q < out.size(); ++q) {
    double s = 0.0;
    for (int c = 0; c < 3; ++c) {
      const double dr = w[0][q] * grad[c][0][q] + w[1][q] * grad[c][1][q] + w[2][q] * grad[c][2][q];
      s += w[c][q] * (dr + u_df[c][q] / t.frames.r[q]);
    }
    out[q] = t.b[q] * s;
  }
  return out;
}

VectorField curl_multiplier_closed_form(const VectorField& u_cf, const TensorField& grad, const MultiplierTables& t) {
  VectorField out(t.grid);
  const auto& w = t.frames.omega;
  for (std::size_t q = 0; q < out[0].size(); ++q) {
    std::array<double, 3> y{};
    for (int c = 0; c < 3; ++c) {
      const double dr = w[0][q] * grad[c][0][q] + w[1][q] * grad[c][1][q] + w[2][q] * grad[c][2][q];
      y[c] = dr + u_cf[c][q] / t.frames.r[q];
    }
    out[0][q] = t.b[q] * (w[1][q] * y[2] - w[2][q] * y[1]);
    out[1][q] = t.b[q] * (w[2][q] * y[0] - w[0][q] * y[2]);
    out[2][q] = t.b[q] * (w[0][q] * y[1] - w[1][q] * y[0]);
  }
  return out;
}

MultiplierDensities densities(const VectorField& u, const VectorField& v, const ElasticMedium& medium,
                              const MultiplierTables& t, const VectorField* forcing) {
  require_same_grid(u.grid(), t.grid, "densities");
  medium.validate();
  const auto& omega = t.frames.omega;
  const SpectralHodgePair U = hodge_project(fft_forward(u));
  const SpectralHodgePair V = hodge_project(fft_forward(v));
  const Parts cf = make_parts(U.cf, omega);
  const Parts df = make_parts(U.df, omega);
  const VectorField v_cf = fft_inverse(V.cf);
  const VectorField v_df = fft_inverse(V.df);
  const ScalarField ang_cf = angular_sq(cf, omega);
  const ScalarField ang_df = angular_sq(df, omega);

  const GridSpec& g = t.grid;
  MultiplierDensities d;
  d.e1 = d.e2 = d.q1 = d.q2 = d.q3 = d.q4 = d.q5 = ScalarField(g);
  d.lower_bound_lhs = d.lower_bound_rhs = d.pairing = ScalarField(g);
  const double c1s = medium.c1 * medium.c1;
  const double c2s = medium.c2 * medium.c2;
  for (std::size_t q = 0; q < g.size(); ++q) {
    const double r = t.frames.r[q];
    double e1 = 0.0, e2 = 0.0, vcf2 = 0.0, vdf2 = 0.0, drcf2 = 0.0, drdf2 = 0.0, ucf2 = 0.0, udf2 = 0.0;
    for (int c = 0; c < 3; ++c) {
      e1 += v_cf[c][q] * (cf.dr[c][q] + cf.u[c][q] / r);
      e2 += v_df[c][q] * (df.dr[c][q] + df.u[c][q] / r);
      vcf2 += v_cf[c][q] * v_cf[c][q];
      vdf2 += v_df[c][q] * v_df[c][q];
      drcf2 += cf.dr[c][q] * cf.dr[c][q];
      drdf2 += df.dr[c][q] * df.dr[c][q];
      ucf2 += cf.u[c][q] * cf.u[c][q];
      udf2 += df.u[c][q] * df.u[c][q];
    }
    d.e1[q] = t.f[q] * e1;
    d.e2[q] = t.f[q] * e2;
    d.q1[q] = 0.5 * t.fp[q] * vcf2 + c1s * 0.5 * t.fp[q] * drcf2 + c1s * t.a[q] * ang_cf[q] -
              0.5 * c1s * t.lap_f_over_r[q] * ucf2;
    d.q2[q] = 0.5 * t.fp[q] * vdf2 + c2s * 0.5 * t.fp[q] * drdf2 + c2s * t.a[q] * ang_df[q] -
              0.5 * c2s * t.lap_f_over_r[q] * udf2;
    d.lower_bound_lhs[q] = d.q1[q] + d.q2[q];
    d.lower_bound_rhs[q] = t.w_time[q] * (vcf2 + drcf2 + vdf2 + drdf2) + t.w_angular[q] * (ang_cf[q] + ang_df[q]) +
                           t.w_field[q] * (ucf2 + udf2);
  }

  if (!medium.h.empty()) {
    TensorField grad;
    for (int j = 0; j < 3; ++j)
      for (int m = 0; m < 3; ++m) grad[j][m] = cf.grad[j][m] + df.grad[j][m];
    VectorField uu = cf.u;
    uu += df.u;
    const TensorField F = medium.h.flux(grad);
    const TensorField Fr = medium.h.radial_derivative_flux(grad, omega);
    for (std::size_t q = 0; q < g.size(); ++q) {
      double s_rad = 0.0, s_full = 0.0, s_dh = 0.0, s_field = 0.0;
      for (int i = 0; i < 3; ++i) {
        const double dri = cf.dr[i][q] + df.dr[i][q];
        for (int l = 0; l < 3; ++l) {
          const double fil = F[i][l][q];
          s_rad += dri * omega[l][q] * fil;
          s_full += grad[i][l][q] * fil;
          s_dh += grad[i][l][q] * Fr[i][l][q];
          s_field += omega[l][q] * uu[i][q] * fil;
        }
      }
      const double r = t.frames.r[q];
      d.q3[q] = -t.b[q] * s_rad + 0.5 * t.fp[q] * s_full + 0.5 * t.f[q] * s_dh - t.f_over_r[q] * s_full -
                t.b[q] / r * s_field;
    }

    // div Lap^{-1}(Hu) and curl Lap^{-1}(Hu) straight from the coefficients.
    const SpectralVectorField Hu = divergence_rows_spectral(F);
    SpectralField dphi(g);
    SpectralVectorField cpsi(g);
    for_each_mode(g, [&](const Mode& md) {
      if (md.k2 == 0.0) return;
      const std::size_t i = md.idx;
      const double inv = -1.0 / md.k2;
      dphi[i] = inv * I * (md.kd[0] * Hu[0][i] + md.kd[1] * Hu[1][i] + md.kd[2] * Hu[2][i]);
      cpsi[0][i] = inv * I * (md.kd[1] * Hu[2][i] - md.kd[2] * Hu[1][i]);
      cpsi[1][i] = inv * I * (md.kd[2] * Hu[0][i] - md.kd[0] * Hu[2][i]);
      cpsi[2][i] = inv * I * (md.kd[0] * Hu[1][i] - md.kd[1] * Hu[0][i]);
    });
    const ScalarField phi = fft_inverse(dphi);
    const VectorField psi = fft_inverse(cpsi);
    const ScalarField div_m = div_multiplier_closed_form(df.u, df.grad, t);
    const VectorField curl_m = curl_multiplier_closed_form(cf.u, cf.grad, t);
    for (std::size_t q = 0; q < g.size(); ++q) {
      d.q4[q] = -div_m[q] * phi[q];
      d.q5[q] = -(curl_m[0][q] * psi[0][q] + curl_m[1][q] * psi[1][q] + curl_m[2][q] * psi[2][q]);
    }
  }

  if (forcing) {
    const SpectralHodgePair Fh = hodge_project(fft_forward(*forcing));
    const VectorField F_cf = fft_inverse(Fh.cf);
    const VectorField F_df = fft_inverse(Fh.df);
    const VectorField m_cf = multiplier_of(cf, t);
    const VectorField m_df = multiplier_of(df, t);
    for (std::size_t q = 0; q < g.size(); ++q) {
      double s = 0.0;
      for (int c = 0; c < 3; ++c) s += m_cf[c][q] * F_cf[c][q] + m_df[c][q] * F_df[c][q];
      d.pairing[q] = s;
    }
  }
  return d;
}

ScalarField pairing_density(const VectorField& u, const VectorField& F, const MultiplierTables& t) {
  const SpectralHodgePair U = hodge_project(fft_forward(u));
  const Parts cf = make_parts(U.cf, t.frames.omega);
  const Parts df = make_parts(U.df, t.frames.omega);
  const SpectralHodgePair Fh = hodge_project(fft_forward(F));
  const VectorField F_cf = fft_inverse(Fh.cf);
  const VectorField F_df = fft_inverse(Fh.df);
  const VectorField m_cf = multiplier_of(cf, t);
  const VectorField m_df = multiplier_of(df, t);
  return dot(m_cf, F_cf) + dot(m_df, F_df);
}

}  // namespace ekss
