#include "ekss/spectral.hpp"

#include <cmath>
#include <string>

#include "ekss/errors.hpp"
#include "fft_backend.hpp"

namespace ekss {

namespace {

constexpr cplx I{0.0, 1.0};

template <class Mult>
SpectralField apply_multiplier(const SpectralField& F, Mult&& mult) {
  SpectralField out(F.grid());
  for_each_mode(F.grid(), [&](const Mode& md) { out[md.idx] = mult(md) * F[md.idx]; });
  return out;
}

}  // namespace

SpectralField::SpectralField(const GridSpec& grid) : grid_(grid) {
  grid_.validate();
  data_.assign(grid_.spectral_size(), cplx{});
}

namespace {

std::size_t stored_index(const GridSpec& g, int m1, int m2, int m3) {
  const int n = g.n;
  if (m1 < 0 || m1 > n / 2 || std::abs(m2) > n / 2 || std::abs(m3) > n / 2)
    throw ValidationError("spectral: wavevector outside the resolved band");
  const std::size_t b = static_cast<std::size_t>((m2 + n) % n);
  const std::size_t c = static_cast<std::size_t>((m3 + n) % n);
  const std::size_t nh = static_cast<std::size_t>(n / 2 + 1);
  return static_cast<std::size_t>(m1) + nh * (b + static_cast<std::size_t>(n) * c);
}

// Phase between the stored value and c(k): the samples start at coord(0), not 0.
cplx origin_phase(const GridSpec& g, int m1, int m2, int m3) {
  return std::polar(1.0, -(m1 + m2 + m3) * std::numbers::pi / g.L * g.coord(0));
}

}  // namespace

cplx SpectralField::coefficient(int m1, int m2, int m3) const {
  if (m1 < 0) return std::conj(coefficient(-m1, -m2, -m3));
  return data_[stored_index(grid_, m1, m2, m3)] * origin_phase(grid_, m1, m2, m3);
}

void SpectralField::set_coefficient(int m1, int m2, int m3, cplx value) {
  if (m1 < 0) {
    set_coefficient(-m1, -m2, -m3, std::conj(value));
    return;
  }
  data_[stored_index(grid_, m1, m2, m3)] = value / origin_phase(grid_, m1, m2, m3);
  const int n = grid_.n;
  if (m1 == 0 || m1 == n / 2) {
    // The partner -k lives in the same stored plane (m1 = n/2 aliases to -n/2).
    const int p2 = -m2 == -n / 2 ? n / 2 : -m2;
    const int p3 = -m3 == -n / 2 ? n / 2 : -m3;
    data_[stored_index(grid_, m1, p2, p3)] = std::conj(value) / origin_phase(grid_, m1, p2, p3);
  }
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_same_grid(grid_, other.grid_, "spectral +=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (auto& c : data_) c *= s;
  return *this;
}

SpectralField fft_forward(const ScalarField& f) {
  require_finite(f, "fft_forward");
  SpectralField F(f.grid());
  detail::r2c(f.grid().n, f.data(), F.data());
  F *= 1.0 / static_cast<double>(f.grid().size());
  return F;
}

ScalarField fft_inverse(const SpectralField& F) {
  ScalarField f(F.grid());
  SpectralField work = F;
  detail::c2r(F.grid().n, work.data(), f.data());
  return f;
}

SpectralVectorField fft_forward(const VectorField& u) {
  SpectralVectorField U;
  for (int c = 0; c < 3; ++c) U[c] = fft_forward(u[c]);
  return U;
}

VectorField fft_inverse(const SpectralVectorField& U) {
  return VectorField(fft_inverse(U[0]), fft_inverse(U[1]), fft_inverse(U[2]));
}

double spectral_norm2(const SpectralField& F) {
  double s = 0.0;
  for_each_mode(F.grid(), [&](const Mode& md) { s += md.weight * std::norm(F[md.idx]); });
  return s * F.grid().box_volume();
}

ScalarField partial(const ScalarField& f, int axis) {
  return fft_inverse(apply_multiplier(fft_forward(f), [axis](const Mode& md) { return I * md.kd[axis]; }));
}

VectorField gradient(const ScalarField& f) {
  const SpectralField F = fft_forward(f);
  VectorField out(f.grid());
  for (int d = 0; d < 3; ++d)
    out[d] = fft_inverse(apply_multiplier(F, [d](const Mode& md) { return I * md.kd[d]; }));
  return out;
}

ScalarField divergence(const VectorField& u) {
  const SpectralVectorField U = fft_forward(u);
  SpectralField D(u.grid());
  for_each_mode(u.grid(), [&](const Mode& md) {
    D[md.idx] = I * (md.kd[0] * U[0][md.idx] + md.kd[1] * U[1][md.idx] + md.kd[2] * U[2][md.idx]);
  });
  return fft_inverse(D);
}

VectorField curl(const VectorField& u) {
  const SpectralVectorField U = fft_forward(u);
  SpectralVectorField C(u.grid());
  for_each_mode(u.grid(), [&](const Mode& md) {
    const std::size_t i = md.idx;
    C[0][i] = I * (md.kd[1] * U[2][i] - md.kd[2] * U[1][i]);
    C[1][i] = I * (md.kd[2] * U[0][i] - md.kd[0] * U[2][i]);
    C[2][i] = I * (md.kd[0] * U[1][i] - md.kd[1] * U[0][i]);
  });
  return fft_inverse(C);
}

ScalarField laplacian(const ScalarField& f) {
  return fft_inverse(apply_multiplier(fft_forward(f), [](const Mode& md) { return cplx(-md.k2); }));
}

VectorField laplacian(const VectorField& u) {
  return VectorField(laplacian(u[0]), laplacian(u[1]), laplacian(u[2]));
}

ScalarField inverse_laplacian(const ScalarField& f) {
  const double avg = mean(f);
  double ms = 0.0;
  for (double v : f.values()) ms += v * v;
  const double rms = std::sqrt(ms / static_cast<double>(f.size()));
  if (std::abs(avg) > 1e-10 * rms) throw ValidationError("inverse Laplacian undefined on constants");
  return fft_inverse(apply_multiplier(fft_forward(f), [](const Mode& md) {
    return md.k2 > 0.0 ? cplx(-1.0 / md.k2) : cplx(0.0);
  }));
}

VectorField inverse_laplacian(const VectorField& u) {
  return VectorField(inverse_laplacian(u[0]), inverse_laplacian(u[1]), inverse_laplacian(u[2]));
}

TensorField gradient_tensor(const SpectralVectorField& U) {
  TensorField g;
  for (int j = 0; j < 3; ++j)
    for (int m = 0; m < 3; ++m)
      g[j][m] = fft_inverse(apply_multiplier(U[j], [m](const Mode& md) { return I * md.kd[m]; }));
  return g;
}

TensorField gradient_tensor(const VectorField& u) { return gradient_tensor(fft_forward(u)); }

double homogeneous_sobolev_norm(const ScalarField& f, double s) {
  const SpectralField F = fft_forward(f);
  double acc = 0.0;
  for_each_mode(f.grid(), [&](const Mode& md) {
    if (md.k2 > 0.0) acc += md.weight * std::pow(md.k2, s) * std::norm(F[md.idx]);
  });
  return std::sqrt(acc * f.grid().box_volume());
}

bool dealias_keep(const Mode& md, int n) {
  const double cut = n / 3.0;
  const double m2 = static_cast<double>(md.m[0] * md.m[0] + md.m[1] * md.m[1] + md.m[2] * md.m[2]);
  return m2 <= cut * cut;
}

void dealias(SpectralField& F) {
  const int n = F.grid().n;
  for_each_mode(F.grid(), [&](const Mode& md) {
    if (!dealias_keep(md, n)) F[md.idx] = 0.0;
  });
}

void dealias(SpectralVectorField& U) {
  for (int c = 0; c < 3; ++c) dealias(U[c]);
}

ScalarField dealiased(const ScalarField& f) {
  SpectralField F = fft_forward(f);
  dealias(F);
  return fft_inverse(F);
}

ScalarField coordinate(const GridSpec& grid, int axis) {
  return sample(grid, [axis](double x, double y, double z) { return axis == 0 ? x : axis == 1 ? y : z; });
}

RadialFrames radial_frames(const GridSpec& grid) {
  if (!grid.offset) throw ValidationError("radial_frames: offset grid required (r = 0 would be sampled)");
  RadialFrames fr{ScalarField(grid), VectorField(grid)};
  for (int k = 0; k < grid.n; ++k)
    for (int j = 0; j < grid.n; ++j)
      for (int i = 0; i < grid.n; ++i) {
        const double x = grid.coord(i), y = grid.coord(j), z = grid.coord(k);
        const double r = std::sqrt(x * x + y * y + z * z);
        const std::size_t idx = grid.index(i, j, k);
        fr.r[idx] = r;
        fr.omega[0][idx] = x / r;
        fr.omega[1][idx] = y / r;
        fr.omega[2][idx] = z / r;
      }
  return fr;
}

}  // namespace ekss
