#pragma once

#include <array>
#include <complex>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <numbers>

#include "ekss/grid.hpp"

namespace ekss {

using cplx = std::complex<double>;

// Half spectrum of a real field. Storage is the raw r2c layout divided by
// n^3: mx in [0, n/2] fastest, then my, then mz (both in [0, n)).
// coefficient() returns the Fourier coefficient c(k) of
//   f(x) = sum_k c(k) exp(i k.x),
// which differs from the stored value by the phase of the grid origin.
class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(const GridSpec& grid);

  const GridSpec& grid() const { return grid_; }
  std::size_t size() const { return data_.size(); }
  cplx* data() { return data_.data(); }
  const cplx* data() const { return data_.data(); }
  cplx& operator[](std::size_t idx) { return data_[idx]; }
  const cplx& operator[](std::size_t idx) const { return data_[idx]; }

  // Integer wavevector components in (-n/2, n/2]. Any sign is accepted; the
  // value is obtained from conjugate symmetry when mx < 0.
  cplx coefficient(int m1, int m2, int m3) const;
  // Sets c(k) and, where the half spectrum stores both, c(-k) = conj(c(k)).
  void set_coefficient(int m1, int m2, int m3, cplx value);

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator*=(double s);

 private:
  GridSpec grid_{};
  AlignedVector<cplx> data_;
};

struct SpectralVectorField {
  std::array<SpectralField, 3> comp;

  SpectralVectorField() = default;
  explicit SpectralVectorField(const GridSpec& grid) : comp{SpectralField(grid), SpectralField(grid), SpectralField(grid)} {}
  const GridSpec& grid() const { return comp[0].grid(); }
  SpectralField& operator[](int c) { return comp[c]; }
  const SpectralField& operator[](int c) const { return comp[c]; }
};

// Signed integer mode for storage index j along a full axis.
inline int signed_mode(int j, int n) { return j <= n / 2 ? j : j - n; }

struct Mode {
  std::size_t idx;
  std::array<int, 3> m;       // signed integer wavevector
  std::array<double, 3> k;    // physical wavevector m * pi / L
  std::array<double, 3> kd;   // derivative symbol: k with Nyquist components zeroed
  double k2;                  // |k|^2
  double weight;              // 1 for self-conjugate columns (mx = 0, n/2), 2 otherwise
};

// Visits every stored mode of the half spectrum.
template <class Fn>
void for_each_mode(const GridSpec& grid, Fn&& fn) {
  const int n = grid.n;
  const int nh = n / 2 + 1;
  const double s = std::numbers::pi / grid.L;
  Mode md{};
  for (int c = 0; c < n; ++c) {
    const int m3 = signed_mode(c, n);
    for (int b = 0; b < n; ++b) {
      const int m2 = signed_mode(b, n);
      for (int a = 0; a < nh; ++a) {
        md.idx = static_cast<std::size_t>(a) + static_cast<std::size_t>(nh) * (b + static_cast<std::size_t>(n) * c);
        md.m = {a, m2, m3};
        for (int d = 0; d < 3; ++d) {
          md.k[d] = md.m[d] * s;
          md.kd[d] = (std::abs(md.m[d]) == n / 2) ? 0.0 : md.k[d];
        }
        md.k2 = md.k[0] * md.k[0] + md.k[1] * md.k[1] + md.k[2] * md.k[2];
        md.weight = (a == 0 || a == n / 2) ? 1.0 : 2.0;
        fn(md);
      }
    }
  }
}

SpectralField fft_forward(const ScalarField& f);
ScalarField fft_inverse(const SpectralField& F);
SpectralVectorField fft_forward(const VectorField& u);
VectorField fft_inverse(const SpectralVectorField& U);

// (2L)^3 sum |c(k)|^2 over the full spectrum; equals the grid L2 norm squared.
double spectral_norm2(const SpectralField& F);

ScalarField partial(const ScalarField& f, int axis);
VectorField gradient(const ScalarField& f);
ScalarField divergence(const VectorField& u);
VectorField curl(const VectorField& u);
ScalarField laplacian(const ScalarField& f);
VectorField laplacian(const VectorField& u);
// Requires |mean f| <= 1e-10 * rms(f); the result has zero mean.
ScalarField inverse_laplacian(const ScalarField& f);
VectorField inverse_laplacian(const VectorField& u);
// grad[j][m] = d_m u^j (3 forward and 9 inverse transforms).
TensorField gradient_tensor(const VectorField& u);
TensorField gradient_tensor(const SpectralVectorField& U);
// sqrt of the sum of |k|^{2s} |c(k)|^2 (2L)^3, the homogeneous Sobolev seminorm.
double homogeneous_sobolev_norm(const ScalarField& f, double s);

// Spherical two-thirds mask: keeps modes with |m| <= n/3.
bool dealias_keep(const Mode& md, int n);
void dealias(SpectralField& F);
void dealias(SpectralVectorField& U);
ScalarField dealiased(const ScalarField& f);

// r = |x| and omega = x / r on an offset grid.
struct RadialFrames {
  ScalarField r;
  VectorField omega;
};
RadialFrames radial_frames(const GridSpec& grid);
// Centered coordinate x_axis at every sample.
ScalarField coordinate(const GridSpec& grid, int axis);

}  // namespace ekss
