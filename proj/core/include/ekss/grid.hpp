#pragma once

#include <array>
#include <cstddef>
#include <new>
#include <span>
#include <vector>

namespace ekss {

// Uniform periodic grid on the box [-L, L)^3 with n points per axis.
// With `offset` the samples sit at cell centres, x_j = -L + (j + 1/2) dx,
// so that no sample lands on the origin.
struct GridSpec {
  int n = 64;
  double L = 8.0;
  bool offset = true;

  void validate() const;

  double dx() const { return 2.0 * L / n; }
  double cell_volume() const { double h = dx(); return h * h * h; }
  double box_volume() const { double s = 2.0 * L; return s * s * s; }
  std::size_t size() const { return static_cast<std::size_t>(n) * n * n; }
  double coord(int j) const { return -L + (j + (offset ? 0.5 : 0.0)) * dx(); }
  // x-fastest ordering.
  std::size_t index(int i, int j, int k) const {
    return static_cast<std::size_t>(i) + static_cast<std::size_t>(n) * (j + static_cast<std::size_t>(n) * k);
  }
  // Number of complex coefficients in the half spectrum.
  std::size_t spectral_size() const { return static_cast<std::size_t>(n) * n * (n / 2 + 1); }

  bool operator==(const GridSpec&) const = default;
};

// 64-byte aligned storage so FFT plans can use SIMD kernels on any buffer.
template <class T>
struct AlignedAllocator {
  using value_type = T;
  static constexpr std::align_val_t alignment{64};

  AlignedAllocator() noexcept = default;
  template <class U>
  AlignedAllocator(const AlignedAllocator<U>&) noexcept {}

  T* allocate(std::size_t count) {
    return static_cast<T*>(::operator new(count * sizeof(T), alignment));
  }
  void deallocate(T* p, std::size_t) noexcept { ::operator delete(p, alignment); }

  template <class U>
  bool operator==(const AlignedAllocator<U>&) const noexcept { return true; }
};

template <class T>
using AlignedVector = std::vector<T, AlignedAllocator<T>>;

class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(const GridSpec& grid, double value = 0.0);

  const GridSpec& grid() const { return grid_; }
  std::size_t size() const { return data_.size(); }
  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }
  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  double& operator[](std::size_t idx) { return data_[idx]; }
  double operator[](std::size_t idx) const { return data_[idx]; }
  double& at(int i, int j, int k) { return data_[grid_.index(i, j, k)]; }
  double at(int i, int j, int k) const { return data_[grid_.index(i, j, k)]; }

  ScalarField& operator+=(const ScalarField& other);
  ScalarField& operator-=(const ScalarField& other);
  ScalarField& operator*=(double s);
  // this += s * other
  ScalarField& axpy(double s, const ScalarField& other);
  // Pointwise product.
  ScalarField& multiply(const ScalarField& other);

  void fill(double value);

 private:
  GridSpec grid_{};
  AlignedVector<double> data_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double s, ScalarField a);
ScalarField operator*(ScalarField a, const ScalarField& b);

class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(const GridSpec& grid, double value = 0.0);
  VectorField(ScalarField x, ScalarField y, ScalarField z);

  const GridSpec& grid() const { return comp_[0].grid(); }
  ScalarField& operator[](int c) { return comp_[c]; }
  const ScalarField& operator[](int c) const { return comp_[c]; }

  VectorField& operator+=(const VectorField& other);
  VectorField& operator-=(const VectorField& other);
  VectorField& operator*=(double s);
  VectorField& axpy(double s, const VectorField& other);
  // Multiply every component by a scalar field.
  VectorField& scale(const ScalarField& s);

 private:
  std::array<ScalarField, 3> comp_;
};

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(double s, VectorField a);

// grad[j][m] = d_m u^j
using TensorField = std::array<std::array<ScalarField, 3>, 3>;

template <class Fn>
ScalarField sample(const GridSpec& grid, Fn&& fn) {
  ScalarField f(grid);
  for (int k = 0; k < grid.n; ++k) {
    const double z = grid.coord(k);
    for (int j = 0; j < grid.n; ++j) {
      const double y = grid.coord(j);
      for (int i = 0; i < grid.n; ++i) f.at(i, j, k) = fn(grid.coord(i), y, z);
    }
  }
  return f;
}

template <class Fn>
VectorField sample_vector(const GridSpec& grid, Fn&& fn) {
  VectorField u(grid);
  for (int k = 0; k < grid.n; ++k) {
    const double z = grid.coord(k);
    for (int j = 0; j < grid.n; ++j) {
      const double y = grid.coord(j);
      for (int i = 0; i < grid.n; ++i) {
        const std::array<double, 3> v = fn(grid.coord(i), y, z);
        const std::size_t idx = grid.index(i, j, k);
        u[0][idx] = v[0];
        u[1][idx] = v[1];
        u[2][idx] = v[2];
      }
    }
  }
  return u;
}

// Rectangle rule: sum of samples times the cell volume.
double integrate(const ScalarField& f);
double inner(const ScalarField& a, const ScalarField& b);
double inner(const VectorField& a, const VectorField& b);
double norm_l2(const ScalarField& f);
double norm_l2(const VectorField& u);
double norm_l2(const TensorField& g);
double max_abs(const ScalarField& f);
// Pointwise Euclidean length.
ScalarField magnitude(const VectorField& u);
ScalarField dot(const VectorField& a, const VectorField& b);
double mean(const ScalarField& f);

// Throws ValidationError naming the first non-finite sample.
void require_finite(const ScalarField& f, const char* what);
void require_finite(const VectorField& u, const char* what);
bool all_finite(const VectorField& u);

void require_same_grid(const GridSpec& a, const GridSpec& b, const char* what);

}  // namespace ekss
