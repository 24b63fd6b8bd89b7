#include "ekss/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ekss/errors.hpp"

namespace ekss {

void GridSpec::validate() const {
  if (n < 8 || n % 2 != 0)
    throw ValidationError("grid: n must be even and at least 8, got " + std::to_string(n));
  if (!(L > 0.0) || !std::isfinite(L))
    throw ValidationError("grid: L must be positive and finite");
}

ScalarField::ScalarField(const GridSpec& grid, double value) : grid_(grid) {
  grid_.validate();
  data_.assign(grid_.size(), value);
}

ScalarField& ScalarField::operator+=(const ScalarField& other) {
  require_same_grid(grid_, other.grid_, "scalar +=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
  require_same_grid(grid_, other.grid_, "scalar -=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ScalarField& ScalarField::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

ScalarField& ScalarField::axpy(double s, const ScalarField& other) {
  require_same_grid(grid_, other.grid_, "scalar axpy");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += s * other.data_[i];
  return *this;
}

ScalarField& ScalarField::multiply(const ScalarField& other) {
  require_same_grid(grid_, other.grid_, "scalar multiply");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] *= other.data_[i];
  return *this;
}

void ScalarField::fill(double value) { std::fill(data_.begin(), data_.end(), value); }

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }
ScalarField operator*(ScalarField a, const ScalarField& b) { return a.multiply(b); }

VectorField::VectorField(const GridSpec& grid, double value)
    : comp_{ScalarField(grid, value), ScalarField(grid, value), ScalarField(grid, value)} {}

VectorField::VectorField(ScalarField x, ScalarField y, ScalarField z)
    : comp_{std::move(x), std::move(y), std::move(z)} {
  require_same_grid(comp_[0].grid(), comp_[1].grid(), "vector components");
  require_same_grid(comp_[0].grid(), comp_[2].grid(), "vector components");
}

VectorField& VectorField::operator+=(const VectorField& other) {
  for (int c = 0; c < 3; ++c) comp_[c] += other.comp_[c];
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& other) {
  for (int c = 0; c < 3; ++c) comp_[c] -= other.comp_[c];
  return *this;
}

VectorField& VectorField::operator*=(double s) {
  for (auto& c : comp_) c *= s;
  return *this;
}

VectorField& VectorField::axpy(double s, const VectorField& other) {
  for (int c = 0; c < 3; ++c) comp_[c].axpy(s, other.comp_[c]);
  return *this;
}

VectorField& VectorField::scale(const ScalarField& s) {
  for (auto& c : comp_) c.multiply(s);
  return *this;
}

VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
VectorField operator*(double s, VectorField a) { return a *= s; }

double integrate(const ScalarField& f) {
  double sum = 0.0;
  for (double v : f.values()) sum += v;
  return sum * f.grid().cell_volume();
}

double inner(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a.grid(), b.grid(), "inner");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum * a.grid().cell_volume();
}

double inner(const VectorField& a, const VectorField& b) {
  return inner(a[0], b[0]) + inner(a[1], b[1]) + inner(a[2], b[2]);
}

double norm_l2(const ScalarField& f) { return std::sqrt(inner(f, f)); }
double norm_l2(const VectorField& u) { return std::sqrt(inner(u, u)); }

double norm_l2(const TensorField& g) {
  double s = 0.0;
  for (const auto& row : g)
    for (const auto& c : row) s += inner(c, c);
  return std::sqrt(s);
}

double max_abs(const ScalarField& f) {
  double m = 0.0;
  for (double v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

ScalarField magnitude(const VectorField& u) {
  ScalarField out(u.grid());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = std::sqrt(u[0][i] * u[0][i] + u[1][i] * u[1][i] + u[2][i] * u[2][i]);
  return out;
}

ScalarField dot(const VectorField& a, const VectorField& b) {
  ScalarField out(a.grid());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = a[0][i] * b[0][i] + a[1][i] * b[1][i] + a[2][i] * b[2][i];
  return out;
}

double mean(const ScalarField& f) {
  double sum = 0.0;
  for (double v : f.values()) sum += v;
  return sum / static_cast<double>(f.size());
}

void require_finite(const ScalarField& f, const char* what) {
  const GridSpec& g = f.grid();
  for (std::size_t idx = 0; idx < f.size(); ++idx) {
    if (!std::isfinite(f[idx])) {
      const std::size_t n = static_cast<std::size_t>(g.n);
      throw ValidationError(std::string(what) + ": non-finite sample at index (" +
                            std::to_string(idx % n) + ", " + std::to_string((idx / n) % n) + ", " +
                            std::to_string(idx / (n * n)) + ")");
    }
  }
}

void require_finite(const VectorField& u, const char* what) {
  for (int c = 0; c < 3; ++c)
    require_finite(u[c], (std::string(what) + " component " + std::to_string(c)).c_str());
}

bool all_finite(const VectorField& u) {
  for (int c = 0; c < 3; ++c)
    for (double v : u[c].values())
      if (!std::isfinite(v)) return false;
  return true;
}

void require_same_grid(const GridSpec& a, const GridSpec& b, const char* what) {
  if (!(a == b)) throw ValidationError(std::string(what) + ": grid mismatch");
}

}  // namespace ekss
