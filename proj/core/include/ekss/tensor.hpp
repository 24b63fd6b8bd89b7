#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ekss {

using Mat3 = std::array<std::array<double, 3>, 3>;

// h^{ij}_{lm} stored as (i, j, l, m), last index fastest.
struct Tensor4 {
  std::array<double, 81> c{};

  static constexpr int index(int i, int j, int l, int m) { return ((i * 3 + j) * 3 + l) * 3 + m; }
  double& operator()(int i, int j, int l, int m) { return c[index(i, j, l, m)]; }
  double operator()(int i, int j, int l, int m) const { return c[index(i, j, l, m)]; }

  // First (i, j, l, m) with h^{ij}_{lm} != h^{ji}_{ml}, if any.
  std::optional<std::array<int, 4>> symmetry_violation() const;
  // sum |h^{ij}_{lm}|
  double abs_sum() const;
};

// g^{ijk}_{lmn} stored as (i, j, k, l, m, n), last index fastest.
class Tensor6 {
 public:
  static constexpr int index(int i, int j, int k, int l, int m, int n) {
    return ((((i * 3 + j) * 3 + k) * 3 + l) * 3 + m) * 3 + n;
  }

  double operator()(int i, int j, int k, int l, int m, int n) const { return c_[index(i, j, k, l, m, n)]; }
  const std::array<double, 729>& coefficients() const { return c_; }

  static Tensor6 from_coefficients(const std::array<double, 729>& c) {
    Tensor6 t;
    t.c_ = c;
    return t;
  }

  // Image under simultaneous rotation of all six indices.
  Tensor6 rotated(const Mat3& R) const;
  // Exact check of g^{ijk}_{lmn} = g^{jik}_{mln} = g^{kji}_{nml}.
  bool has_pair_symmetry() const;
  double max_abs() const;
  bool is_zero() const { return max_abs() == 0.0; }

  struct Entry {
    int il;  // i * 3 + l
    int jm;  // j * 3 + m
    int kn;  // k * 3 + n
    double value;
  };
  // Nonzero coefficients, grouped by column pair.
  std::vector<Entry> nonzeros() const;

  // Plain text: header line with the index order, then 729 values.
  void write(std::ostream& os) const;
  static Tensor6 read(std::istream& is);

 private:
  std::array<double, 729> c_{};
};

// The 15 ways of pairing the six index slots (i, j, k, l, m, n) into three
// Kronecker deltas. Entry 0 is d_il d_jm d_kn.
inline constexpr int kIsotropicBasisSize = 15;
using Pairing = std::array<std::array<int, 2>, 3>;
const std::array<Pairing, kIsotropicBasisSize>& isotropic_pairings();
std::string pairing_label(const Pairing& p);

// sum_p d[p] * (pairing p), averaged over permutations of the column pairs
// (i,l), (j,m), (k,n). Throws ValidationError unless d.size() == 15.
Tensor6 isotropic_g(const std::vector<double>& d);

// Dimension of the span of the 15 symmetrized basis tensors.
int symmetrized_basis_rank();

// Default medium nonlinearity: d_il d_jm d_kn, so that N(u,u) = grad((div u)^2).
Tensor6 default_g();

}  // namespace ekss
