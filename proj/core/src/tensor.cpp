#include "ekss/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "ekss/errors.hpp"

namespace ekss {

std::optional<std::array<int, 4>> Tensor4::symmetry_violation() const {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int l = 0; l < 3; ++l)
        for (int m = 0; m < 3; ++m)
          if ((*this)(i, j, l, m) != (*this)(j, i, m, l)) return std::array<int, 4>{i, j, l, m};
  return std::nullopt;
}

double Tensor4::abs_sum() const {
  double s = 0.0;
  for (double v : c) s += std::abs(v);
  return s;
}

namespace {

using Tuple = std::array<int, 6>;

Tuple unpack(int idx) {
  Tuple t{};
  for (int p = 5; p >= 0; --p) {
    t[p] = idx % 3;
    idx /= 3;
  }
  return t;
}

int pack(const Tuple& t) { return Tensor6::index(t[0], t[1], t[2], t[3], t[4], t[5]); }

// Column c holds slots (c, c + 3). Moves column c of t to column perm[c].
Tuple permute_columns(const Tuple& t, const std::array<int, 3>& perm) {
  Tuple out{};
  for (int c = 0; c < 3; ++c) {
    out[perm[c]] = t[c];
    out[perm[c] + 3] = t[c + 3];
  }
  return out;
}

void enumerate_pairings(std::array<bool, 6>& used, Pairing& cur, int depth, std::vector<Pairing>& out) {
  if (depth == 3) {
    out.push_back(cur);
    return;
  }
  int first = 0;
  while (used[first]) ++first;
  used[first] = true;
  for (int second = first + 1; second < 6; ++second) {
    if (used[second]) continue;
    used[second] = true;
    cur[depth] = {first, second};
    enumerate_pairings(used, cur, depth + 1, out);
    used[second] = false;
  }
  used[first] = false;
}

std::array<double, 729> pairing_tensor(const Pairing& p) {
  std::array<double, 729> c{};
  for (int idx = 0; idx < 729; ++idx) {
    const Tuple t = unpack(idx);
    bool on = true;
    for (const auto& pr : p) on = on && t[pr[0]] == t[pr[1]];
    c[idx] = on ? 1.0 : 0.0;
  }
  return c;
}

std::array<double, 729> symmetrize(const std::array<double, 729>& raw) {
  static constexpr std::array<std::array<int, 3>, 6> perms{
      {{0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}}};
  std::array<double, 729> out{};
  for (int idx = 0; idx < 729; ++idx) {
    const Tuple t = unpack(idx);
    std::array<int, 6> orbit{};
    for (int s = 0; s < 6; ++s) orbit[s] = pack(permute_columns(t, perms[s]));
    // Summing in sorted order makes every member of an orbit bit-identical.
    std::sort(orbit.begin(), orbit.end());
    double sum = 0.0;
    for (int o : orbit) sum += raw[o];
    out[idx] = sum / 6.0;
  }
  return out;
}

}  // namespace

const std::array<Pairing, kIsotropicBasisSize>& isotropic_pairings() {
  static const std::array<Pairing, kIsotropicBasisSize> table = [] {
    std::vector<Pairing> all;
    std::array<bool, 6> used{};
    Pairing cur{};
    enumerate_pairings(used, cur, 0, all);
    const Pairing columns{{{0, 3}, {1, 4}, {2, 5}}};
    auto it = std::find(all.begin(), all.end(), columns);
    std::rotate(all.begin(), it, it + 1);
    std::array<Pairing, kIsotropicBasisSize> out{};
    std::copy(all.begin(), all.end(), out.begin());
    return out;
  }();
  return table;
}

std::string pairing_label(const Pairing& p) {
  static constexpr char names[] = {'i', 'j', 'k', 'l', 'm', 'n'};
  std::string s;
  for (const auto& pr : p) {
    if (!s.empty()) s += '.';
    s += names[pr[0]];
    s += names[pr[1]];
  }
  return s;
}

Tensor6 isotropic_g(const std::vector<double>& d) {
  if (d.size() != static_cast<std::size_t>(kIsotropicBasisSize))
    throw ValidationError("isotropic_g: expected " + std::to_string(kIsotropicBasisSize) +
                          " parameters, got " + std::to_string(d.size()));
  std::array<double, 729> raw{};
  const auto& pairs = isotropic_pairings();
  for (int p = 0; p < kIsotropicBasisSize; ++p) {
    if (d[p] == 0.0) continue;
    const auto basis = pairing_tensor(pairs[p]);
    for (int idx = 0; idx < 729; ++idx) raw[idx] += d[p] * basis[idx];
  }
  return Tensor6::from_coefficients(symmetrize(raw));
}

int symmetrized_basis_rank() {
  std::vector<std::array<double, 729>> ortho;
  for (const auto& p : isotropic_pairings()) {
    auto v = symmetrize(pairing_tensor(p));
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : ortho) {
        double dot = 0.0;
        for (int i = 0; i < 729; ++i) dot += v[i] * q[i];
        for (int i = 0; i < 729; ++i) v[i] -= dot * q[i];
      }
    double nrm = 0.0;
    for (double x : v) nrm += x * x;
    nrm = std::sqrt(nrm);
    if (nrm > 1e-10) {
      for (double& x : v) x /= nrm;
      ortho.push_back(v);
    }
  }
  return static_cast<int>(ortho.size());
}

Tensor6 default_g() {
  std::vector<double> d(kIsotropicBasisSize, 0.0);
  d[0] = 1.0;
  return isotropic_g(d);
}

Tensor6 Tensor6::rotated(const Mat3& R) const {
  std::array<double, 729> cur = c_;
  for (int slot = 0; slot < 6; ++slot) {
    std::array<double, 729> next{};
    for (int idx = 0; idx < 729; ++idx) {
      if (cur[idx] == 0.0) continue;
      Tuple t = unpack(idx);
      const int src = t[slot];
      for (int a = 0; a < 3; ++a) {
        t[slot] = a;
        next[pack(t)] += R[a][src] * cur[idx];
      }
    }
    cur = next;
  }
  return from_coefficients(cur);
}

bool Tensor6::has_pair_symmetry() const {
  for (int idx = 0; idx < 729; ++idx) {
    const Tuple t = unpack(idx);
    const double v = c_[idx];
    if (v != c_[pack(permute_columns(t, {1, 0, 2}))]) return false;
    if (v != c_[pack(permute_columns(t, {2, 1, 0}))]) return false;
  }
  return true;
}

double Tensor6::max_abs() const {
  double m = 0.0;
  for (double v : c_) m = std::max(m, std::abs(v));
  return m;
}

std::vector<Tensor6::Entry> Tensor6::nonzeros() const {
  std::vector<Entry> out;
  for (int idx = 0; idx < 729; ++idx) {
    if (c_[idx] == 0.0) continue;
    const Tuple t = unpack(idx);
    out.push_back({t[0] * 3 + t[3], t[1] * 3 + t[4], t[2] * 3 + t[5], c_[idx]});
  }
  std::stable_sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return a.il < b.il; });
  return out;
}

void Tensor6::write(std::ostream& os) const {
  os << "# g[i][j][k][l][m][n], n fastest, 729 values\n";
  os.precision(17);
  for (int idx = 0; idx < 729; ++idx) os << c_[idx] << (idx % 9 == 8 ? '\n' : ' ');
}

Tensor6 Tensor6::read(std::istream& is) {
  std::string line;
  std::ostringstream body;
  while (std::getline(is, line)) {
    if (!line.empty() && line[0] == '#') continue;
    body << line << ' ';
  }
  std::istringstream vals(body.str());
  std::array<double, 729> c{};
  for (int idx = 0; idx < 729; ++idx)
    if (!(vals >> c[idx])) throw ValidationError("Tensor6: expected 729 coefficients");
  return from_coefficients(c);
}

}  // namespace ekss
