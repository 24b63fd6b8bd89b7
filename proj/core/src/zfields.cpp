#include "ekss/zfields.hpp"

#include <cmath>

#include "ekss/errors.hpp"

namespace ekss {

namespace {

constexpr std::array<std::array<int, 2>, 3> kRotAxes{{{0, 1}, {0, 2}, {1, 2}}};

void visit(const VectorField& w, std::vector<int>& word, int remaining, const std::vector<int>& alphabet,
           const ZVisitor* plain, const ZGradVisitor* with_grad) {
  if (plain) (*plain)(word, w);
  if (remaining == 0 && !with_grad) return;
  const TensorField g = gradient_tensor(w);
  if (with_grad) (*with_grad)(word, w, g);
  if (remaining == 0) return;
  for (int z : alphabet) {
    VectorField child(w.grid());
    if (z < 3) {
      for (int c = 0; c < 3; ++c) child[c] = g[c][z];
    } else {
      const auto [i, j] = kRotAxes[static_cast<std::size_t>(z - 3)];
      child = rotation_from_gradient(i, j, w, g);
    }
    word.push_back(z);
    visit(child, word, remaining - 1, alphabet, plain, with_grad);
    word.pop_back();
  }
}

}  // namespace

std::string z_name(int z) {
  static const char* names[] = {"d1", "d2", "d3", "rot12", "rot13", "rot23"};
  return (z >= 0 && z < kNumZ) ? names[z] : "?";
}

double outside_fraction(const VectorField& u, double radius_fraction) {
  const GridSpec& g = u.grid();
  const double R2 = std::pow(radius_fraction * g.L, 2);
  double total = 0.0, outside = 0.0;
  for (int k = 0; k < g.n; ++k)
    for (int j = 0; j < g.n; ++j)
      for (int i = 0; i < g.n; ++i) {
        const double x = g.coord(i), y = g.coord(j), z = g.coord(k);
        const std::size_t idx = g.index(i, j, k);
        const double e = u[0][idx] * u[0][idx] + u[1][idx] * u[1][idx] + u[2][idx] * u[2][idx];
        total += e;
        if (x * x + y * y + z * z > R2) outside += e;
      }
  return total > 0.0 ? outside / total : 0.0;
}

VectorField rotation_from_gradient(int i, int j, const VectorField& u, const TensorField& grad) {
  if (i == j || i < 0 || j < 0 || i > 2 || j > 2) throw ValidationError("rotation_field: need two distinct axes");
  const GridSpec& g = u.grid();
  VectorField out(g);
  for (int k = 0; k < g.n; ++k)
    for (int b = 0; b < g.n; ++b)
      for (int a = 0; a < g.n; ++a) {
        const std::array<double, 3> x{g.coord(a), g.coord(b), g.coord(k)};
        const std::size_t idx = g.index(a, b, k);
        for (int c = 0; c < 3; ++c) out[c][idx] = x[i] * grad[c][j][idx] - x[j] * grad[c][i][idx];
        out[i][idx] += u[j][idx];
        out[j][idx] -= u[i][idx];
      }
  return out;
}

Checked rotation_field(int i, int j, const VectorField& u) {
  Checked r{rotation_from_gradient(i, j, u, gradient_tensor(u)), std::nullopt};
  const double frac = outside_fraction(u, 0.6);
  if (frac > 1e-8)
    r.warning = "support check: energy fraction " + std::to_string(frac) + " outside |x| <= 0.6 L";
  return r;
}

static std::vector<int> make_alphabet(int k, bool rotations_only, bool gradients_only) {
  if (k < 0) throw ValidationError("z words: negative order");
  std::vector<int> alphabet;
  for (int z = 0; z < kNumZ; ++z) {
    if (rotations_only && z < 3) continue;
    if (gradients_only && z >= 3) continue;
    alphabet.push_back(z);
  }
  return alphabet;
}

void visit_z_words(const VectorField& u, int k, const ZVisitor& fn, bool rotations_only, bool gradients_only) {
  const auto alphabet = make_alphabet(k, rotations_only, gradients_only);
  std::vector<int> word;
  visit(u, word, k, alphabet, &fn, nullptr);
}

void visit_z_words_with_gradient(const VectorField& u, int k, const ZGradVisitor& fn, bool rotations_only,
                                 bool gradients_only) {
  const auto alphabet = make_alphabet(k, rotations_only, gradients_only);
  std::vector<int> word;
  visit(u, word, k, alphabet, nullptr, &fn);
}

std::vector<ZWord> z_derivatives(const VectorField& u, int k) {
  if (k > 3) throw ValidationError("z_derivatives: order above 3 refused (cost guard)");
  std::vector<ZWord> out;
  visit_z_words(u, k, [&](const std::vector<int>& w, const VectorField& f) { out.push_back({w, f}); });
  return out;
}

std::size_t word_count(int letters, int k) {
  std::size_t total = 0, p = 1;
  for (int i = 0; i <= k; ++i) {
    total += p;
    p *= static_cast<std::size_t>(letters);
  }
  return total;
}

}  // namespace ekss
