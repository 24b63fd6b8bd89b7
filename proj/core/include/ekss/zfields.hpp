#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ekss/grid.hpp"
#include "ekss/spectral.hpp"

namespace ekss {

// Z_0..Z_2 = d_1..d_3, Z_3 = rot(1,2), Z_4 = rot(1,3), Z_5 = rot(2,3), where
// rot(i,j) u = (x_i d_j - x_j d_i) u + U_ij u and (U_ij u) = e_i u_j - e_j u_i.
inline constexpr int kNumZ = 6;
std::string z_name(int z);

// Fraction of |u|^2 outside the ball |x| <= radius_fraction * L.
double outside_fraction(const VectorField& u, double radius_fraction = 0.6);

struct Checked {
  VectorField value;
  std::optional<std::string> warning;
};

// Axes are 0-based with i != j. Attaches a warning when more than 1e-8 of the
// energy sits outside |x| <= 0.6 L, where coordinate multiplication stops
// being meaningful on the torus.
Checked rotation_field(int i, int j, const VectorField& u);
// Same operator from a precomputed gradient tensor, no support check.
VectorField rotation_from_gradient(int i, int j, const VectorField& u, const TensorField& grad);

struct ZWord {
  std::vector<int> letters;  // letters[0] is applied first
  VectorField value;
};

// Pre-order depth-first visit of every ordered word of length <= k (no
// deduplication). `fn` receives the letters and Z^a u.
using ZVisitor = std::function<void(const std::vector<int>&, const VectorField&)>;
void visit_z_words(const VectorField& u, int k, const ZVisitor& fn, bool rotations_only = false,
                   bool gradients_only = false);

// Same traversal, also handing out grad Z^a u for every word.
using ZGradVisitor = std::function<void(const std::vector<int>&, const VectorField&, const TensorField&)>;
void visit_z_words_with_gradient(const VectorField& u, int k, const ZGradVisitor& fn, bool rotations_only = false,
                                 bool gradients_only = false);

// All Z^a u with |a| <= k. Refuses k > 3.
std::vector<ZWord> z_derivatives(const VectorField& u, int k);

// Number of words of length <= k over an alphabet of `letters` symbols.
std::size_t word_count(int letters, int k);

}  // namespace ekss
