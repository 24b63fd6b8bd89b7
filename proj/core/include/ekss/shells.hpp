#pragma once

#include <array>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "ekss/grid.hpp"

namespace ekss {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Spherical resampling grid: n/2 shells at r_s = (s + 1/2) dx out to L, and a
// 2 n_theta x n_theta latitude-longitude grid with sin(theta) quadrature weights
// (unnormalized, the weights sum to about 4 pi).
struct ShellGrid {
  std::vector<double> radii;
  double dr = 0.0;
  std::vector<std::array<double, 3>> directions;
  std::vector<double> weights;
};

ShellGrid make_shell_grid(const GridSpec& grid, int n_theta = 32);

// Periodic trilinear interpolation at a physical point.
double interpolate(const ScalarField& f, double x, double y, double z);

// ||u(r .)||_{L^q(S^2)} of the pointwise length |u|; q = kInf gives the max.
double angular_norm(const VectorField& u, double r, double q, const ShellGrid& shells);
// Angular norm on every shell of `shells`.
std::vector<double> shell_profile(const VectorField& u, double q, const ShellGrid& shells);

struct MixedNorm {
  double value = 0.0;
  std::optional<std::string> warning;
};

// ||u||_{L^p_r L^q_omega} with r^2 dr radial measure; p in {2, inf}, q in [2, inf).
MixedNorm mixed_norm(const VectorField& u, double p, double q, int n_theta = 32);

}  // namespace ekss
