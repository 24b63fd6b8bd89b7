#pragma once

#include <cstdint>

#include "ekss/grid.hpp"

namespace ekss {

// Zero-mean Gaussian random field with spectrum ~ exp(-|k|^2 ell^2 / 4),
// no Nyquist content, unit rms. A seed gives the same continuous field on
// every grid with n <= 128 that resolves it.
ScalarField random_smooth_scalar(const GridSpec& grid, std::uint64_t seed, double ell = 1.0);
VectorField random_smooth_vector(const GridSpec& grid, std::uint64_t seed, double ell = 1.0);

// Smooth random field multiplied by exp(-r^2 / (2 width^2)); not zero mean.
ScalarField random_localized_scalar(const GridSpec& grid, std::uint64_t seed, double ell = 1.0,
                                    double width = 1.0);
VectorField random_localized_vector(const GridSpec& grid, std::uint64_t seed, double ell = 1.0,
                                    double width = 1.0);

// exp(-|x - c|^2 / (2 sigma^2))
ScalarField gaussian(const GridSpec& grid, double sigma, double cx = 0.0, double cy = 0.0, double cz = 0.0);

}  // namespace ekss
