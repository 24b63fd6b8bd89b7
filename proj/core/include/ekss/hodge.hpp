#pragma once

#include <cstdint>
#include <vector>

#include "ekss/grid.hpp"
#include "ekss/spectral.hpp"

namespace ekss {

struct HodgePair {
  VectorField cf;  // curl-free part
  VectorField df;  // divergence-free part
};

struct SpectralHodgePair {
  SpectralVectorField cf;
  SpectralVectorField df;
};

// u_cf = grad div Lap^{-1} u, u_df = u - u_cf. Throws ValidationError when u
// carries a mean (harmonic) component above 1e-10 of its rms.
HodgePair hodge_decompose(const VectorField& u);
// Projection on coefficients. The k = 0 mode is dropped from both parts.
SpectralHodgePair hodge_project(const SpectralVectorField& U);

// Fourier multiplier i k_i / |k| with the zero mode removed.
ScalarField riesz(int axis, const ScalarField& f);

struct RieszStats {
  double max = 0.0;
  double mean = 0.0;
  std::vector<double> ratios;
  std::vector<std::uint64_t> seeds;
  std::vector<int> histogram;  // counts over [0, hist_max) in equal bins
  double hist_max = 0.0;
};

// ||w R_axis f|| / ||w f|| with w = <r>^{-delta} r^{-1/2+delta}.
double weighted_riesz_ratio(const ScalarField& f, int axis, double delta);
// Ensemble over smooth zero-mean random fields, seeds first_seed .. first_seed+count-1,
// all three axes per field.
RieszStats weighted_riesz_ensemble(const GridSpec& grid, double delta, std::uint64_t first_seed, int count,
                                   int bins = 20);

}  // namespace ekss
