#include "ekss/hodge.hpp"

#include <algorithm>
#include <cmath>

#include "ekss/errors.hpp"
#include "ekss/random_fields.hpp"
#include "ekss/weights.hpp"

namespace ekss {

namespace {

double rms(const ScalarField& f) {
  double s = 0.0;
  for (double v : f.values()) s += v * v;
  return std::sqrt(s / static_cast<double>(f.size()));
}

void require_zero_mean(const ScalarField& f, double scale, const char* msg) {
  if (std::abs(mean(f)) > 1e-10 * scale) throw ValidationError(msg);
}

}  // namespace

SpectralHodgePair hodge_project(const SpectralVectorField& U) {
  const GridSpec& g = U.grid();
  SpectralHodgePair p{SpectralVectorField(g), SpectralVectorField(g)};
  for_each_mode(g, [&](const Mode& md) {
    const std::size_t i = md.idx;
    const double kd2 = md.kd[0] * md.kd[0] + md.kd[1] * md.kd[1] + md.kd[2] * md.kd[2];
    if (md.k2 == 0.0) return;
    if (kd2 == 0.0) {
      for (int c = 0; c < 3; ++c) p.df[c][i] = U[c][i];
      return;
    }
    const cplx proj = (md.kd[0] * U[0][i] + md.kd[1] * U[1][i] + md.kd[2] * U[2][i]) / kd2;
    for (int c = 0; c < 3; ++c) {
      p.cf[c][i] = md.kd[c] * proj;
      p.df[c][i] = U[c][i] - p.cf[c][i];
    }
  });
  return p;
}

HodgePair hodge_decompose(const VectorField& u) {
  const double scale = std::sqrt((rms(u[0]) * rms(u[0]) + rms(u[1]) * rms(u[1]) + rms(u[2]) * rms(u[2])));
  for (int c = 0; c < 3; ++c)
    require_zero_mean(u[c], scale, "harmonic (constant) component present; decomposition not unique on the torus");
  const SpectralHodgePair p = hodge_project(fft_forward(u));
  return {fft_inverse(p.cf), fft_inverse(p.df)};
}

ScalarField riesz(int axis, const ScalarField& f) {
  require_zero_mean(f, rms(f), "riesz: input must have zero mean");
  SpectralField F = fft_forward(f);
  for_each_mode(f.grid(), [&](const Mode& md) {
    const double kd2 = md.kd[0] * md.kd[0] + md.kd[1] * md.kd[1] + md.kd[2] * md.kd[2];
    F[md.idx] *= kd2 > 0.0 ? cplx(0.0, md.kd[axis] / std::sqrt(kd2)) : cplx(0.0);
  });
  return fft_inverse(F);
}

double weighted_riesz_ratio(const ScalarField& f, int axis, double delta) {
  if (!(delta > 0.0 && delta < 0.5)) throw ValidationError("weighted Riesz check needs 0 < delta < 1/2");
  const WeightSpec w{WeightKind::Kss1, delta};
  const double den = weighted_l2(f, w);
  if (!(den > 0.0)) throw ValidationError("weighted Riesz ratio undefined for the zero field");
  return weighted_l2(riesz(axis, f), w) / den;
}

RieszStats weighted_riesz_ensemble(const GridSpec& grid, double delta, std::uint64_t first_seed, int count,
                                   int bins) {
  if (!(delta > 0.0 && delta < 0.5)) throw ValidationError("weighted Riesz check needs 0 < delta < 1/2");
  if (count <= 0) throw ValidationError("weighted Riesz ensemble needs at least one seed");
  const WeightTable table = weight_squared_table(grid, WeightSpec{WeightKind::Kss1, delta});
  RieszStats st;
  for (int s = 0; s < count; ++s) {
    const std::uint64_t seed = first_seed + static_cast<std::uint64_t>(s);
    const ScalarField f = random_smooth_scalar(grid, seed);
    const double den = std::sqrt(weighted_integral(table, f * f));
    for (int axis = 0; axis < 3; ++axis) {
      const ScalarField rf = riesz(axis, f);
      st.ratios.push_back(std::sqrt(weighted_integral(table, rf * rf)) / den);
      st.seeds.push_back(seed);
    }
  }
  st.max = *std::max_element(st.ratios.begin(), st.ratios.end());
  double sum = 0.0;
  for (double r : st.ratios) sum += r;
  st.mean = sum / static_cast<double>(st.ratios.size());
  st.hist_max = st.max * 1.05;
  st.histogram.assign(static_cast<std::size_t>(bins), 0);
  for (double r : st.ratios) {
    const int b = std::min(bins - 1, static_cast<int>(r / st.hist_max * bins));
    ++st.histogram[static_cast<std::size_t>(b)];
  }
  return st;
}

}  // namespace ekss
