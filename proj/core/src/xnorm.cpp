#include "ekss/xnorm.hpp"

#include <algorithm>
#include <cmath>

#include "ekss/errors.hpp"
#include "ekss/weights.hpp"
#include "ekss/zfields.hpp"

namespace ekss {

XNormBreakdown x_norm(const std::vector<HistorySample>& history, int k, double delta, XVariant variant) {
  if (history.empty()) throw ValidationError("x_norm: empty history");
  if (k < 0 || k > (variant == XVariant::Z ? 4 : 3)) throw ValidationError("x_norm: order out of range");
  if (!(delta > 0.0 && delta <= 0.25)) throw ValidationError("x_norm: delta must lie in (0, 1/4]");
  const std::size_t steps = history.size();
  if (steps > 2) {
    const double dt = history[1].t - history[0].t;
    for (std::size_t s = 1; s < steps; ++s)
      if (std::abs((history[s].t - history[s - 1].t) - dt) > 1e-9 * std::max(1.0, std::abs(dt)))
        throw ValidationError("x_norm: history is not uniformly sampled in t");
  }

  XNormBreakdown out;
  out.k = k;
  out.variant = variant;
  if (k == 0) return out;

  const GridSpec& grid = history.front().u.grid();
  const WeightTable w1 = weight_squared_table(grid, {WeightKind::Kss1, delta});
  const WeightTable w2 = weight_squared_table(grid, {WeightKind::Kss2, delta});
  const bool grad_only = variant == XVariant::Gradient;
  const int depth = k - 1;
  const int letters = grad_only ? 3 : kNumZ;
  const std::size_t words = word_count(letters, depth);

  // Per word: running trapezoid sums of the weighted squares.
  std::vector<double> acc_grad(words, 0.0), acc_field(words, 0.0);
  for (std::size_t s = 0; s < steps; ++s) {
    const HistorySample& h = history[s];
    const double tw = steps == 1 ? 0.0
                      : (s == 0 || s + 1 == steps) ? 0.5 * (history[1].t - history[0].t)
                                                   : (history[1].t - history[0].t);
    std::vector<double> energy2(words, 0.0), wgrad(words, 0.0), wfield(words, 0.0);
    std::size_t idx = 0;
    visit_z_words_with_gradient(
        h.u, depth,
        [&](const std::vector<int>&, const VectorField& zu, const TensorField& g) {
          double e2 = 0.0, wg = 0.0;
          for (const auto& row : g)
            for (const auto& c : row) {
              const ScalarField sq = c * c;
              e2 += integrate(sq);
              wg += weighted_integral(w1, sq);
            }
          double wf = 0.0;
          for (int c = 0; c < 3; ++c) wf += weighted_integral(w2, zu[c] * zu[c]);
          energy2[idx] = e2;
          wgrad[idx] = wg;
          wfield[idx] = wf;
          ++idx;
        },
        false, grad_only);
    idx = 0;
    visit_z_words(
        h.v, depth,
        [&](const std::vector<int>&, const VectorField& zv) {
          for (int c = 0; c < 3; ++c) {
            const ScalarField sq = zv[c] * zv[c];
            energy2[idx] += integrate(sq);
            wgrad[idx] += weighted_integral(w1, sq);
          }
          ++idx;
        },
        false, grad_only);
    double esum = 0.0;
    for (std::size_t a = 0; a < words; ++a) {
      esum += std::sqrt(energy2[a]);
      acc_grad[a] += tw * wgrad[a];
      acc_field[a] += tw * wfield[a];
    }
    out.energy_sup = std::max(out.energy_sup, esum);
  }
  const double T = history.back().t - history.front().t;
  const double norm = 1.0 / std::sqrt(std::log(2.0 + T));
  for (std::size_t a = 0; a < words; ++a) {
    out.kss_grad += std::sqrt(acc_grad[a]);
    out.kss_field += std::sqrt(acc_field[a]);
  }
  out.kss_grad *= norm;
  out.kss_field *= norm;
  out.total = out.energy_sup + out.kss_grad + out.kss_field;
  return out;
}

}  // namespace ekss
