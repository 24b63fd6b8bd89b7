#include "ekss/kss.hpp"

#include <algorithm>
#include <cmath>

#include "ekss/errors.hpp"
#include "ekss/spectral.hpp"
#include "ekss/weights.hpp"

namespace ekss {

KssAccumulator::KssAccumulator(const GridSpec& grid, const PerturbationField& h, double delta, KssVariant variant)
    : grid_(grid), variant_(variant), has_h_(!h.empty()) {
  if (!(delta > 0.0 && delta < 0.5)) throw ValidationError("kss: delta must lie in (0, 1/2)");
  const bool w = variant == KssVariant::Weighted;
  w1_ = weight_squared_table(grid, {w ? WeightKind::Kss1 : WeightKind::Half, delta});
  w2_ = weight_squared_table(grid, {w ? WeightKind::Kss2 : WeightKind::ThreeHalf, delta});
  if (has_h_) {
    dh_abs_ = h.grad_abs_sum(grid);
    const ScalarField habs = h.abs_sum(grid);
    const RadialFrames fr = radial_frames(grid);
    h_inv_abs_ = ScalarField(grid);
    h_w1_sq_ = ScalarField(grid);
    const ScalarField kw = weight_squared_table(grid, {WeightKind::Kss1, delta}).w2;
    for (std::size_t q = 0; q < grid.size(); ++q) {
      h_inv_abs_[q] = habs[q] / japanese(fr.r[q]);
      h_w1_sq_[q] = kw[q] * habs[q] * habs[q];
    }
  }
}

void KssAccumulator::add(double t, const VectorField& u, const VectorField& v, const VectorField* forcing) {
  require_same_grid(u.grid(), grid_, "kss: u");
  if (!samples_.empty() && !(t > samples_.back().t)) throw ValidationError("kss: time samples must increase");
  const TensorField g = gradient_tensor(u);
  ScalarField du2(grid_), u2(grid_), gu2(grid_);
  for (int c = 0; c < 3; ++c)
    for (std::size_t q = 0; q < grid_.size(); ++q) {
      double s = 0.0;
      for (int m = 0; m < 3; ++m) s += g[c][m][q] * g[c][m][q];
      gu2[q] += s;
      du2[q] += s + v[c][q] * v[c][q];
      u2[q] += u[c][q] * u[c][q];
    }
  Sample s{};
  s.t = t;
  s.energy = std::sqrt(integrate(du2));
  s.wgrad2 = weighted_integral(w1_, du2);
  s.wfield2 = weighted_integral(w2_, u2);
  s.forcing = forcing ? norm_l2(*forcing) : 0.0;
  if (has_h_) {
    ScalarField a(grid_), b(grid_);
    for (std::size_t q = 0; q < grid_.size(); ++q) {
      a[q] = dh_abs_[q] * dh_abs_[q] * gu2[q];
      b[q] = h_inv_abs_[q] * h_inv_abs_[q] * gu2[q];
    }
    s.dh = std::sqrt(integrate(a));
    s.h_inv = std::sqrt(integrate(b));
    s.h_log2 = weighted_integral(h_w1_sq_, gu2);
  }
  samples_.push_back(s);

  // Running trapezoid for the growth curve.
  KssGrowthPoint p{t, 0.0};
  if (samples_.size() > 1) {
    const Sample& a = samples_[samples_.size() - 2];
    p.integral = growth_.back().integral + 0.5 * (t - a.t) * (a.wgrad2 + s.wgrad2);
  }
  growth_.push_back(p);
}

KssTerms KssAccumulator::result() const {
  KssTerms k;
  if (samples_.empty()) {
    k.degenerate = true;
    return k;
  }
  const std::size_t n = samples_.size();
  k.T = samples_.back().t - samples_.front().t;
  double wg = 0.0, wf = 0.0, F = 0.0, dh = 0.0, hi = 0.0, hl = 0.0;
  for (std::size_t s = 0; s < n; ++s) {
    const Sample& x = samples_[s];
    double w = 0.0;
    if (n > 1) {
      const double lo = s == 0 ? 0.0 : 0.5 * (x.t - samples_[s - 1].t);
      const double hi_ = s + 1 == n ? 0.0 : 0.5 * (samples_[s + 1].t - x.t);
      w = lo + hi_;
    }
    k.energy_sup = std::max(k.energy_sup, x.energy);
    wg += w * x.wgrad2;
    wf += w * x.wfield2;
    F += w * x.forcing;
    dh += w * x.dh;
    hi += w * x.h_inv;
    hl += w * x.h_log2;
  }
  const double lg = std::log(2.0 + k.T);
  k.kss_grad = std::sqrt(wg / lg);
  k.kss_field = std::sqrt(wf / lg);
  k.lhs = k.energy_sup + k.kss_grad + k.kss_field;
  k.data = samples_.front().energy;
  k.forcing = F;
  k.dh = dh;
  k.h_inv = hi;
  if (variant_ == KssVariant::Weighted) k.h_log = std::sqrt(lg) * std::sqrt(hl);
  k.rhs = k.data + k.forcing + k.dh + k.h_inv + k.h_log;
  k.degenerate = !(k.rhs > 0.0);
  k.ratio = k.degenerate ? 0.0 : k.lhs / k.rhs;
  return k;
}

LogFit fit_log_growth(const std::vector<KssGrowthPoint>& pts, double t_min, double t_max) {
  std::vector<double> xs, ys;
  for (const auto& p : pts)
    if (p.t >= t_min && p.t <= t_max) {
      xs.push_back(std::log(2.0 + p.t));
      ys.push_back(p.integral);
    }
  LogFit f;
  f.points = xs.size();
  if (xs.size() < 2) throw ValidationError("fit_log_growth: need at least two points in range");
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double den = n * sxx - sx * sx;
  if (den == 0.0) throw ValidationError("fit_log_growth: degenerate abscissae");
  f.a = (n * sxy - sx * sy) / den;
  f.b = (sy - f.a * sx) / n;
  double r2 = 0, y2 = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (f.a * xs[i] + f.b);
    r2 += e * e;
    y2 += ys[i] * ys[i];
  }
  f.relative_rms = y2 > 0 ? std::sqrt(r2 / y2) : 0.0;
  return f;
}

}  // namespace ekss
