#include "ekss/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "ekss/errors.hpp"
#include "ekss/random_fields.hpp"
#include "ekss/shells.hpp"
#include "ekss/spectral.hpp"
#include "ekss/weights.hpp"
#include "ekss/zfields.hpp"

namespace ekss {

namespace {

constexpr double kWindow = 0.6;
constexpr double kS = 0.75;          // Sobolev index of the trace checks
constexpr double kTraceP = 8.0 / 3;  // 2/p = 3/2 - s

struct Entry {
  InequalityId id;
  const char* name;
};

constexpr Entry kNames[] = {
    {InequalityId::Hardy, "hardy"},
    {InequalityId::SupZ2, "sup_z2"},
    {InequalityId::AngularLq, "angular_lq"},
    {InequalityId::TraceOuter, "trace_outer"},
    {InequalityId::TraceH1, "trace_h1"},
    {InequalityId::TailPointwise, "tail_pointwise"},
    {InequalityId::TailL4, "tail_l4"},
    {InequalityId::TraceHs, "trace_hs"},
    {InequalityId::InterpHs, "interp_hs"},
    {InequalityId::RadialOuter, "radial_outer"},
    {InequalityId::RadialInner, "radial_inner"},
    {InequalityId::RadialSup, "radial_sup"},
};

// Radius at every sample.
ScalarField radius(const GridSpec& g) {
  return sample(g, [](double x, double y, double z) { return std::sqrt(x * x + y * y + z * z); });
}

// max over window samples with lo <= r <= hi of weight(r) |u|.
template <class W>
double windowed_sup(const VectorField& u, const ScalarField& r, double lo, double hi, W&& weight) {
  const double R = kWindow * u.grid().L;
  double m = 0.0;
  for (std::size_t p = 0; p < r.size(); ++p) {
    if (r[p] > R || r[p] < lo || r[p] > hi) continue;
    const double mag = std::sqrt(u[0][p] * u[0][p] + u[1][p] * u[1][p] + u[2][p] * u[2][p]);
    m = std::max(m, weight(r[p]) * mag);
  }
  return m;
}

double table_norm(const WeightTable& table, const VectorField& u) {
  double s = 0.0;
  for (int c = 0; c < 3; ++c) s += weighted_integral(table, u[c] * u[c]);
  return std::sqrt(std::max(0.0, s));
}

double table_norm(const WeightTable& table, const TensorField& g) {
  double s = 0.0;
  for (const auto& row : g)
    for (const auto& c : row) s += weighted_integral(table, c * c);
  return std::sqrt(std::max(0.0, s));
}

// sum_{|a| <= depth} ||w Z^a u|| for a weight table.
double word_sum(const VectorField& u, int depth, const WeightTable& table, bool rotations_only) {
  double s = 0.0;
  visit_z_words(
      u, depth, [&](const std::vector<int>&, const VectorField& w) { s += table_norm(table, w); }, rotations_only);
  return s;
}

// sum_{|a| <= depth} ||w grad rot^a u||
double grad_rot_sum(const VectorField& u, int depth, const WeightTable& table) {
  double s = 0.0;
  visit_z_words_with_gradient(
      u, depth, [&](const std::vector<int>&, const VectorField&, const TensorField& g) { s += table_norm(table, g); },
      true);
  return s;
}

ScalarField radial_derivative_sq(const TensorField& g, const VectorField& omega) {
  ScalarField out(omega.grid());
  for (std::size_t p = 0; p < out.size(); ++p) {
    double s = 0.0;
    for (int c = 0; c < 3; ++c) {
      const double d = omega[0][p] * g[c][0][p] + omega[1][p] * g[c][1][p] + omega[2][p] * g[c][2][p];
      s += d * d;
    }
    out[p] = s;
  }
  return out;
}

ScalarField squared_length(const VectorField& u) { return dot(u, u); }

// Exterior integrals int_{|y| >= r} density dy.
class RadialTail {
 public:
  explicit RadialTail(const ScalarField& r) : order_(r.size()) {
    std::iota(order_.begin(), order_.end(), 0u);
    std::sort(order_.begin(), order_.end(), [&](std::uint32_t a, std::uint32_t b) { return r[a] < r[b]; });
    sorted_r_.reserve(order_.size());
    for (auto i : order_) sorted_r_.push_back(r[i]);
    dv_ = r.grid().cell_volume();
  }

  // Suffix sums in ascending-radius order.
  std::vector<double> suffix(const ScalarField& density) const {
    std::vector<double> s(order_.size() + 1, 0.0);
    for (std::size_t k = order_.size(); k-- > 0;) s[k] = s[k + 1] + density[order_[k]] * dv_;
    return s;
  }

  double at(const std::vector<double>& suffix_sums, double r) const {
    const auto it = std::lower_bound(sorted_r_.begin(), sorted_r_.end(), r);
    return suffix_sums[static_cast<std::size_t>(it - sorted_r_.begin())];
  }

 private:
  std::vector<std::uint32_t> order_;
  std::vector<double> sorted_r_;
  double dv_ = 0.0;
};

double hdot_norm(const VectorField& u, double s) {
  double acc = 0.0;
  for (int c = 0; c < 3; ++c) acc += std::pow(homogeneous_sobolev_norm(u[c], s), 2);
  return std::sqrt(acc);
}

RatioReport finish(InequalityId id, double lhs, double rhs, std::string diag = {}) {
  RatioReport r{id, lhs, rhs, 0.0, RatioStatus::Ok, std::move(diag)};
  if (!std::isfinite(lhs) || !std::isfinite(rhs)) throw NumericalError(to_string(id) + ": non-finite norm");
  if (rhs == 0.0 && lhs == 0.0) {
    r.status = RatioStatus::Degenerate;
    r.diagnostics += (r.diagnostics.empty() ? "" : "; ") + std::string("both sides vanish");
  } else if (rhs == 0.0) {
    r.status = RatioStatus::Artifact;
    r.diagnostics += (r.diagnostics.empty() ? "" : "; ") + std::string("RHS vanishes on the grid with LHS = ") +
                     std::to_string(lhs) + " (discretization artifact)";
  } else {
    r.ratio = lhs / rhs;
  }
  return r;
}

// Largest ratio over shells within the window and [lo, hi].
RatioReport shell_sup_ratio(InequalityId id, const VectorField& u, double q, double power, double lo, double hi,
                            double rhs) {
  const ShellGrid shells = make_shell_grid(u.grid(), 32);
  const double R = kWindow * u.grid().L;
  double lhs = 0.0;
  for (double r : shells.radii) {
    if (r > R || r < lo || r > hi) continue;
    lhs = std::max(lhs, std::pow(r, power) * angular_norm(u, r, q, shells));
  }
  return finish(id, lhs, rhs);
}

RatioReport tail_pointwise(const VectorField& u) {
  const GridSpec& g = u.grid();
  const RadialFrames fr = radial_frames(g);
  const RadialTail tail(fr.r);
  std::vector<double> s1(u[0].size(), 0.0), s2(u[0].size(), 0.0);
  std::vector<std::vector<double>> d1_tails, d2_tails;
  visit_z_words_with_gradient(
      u, 2,
      [&](const std::vector<int>& word, const VectorField& w, const TensorField& grad) {
        if (word.size() <= 1) d1_tails.push_back(tail.suffix(radial_derivative_sq(grad, fr.omega)));
        d2_tails.push_back(tail.suffix(squared_length(w)));
      },
      true);
  const double R = kWindow * g.L;
  double best = -1.0, best_l = 0.0, best_r = 0.0;
  bool artifact = false;
  for (std::size_t p = 0; p < u[0].size(); ++p) {
    const double r = fr.r[p];
    if (r > R) continue;
    const double mag = std::sqrt(u[0][p] * u[0][p] + u[1][p] * u[1][p] + u[2][p] * u[2][p]);
    double a = 0.0, b = 0.0;
    for (const auto& t : d1_tails) a += std::sqrt(tail.at(t, r));
    for (const auto& t : d2_tails) b += std::sqrt(tail.at(t, r));
    const double lhs = r * mag;
    const double rhs = std::sqrt(a) * std::sqrt(b);
    if (rhs == 0.0) {
      if (lhs != 0.0) artifact = true;
      continue;
    }
    if (lhs / rhs > best) {
      best = lhs / rhs;
      best_l = lhs;
      best_r = rhs;
    }
  }
  if (best < 0.0) return finish(InequalityId::TailPointwise, artifact ? 1.0 : 0.0, 0.0);
  RatioReport rep = finish(InequalityId::TailPointwise, best_l, best_r);
  if (artifact) rep.diagnostics = "some samples have LHS != 0 with vanishing exterior norms (discretization artifact)";
  return rep;
}

RatioReport tail_l4(const VectorField& u) {
  const GridSpec& g = u.grid();
  const RadialFrames fr = radial_frames(g);
  const RadialTail tail(fr.r);
  std::vector<double> dr_tail;
  std::vector<std::vector<double>> rot_tails;
  visit_z_words_with_gradient(
      u, 1,
      [&](const std::vector<int>& word, const VectorField& w, const TensorField& grad) {
        if (word.empty()) dr_tail = tail.suffix(radial_derivative_sq(grad, fr.omega));
        rot_tails.push_back(tail.suffix(squared_length(w)));
      },
      true);
  const ShellGrid shells = make_shell_grid(g, 32);
  const double R = kWindow * g.L;
  double best = -1.0, best_l = 0.0, best_r = 0.0;
  for (double r : shells.radii) {
    if (r > R) continue;
    double b = 0.0;
    for (const auto& t : rot_tails) b += std::sqrt(tail.at(t, r));
    const double rhs = std::sqrt(std::sqrt(tail.at(dr_tail, r))) * std::sqrt(b);
    const double lhs = r * angular_norm(u, r, 4.0, shells);
    if (rhs == 0.0) continue;
    if (lhs / rhs > best) {
      best = lhs / rhs;
      best_l = lhs;
      best_r = rhs;
    }
  }
  if (best < 0.0) return finish(InequalityId::TailL4, 0.0, 0.0);
  return finish(InequalityId::TailL4, best_l, best_r);
}

}  // namespace

std::string to_string(InequalityId id) {
  for (const auto& e : kNames)
    if (e.id == id) return e.name;
  return "?";
}

InequalityId inequality_from_string(const std::string& name) {
  for (const auto& e : kNames)
    if (name == e.name) return e.id;
  throw ValidationError("unknown inequality: " + name);
}

const std::vector<InequalityId>& all_inequalities() {
  static const std::vector<InequalityId> ids = [] {
    std::vector<InequalityId> v;
    for (const auto& e : kNames) v.push_back(e.id);
    return v;
  }();
  return ids;
}

std::string to_string(RatioStatus s) {
  switch (s) {
    case RatioStatus::Ok: return "ok";
    case RatioStatus::Degenerate: return "degenerate";
    case RatioStatus::Artifact: return "artifact";
  }
  return "?";
}

RatioReport inequality_check(InequalityId id, const VectorField& u, double delta) {
  const GridSpec& g = u.grid();
  if (!g.offset) throw ValidationError("inequality checks need an offset grid");
  if (!(delta > 0.0 && delta <= 0.25)) throw ValidationError("inequality checks need 0 < delta <= 1/4");
  require_finite(u, "inequality_check");
  const ScalarField r = radius(g);
  const auto half = [&] { return weight_squared_table(g, {WeightKind::Half, delta}); };
  switch (id) {
    case InequalityId::Hardy: {
      const double lhs = table_norm(weight_squared_table(g, {WeightKind::InvR, delta}), u);
      return finish(id, lhs, norm_l2(gradient_tensor(u)));
    }
    case InequalityId::SupZ2: {
      const double lhs = windowed_sup(u, r, 0.0, kInf, [](double s) { return std::sqrt(japanese(s)); });
      return finish(id, lhs, word_sum(u, 2, half(), false));
    }
    case InequalityId::AngularLq: {
      const MixedNorm m = mixed_norm(u, 2.0, 4.0);
      const WeightTable one{ScalarField(g, 1.0), {}};
      RatioReport rep = finish(id, m.value, word_sum(u, 1, one, true));
      if (m.warning) rep.diagnostics = *m.warning;
      return rep;
    }
    case InequalityId::TraceOuter:
      return shell_sup_ratio(id, u, 4.0, 0.5, 1.0, kInf, word_sum(u, 1, half(), false));
    case InequalityId::TraceH1: {
      const double h1 = std::sqrt(std::pow(norm_l2(u), 2) + std::pow(norm_l2(gradient_tensor(u)), 2));
      return shell_sup_ratio(id, u, kTraceP, 1.5 - kS, 0.0, kInf, h1);
    }
    case InequalityId::TailPointwise: return tail_pointwise(u);
    case InequalityId::TailL4: return tail_l4(u);
    case InequalityId::TraceHs:
      return shell_sup_ratio(id, u, kTraceP, 1.5 - kS, 0.0, kInf, hdot_norm(u, kS));
    case InequalityId::InterpHs: {
      const double lhs = hdot_norm(u, kS);
      const double rhs = std::pow(norm_l2(u), 1.0 - kS) * std::pow(hdot_norm(u, 1.0), kS);
      return finish(id, lhs, rhs);
    }
    case InequalityId::RadialOuter: {
      const WeightTable t = half();
      const double lhs = windowed_sup(u, r, 1.0, kInf, [](double s) { return std::sqrt(s); });
      return finish(id, lhs, grad_rot_sum(u, 1, t) + word_sum(u, 2, t, true));
    }
    case InequalityId::RadialInner: {
      const WeightTable w1 = weight_squared_table(g, {WeightKind::Kss1, delta});
      const WeightTable w2 = weight_squared_table(g, {WeightKind::Kss2, delta});
      const double lhs = windowed_sup(u, r, 0.0, 1.0, [delta](double s) { return std::pow(s, 0.5 - delta); });
      return finish(id, lhs, grad_rot_sum(u, 1, w1) + word_sum(u, 1, w1, true) + word_sum(u, 1, w2, true));
    }
    case InequalityId::RadialSup: {
      const double lhs = windowed_sup(u, r, 0.0, kInf, [](double s) { return std::sqrt(s); });
      return finish(id, lhs, grad_rot_sum(u, 1, WeightTable{ScalarField(g, 1.0), {}}));
    }
  }
  throw ValidationError("unknown inequality id");
}

EnsembleReport inequality_ensemble(InequalityId id, const GridSpec& grid, double delta, std::uint64_t first_seed,
                                   int count) {
  if (count <= 0) throw ValidationError("ensemble: need at least one seed");
  EnsembleReport rep;
  rep.id = id;
  rep.grid = grid;
  rep.delta = delta;
  std::vector<double> ratios;
  for (int s = 0; s < count; ++s) {
    const std::uint64_t seed = first_seed + static_cast<std::uint64_t>(s);
    const VectorField u = random_localized_vector(grid, seed, 1.0, 1.0);
    EnsembleRow row{seed, inequality_check(id, u, delta), false};
    if (row.report.status == RatioStatus::Ok) ratios.push_back(row.report.ratio);
    rep.rows.push_back(std::move(row));
  }
  if (!ratios.empty()) {
    rep.max_ratio = *std::max_element(ratios.begin(), ratios.end());
    std::vector<double> sorted = ratios;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t m = sorted.size();
    rep.median_ratio = m % 2 ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
  }
  for (auto& row : rep.rows) {
    row.flagged = row.report.status == RatioStatus::Ok && row.report.ratio > 3.0 * rep.median_ratio;
    rep.flagged += row.flagged ? 1 : 0;
  }
  return rep;
}

void write_ratio_rows(std::ostream& os, const EnsembleReport& rep) {
  os.precision(12);
  for (const auto& row : rep.rows)
    os << to_string(rep.id) << ',' << row.seed << ',' << rep.grid.n << ',' << rep.grid.L << ',' << rep.delta << ','
       << row.report.lhs << ',' << row.report.rhs << ',' << row.report.ratio << '\n';
}

}  // namespace ekss
