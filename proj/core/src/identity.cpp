#include "ekss/identity.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>

#include "ekss/errors.hpp"
#include "ekss/random_fields.hpp"

namespace ekss {

IdentityAccumulator::IdentityAccumulator(const GridSpec& grid, const ElasticMedium& medium, double delta)
    : grid_(grid),
      medium_(medium),
      tables_(grid, delta),
      c_(lower_bound_constant(delta, medium.c2)),
      outer_mask_(grid) {
  medium_.validate();
  const double edge = 0.8 * grid.L;
  for (int k = 0; k < grid.n; ++k)
    for (int j = 0; j < grid.n; ++j)
      for (int i = 0; i < grid.n; ++i) {
        const double m = std::max({std::abs(grid.coord(i)), std::abs(grid.coord(j)), std::abs(grid.coord(k))});
        outer_mask_[grid.index(i, j, k)] = m >= edge ? 1.0 : 0.0;
      }
}

void IdentityAccumulator::add(double t, const VectorField& u, const VectorField& v, const VectorField* forcing) {
  require_same_grid(u.grid(), grid_, "identity: u");
  require_same_grid(v.grid(), grid_, "identity: v");
  if (!samples_.empty() && !(t > samples_.back().t)) throw ValidationError("identity: time samples must increase");
  const MultiplierDensities d = densities(u, v, medium_, tables_, forcing);

  IdentitySample s;
  s.t = t;
  s.q1 = integrate(d.q1);
  s.q2 = integrate(d.q2);
  s.q3 = integrate(d.q3);
  s.q4 = integrate(d.q4);
  s.q5 = integrate(d.q5);
  s.boundary = integrate(d.e1) + integrate(d.e2);
  s.pairing = forcing ? integrate(d.pairing) : 0.0;

  double min_q = std::numeric_limits<double>::infinity();
  double max_q = 0.0;
  for (std::size_t q = 0; q < grid_.size(); ++q) {
    min_q = std::min(min_q, d.lower_bound_lhs[q]);
    max_q = std::max(max_q, std::abs(d.lower_bound_lhs[q]));
  }
  double min_gap = std::numeric_limits<double>::infinity();
  int violations = 0;
  const double tol = 1e-12 * max_q;
  for (std::size_t q = 0; q < grid_.size(); ++q) {
    const double gap = d.lower_bound_lhs[q] - c_ * d.lower_bound_rhs[q];
    min_gap = std::min(min_gap, gap);
    if (gap < -tol) ++violations;
  }
  s.min_q12 = min_q;
  s.min_lower_gap = max_q > 0.0 ? min_gap / max_q : 0.0;
  s.lower_violations = violations;

  const TensorField g = gradient_tensor(u);
  double total = 0.0, outer = 0.0;
  for (std::size_t q = 0; q < grid_.size(); ++q) {
    double e = 0.0;
    for (int c = 0; c < 3; ++c) {
      e += v[c][q] * v[c][q];
      for (int m = 0; m < 3; ++m) e += g[c][m][q] * g[c][m][q];
    }
    total += e;
    outer += outer_mask_[q] * e;
  }
  s.outer_fraction = total > 0.0 ? outer / total : 0.0;
  samples_.push_back(s);
}

ResidualReport IdentityAccumulator::finish(bool require_localized) const {
  ResidualReport r;
  r.samples = samples_;
  r.lower_bound_c = c_;
  if (samples_.empty()) return r;
  const std::size_t n = samples_.size();
  if (n > 2) {
    const double dt = samples_[1].t - samples_[0].t;
    for (std::size_t s = 1; s < n; ++s)
      if (std::abs(samples_[s].t - samples_[s - 1].t - dt) > 1e-9 * std::max(1.0, dt))
        throw ValidationError("identity: time samples must be uniformly spaced");
  }
  std::array<double, 6> parts{};  // q1..q5, pairing
  r.min_q12 = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < n; ++s) {
    const IdentitySample& x = samples_[s];
    double w = 0.0;
    if (n > 1) w = (s == 0 || s + 1 == n) ? 0.5 * (samples_[1].t - samples_[0].t) : samples_[1].t - samples_[0].t;
    parts[0] += w * x.q1;
    parts[1] += w * x.q2;
    parts[2] += w * x.q3;
    parts[3] += w * x.q4;
    parts[4] += w * x.q5;
    parts[5] += w * x.pairing;
    r.max_outer_fraction = std::max(r.max_outer_fraction, x.outer_fraction);
    r.min_q12 = std::min(r.min_q12, x.min_q12);
    r.lower_violations += x.lower_violations;
  }
  r.bulk = parts[0] + parts[1] + parts[2] - parts[3] - parts[4];
  r.pairing = parts[5];
  r.boundary = samples_.back().boundary - samples_.front().boundary;
  r.residual = r.bulk + r.boundary - r.pairing;
  r.scale = std::max(std::abs(samples_.front().boundary), std::abs(samples_.back().boundary));
  for (double p : parts) r.scale = std::max(r.scale, std::abs(p));
  r.normalized = r.scale > 0.0 ? std::abs(r.residual) / r.scale : 0.0;
  r.localized = r.max_outer_fraction <= kLocalizationTolerance;
  if (require_localized && !r.localized)
    throw NumericalError("identity: fields are not localized (outer energy share " +
                         std::to_string(r.max_outer_fraction) + ")");
  return r;
}

namespace {

constexpr double kSigma = 0.6;

struct Bump {
  std::array<double, 3> centre;
  std::array<double, 3> axis;  // for the curl terms
  double freq;
  double phase;
};

const std::array<Bump, 2> kCurlFree{{{{2.5, 1.0, -1.0}, {0, 0, 0}, 1.0, 0.3},
                                     {{-1.0, -2.6, 0.8}, {0, 0, 0}, 0.8, 1.1}}};
const std::array<Bump, 2> kDivFree{{{{-1.5, 2.0, 1.5}, {0.0, 0.6, 0.8}, 0.9, 0.7},
                                    {{0.8, -0.6, -2.7}, {1.0, 0.0, 0.0}, 1.2, 2.0}}};

// grad of exp(-|x - c|^2 / (2 sigma^2))
VectorField gaussian_gradient(const GridSpec& g, const std::array<double, 3>& c) {
  return sample_vector(g, [&](double x, double y, double z) {
    const double dx = x - c[0], dy = y - c[1], dz = z - c[2];
    const double p = std::exp(-(dx * dx + dy * dy + dz * dz) / (2.0 * kSigma * kSigma));
    const double s = -p / (kSigma * kSigma);
    return std::array<double, 3>{s * dx, s * dy, s * dz};
  });
}

}  // namespace

ManufacturedSolution::ManufacturedSolution(const GridSpec& grid, double omega) : grid_(grid), omega_(omega) {
  grid.validate();
  if (grid.L < 6.0) throw ValidationError("manufactured solution: needs L >= 6 to stay localized");
  for (const Bump& b : kCurlFree) {
    grad_phi_.push_back(gaussian_gradient(grid, b.centre));
    freq_.push_back(b.freq * omega);
    phase_.push_back(b.phase);
  }
  for (const Bump& b : kDivFree) {
    // curl(e phi) = grad phi x e
    const VectorField gp = gaussian_gradient(grid, b.centre);
    VectorField c(grid);
    const auto& e = b.axis;
    for (std::size_t q = 0; q < grid.size(); ++q) {
      c[0][q] = gp[1][q] * e[2] - gp[2][q] * e[1];
      c[1][q] = gp[2][q] * e[0] - gp[0][q] * e[2];
      c[2][q] = gp[0][q] * e[1] - gp[1][q] * e[0];
    }
    curl_terms_.push_back(std::move(c));
    freq_.push_back(b.freq * omega);
    phase_.push_back(b.phase);
  }
}

VectorField ManufacturedSolution::combine(double t, int derivative) const {
  VectorField out(grid_);
  const std::size_t ncf = grad_phi_.size();
  for (std::size_t p = 0; p < freq_.size(); ++p) {
    const double w = freq_[p];
    const double arg = w * t + phase_[p];
    double a = 0.0;
    switch (derivative) {
      case 0: a = std::sin(arg); break;
      case 1: a = w * std::cos(arg); break;
      default: a = -w * w * std::sin(arg); break;
    }
    out.axpy(a, p < ncf ? grad_phi_[p] : curl_terms_[p - ncf]);
  }
  return out;
}

VectorField ManufacturedSolution::u(double t) const { return combine(t, 0); }
VectorField ManufacturedSolution::v(double t) const { return combine(t, 1); }

VectorField ManufacturedSolution::forcing(double t, const ElasticMedium& medium) const {
  const VectorField uu = u(t);
  VectorField F = combine(t, 2);
  F -= elastic_spatial(uu, medium);
  if (!medium.h.empty()) F += apply_H(uu, medium.h);
  return F;
}

VectorField ManufacturedSolution::curl_free_part() const {
  VectorField out(grid_);
  for (const auto& f : grad_phi_) out += f;
  return out;
}

VectorField ManufacturedSolution::div_free_part() const {
  VectorField out(grid_);
  for (const auto& f : curl_terms_) out += f;
  return out;
}

PerturbationField ManufacturedSolution::default_perturbation(const GridSpec& grid) {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  Tensor4 a;
  for (double& x : a.c) x = U(rng);
  Tensor4 c;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int l = 0; l < 3; ++l)
        for (int m = 0; m < 3; ++m) c(i, j, l, m) = 0.5 * (a(i, j, l, m) + a(j, i, m, l));
  double mx = 0.0;
  for (double x : c.c) mx = std::max(mx, std::abs(x));
  for (double& x : c.c) x *= 0.05 / mx;
  return PerturbationField::profiled(gaussian(grid, 1.5), c);
}

}  // namespace ekss
