#pragma once

#include <vector>

#include "ekss/elastic.hpp"
#include "ekss/grid.hpp"
#include "ekss/weights.hpp"

namespace ekss {

enum class KssVariant {
  Weighted,  // <r>^{-delta} r^{-1/2+delta} and <r>^{-delta} r^{-3/2+delta}, with the log-weighted h term
  Plain,     // <r>^{-1/2} and <r>^{-3/2}
};

struct KssTerms {
  double T = 0.0;
  // left side
  double energy_sup = 0.0;  // sup_t ||d u||
  double kss_grad = 0.0;    // (log(2+T))^{-1/2} ||w1 d u||_{L2L2}
  double kss_field = 0.0;   // (log(2+T))^{-1/2} ||w2 u||_{L2L2}
  double lhs = 0.0;
  // right side, constant 1
  double data = 0.0;     // ||d u(0)||
  double forcing = 0.0;  // ||L_h u||_{L1L2}
  double dh = 0.0;       // || |grad h| |grad u| ||_{L1L2}
  double h_inv = 0.0;    // || <r>^{-1} |h| |grad u| ||_{L1L2}
  double h_log = 0.0;    // (log(2+T))^{1/2} || w1 |h| |grad u| ||_{L2L2}, weighted variant only
  double rhs = 0.0;
  double ratio = 0.0;
  bool degenerate = false;  // rhs == 0
};

// Running point of the unnormalized integrand ||w1 d u||^2_{L2L2(S_t)}.
struct KssGrowthPoint {
  double t = 0.0;
  double integral = 0.0;
};

// Streams (u, u_t, L_h u) samples on a uniform time mesh; time integrals use
// the trapezoid rule. The L1 in time norms use the same rule.
class KssAccumulator {
 public:
  KssAccumulator(const GridSpec& grid, const PerturbationField& h, double delta, KssVariant variant);

  void add(double t, const VectorField& u, const VectorField& v, const VectorField* forcing);
  KssTerms result() const;
  const std::vector<KssGrowthPoint>& growth() const { return growth_; }

 private:
  struct Sample {
    double t;
    double energy;  // ||d u||
    double wgrad2;  // ||w1 d u||^2
    double wfield2; // ||w2 u||^2
    double forcing, dh, h_inv;
    double h_log2;
  };

  GridSpec grid_;
  KssVariant variant_;
  WeightTable w1_, w2_;
  ScalarField dh_abs_, h_inv_abs_, h_w1_sq_;
  bool has_h_;
  std::vector<Sample> samples_;
  std::vector<KssGrowthPoint> growth_;
};

// a log(2 + t) + b by ordinary least squares, with the relative RMS misfit
// sqrt(mean (y - fit)^2) / sqrt(mean y^2).
struct LogFit {
  double a = 0.0;
  double b = 0.0;
  double relative_rms = 0.0;
  std::size_t points = 0;
};
LogFit fit_log_growth(const std::vector<KssGrowthPoint>& pts, double t_min, double t_max);

}  // namespace ekss
