#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ekss/grid.hpp"

namespace ekss {

// Every check reports LHS / RHS with the constant set to 1. Sup norms are grid
// maxima over |x| <= 0.6 L; traces come from shell resampling.
enum class InequalityId {
  Hardy,          // ||u/r|| <= C ||grad u||
  SupZ2,          // <r>^{1/2}|u| <= C sum_{|a|<=2} ||<r>^{-1/2} Z^a u||
  AngularLq,      // ||u||_{L2_r Lq_w} <= C sum_{|a|<=1} ||rot^a u||, q = 4
  TraceOuter,     // ||r^{1/2} u||_{Linf_r Lp_w(r>=1)} <= C sum_{|a|<=1} ||<r>^{-1/2} Z^a u||, p = 4
  TraceH1,        // ||r^{3/2-s} u||_{Linf_r Lp_w} <= C ||u||_{H1}, s = 3/4, p = 8/3
  TailPointwise,  // r|u(x)| <= C (sum_{|a|<=1} ||d_r rot^a u||_{|y|>=r})^{1/2} (sum_{|a|<=2} ||rot^a u||_{|y|>=r})^{1/2}
  TailL4,         // r||u(r.)||_{L4_w} <= C ||d_r u||_{|y|>=r}^{1/2} (sum_{|a|<=1} ||rot^a u||_{|y|>=r})^{1/2}
  TraceHs,        // r^{3/2-s}||u(r.)||_{Lp_w} <= C ||u||_{Hdot^s}, s = 3/4, p = 8/3
  InterpHs,       // ||u||_{Hdot^s} <= ||u||^{1-s} ||u||_{Hdot^1}^s, s = 3/4
  RadialOuter,    // ||r^{1/2} u||_{Linf(r>=1)} <= C (sum_{|a|<=1} ||<r>^{-1/2} grad rot^a u|| + sum_{|a|<=2} ||<r>^{-1/2} rot^a u||)
  RadialInner,    // ||r^{1/2-delta} u||_{Linf(r<=1)} <= C sum_{|a|<=1} (||w1 grad rot^a u|| + ||w1 rot^a u|| + ||w2 rot^a u||)
  RadialSup,      // ||r^{1/2} u||_{Linf} <= C sum_{|a|<=1} ||grad rot^a u||
};

std::string to_string(InequalityId id);
InequalityId inequality_from_string(const std::string& name);
const std::vector<InequalityId>& all_inequalities();

enum class RatioStatus { Ok, Degenerate, Artifact };
std::string to_string(RatioStatus s);

struct RatioReport {
  InequalityId id{};
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  RatioStatus status = RatioStatus::Ok;
  std::string diagnostics;
};

RatioReport inequality_check(InequalityId id, const VectorField& u, double delta);

struct EnsembleRow {
  std::uint64_t seed = 0;
  RatioReport report;
  bool flagged = false;  // ratio above 3x the ensemble median
};

struct EnsembleReport {
  InequalityId id{};
  GridSpec grid;
  double delta = 0.25;
  std::vector<EnsembleRow> rows;
  double max_ratio = 0.0;
  double median_ratio = 0.0;
  int flagged = 0;
};

// Random localized fields (unit correlation length, Gaussian envelope of width 1)
// for seeds first_seed .. first_seed + count - 1.
EnsembleReport inequality_ensemble(InequalityId id, const GridSpec& grid, double delta, std::uint64_t first_seed,
                                   int count);

// CSV rows: id,seed,n,L,delta,lhs,rhs,ratio
void write_ratio_rows(std::ostream& os, const EnsembleReport& rep);

}  // namespace ekss
