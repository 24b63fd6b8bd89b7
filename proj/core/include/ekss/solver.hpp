#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ekss/elastic.hpp"
#include "ekss/grid.hpp"

namespace ekss {

enum class SolverMode { Linear, Perturbed, Quasilinear };
std::string to_string(SolverMode m);
SolverMode solver_mode_from_string(const std::string& s);

struct SolverConfig {
  GridSpec grid;
  ElasticMedium medium;
  SolverMode mode = SolverMode::Linear;
  double dt = 0.0;  // 0 selects cfl * dx / c1
  double T = 1.0;
  double cfl = 0.5;
  bool dealias = false;
  int record_every = 1;
  double blowup_threshold = 1e3;
  bool track_rotations = false;  // record ||rot u|| / ||u||, for radial runs

  // Requires cfl <= 0.5, 0 < dt <= cfl * dx / c1, T > 0, record_every >= 1.
  void validate() const;
  double step() const;
  int steps() const;  // ceil(T / dt)
};

struct State {
  VectorField u;
  VectorField v;  // d_t u
  double t = 0.0;
};

// Adds F(t) into `out`.
using Forcing = std::function<void(double t, VectorField& out)>;

struct Derivative {
  VectorField du, dv;
};

// du = v; dv = Au + mode terms + F(t). Perturbed adds -Hu, quasilinear adds
// N(u, u) (two-thirds dealiased when cfg.dealias). Throws NumericalError on
// non-finite input.
Derivative rhs(const State& s, const SolverConfig& cfg, const Forcing* forcing = nullptr);

// Classical four-stage Runge-Kutta. The second form takes an explicit
// (possibly negative) step.
State step_rk4(const State& s, const SolverConfig& cfg, const Forcing* forcing = nullptr);
State step_rk4(const State& s, const SolverConfig& cfg, double dt, const Forcing* forcing);

// u0 = eps x phi(r), u1 = eps x psi(r). Throws ValidationError when |x phi|
// exceeds 1e-8 of its maximum for r > L/2.
State radial_data(const std::function<double(double)>& phi, const std::function<double(double)>& psi, double eps,
                  const GridSpec& grid);
// phi(r) = exp(-r^2), psi = 0.
State radial_data(double eps, const GridSpec& grid);

enum class BlowupTrigger { None, NonFinite, Gradient, SpectralTail };
std::string to_string(BlowupTrigger t);

struct BlowupEvent {
  double t = 0.0;
  BlowupTrigger trigger = BlowupTrigger::None;
};

// Share of the gradient energy sum |k|^2 |u_k|^2 in the top third of the
// retained modes (by |m|, relative to the two-thirds cutoff when dealiasing).
double spectral_tail_fraction(const VectorField& u, bool dealias);

class BlowupDetector {
 public:
  BlowupDetector(double threshold, double initial_sup_grad, bool dealias);
  std::optional<BlowupEvent> check(const State& s) const;
  static constexpr double kTailFraction = 0.1;

 private:
  double limit_;
  bool dealias_;
};

struct RunRecord {
  double t = 0.0;
  double energy = 0.0;          // ||d u|| = (||v||^2 + ||grad u||^2)^{1/2}
  double elastic_energy = 0.0;  // (||v||^2 + c2^2 ||grad u||^2 + (c1^2 - c2^2) ||div u||^2)^{1/2}
  double energy_cf = 0.0;       // (||v_cf||^2 + c1^2 ||grad u_cf||^2)^{1/2}
  double energy_df = 0.0;       // (||v_df||^2 + c2^2 ||grad u_df||^2)^{1/2}
  double sup_grad = 0.0;        // max over x of the Frobenius norm |grad u(x)|
  double rotation_ratio = 0.0;  // max_ij ||rot_ij u|| / ||u||, when tracked
};

struct RunReport {
  std::vector<RunRecord> records;
  std::optional<BlowupEvent> blowup;
  int steps_taken = 0;
  double dt = 0.0;
};

RunRecord measure(const State& s, const SolverConfig& cfg);

// Called at t = 0 and every record_every steps with the state and, for forced
// runs, F(t) (null otherwise).
using Recorder = std::function<void(const State&, const VectorField* forcing)>;

// Blow-up is recorded in the report, never thrown.
RunReport simulate(const SolverConfig& cfg, State initial, const Forcing* forcing = nullptr,
                   const Recorder& recorder = {});

}  // namespace ekss
