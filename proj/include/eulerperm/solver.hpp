#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "eulerperm/axisym.hpp"
#include "eulerperm/field.hpp"

namespace eulerperm {

enum class Formulation { single_component, full_vorticity, both };
Formulation parse_formulation(const std::string& name);
std::string to_string(Formulation f);

struct SolverConfig {
  int n = 64;
  double box_length = 8.0;
  std::optional<double> dt;  // fixed step; empty selects auto_dt
  double cfl_safety = 0.5;
  double t_end = 1.0;
  bool dealias = true;
  int diagnostics_every = 1;
  int snapshot_every = 0;  // 0 writes only the final snapshot
  int reproject_every = 0;  // 0 disables re-projection
  Formulation mode = Formulation::single_component;
  /// "gaussian", "ring", "perturbed", "zero", or "file" (read initial_file).
  std::string family = "gaussian";
  FamilyParams params;
  std::string initial_file;

  /// Throws InvalidInput on violated invariants.
  void validate() const;
};

struct DiagnosticsRecord {
  int step = 0;
  double t = 0.0;
  double lambda = 0.0;
  double l2_velocity = 0.0;
  double hminus1_w1 = 0.0;
  double linf_w1 = 0.0;
  double bkm_integral = 0.0;
  double symmetry_residual_max = 0.0;
  double constraint_residual_physical = 0.0;
  double constraint_residual_fourier = 0.0;
  double divergence_residual = 0.0;
  std::optional<double> formulation_gap;  // both mode only
};

struct TrajectoryState {
  double t = 0.0;
  std::optional<ScalarField> w1;
  std::optional<VectorField> omega;
};

/// -(u.grad) w1 + (omega.grad) u1 with u and omega rebuilt from w1; products
/// in sample space, derivatives spectral.  Throws InvalidInput for non-members.
ScalarField rhs_single(const ScalarField& w1, bool dealias = true);
/// -(u.grad) omega + (omega.grad) u.  Throws InvalidInput for non-solenoidal input.
VectorField rhs_full(const VectorField& omega, bool dealias = true);

/// Classical RK4 on every formulation present in the state.  Throws
/// NumericalBreakdown if a stage or the result becomes non-finite.
TrajectoryState step_rk4(const TrajectoryState& state, double dt, bool dealias = true);
/// cfl_safety * h / max(1e-30, max|u|).
double auto_dt(const TrajectoryState& state, double cfl_safety);

/// Diagnostics of a state; bkm_integral is left at zero for the caller to accumulate.
DiagnosticsRecord diagnose(const TrajectoryState& state);

/// Initial state for a configuration (dealiased when cfg.dealias is set).
TrajectoryState initial_state(const SolverConfig& cfg);

struct RunObserver {
  std::function<void(const DiagnosticsRecord&)> on_record;
  std::function<void(const TrajectoryState&, int step)> on_snapshot;
};

struct RunResult {
  bool completed = false;
  std::string message;
  int steps = 0;
  int reprojections = 0;
  std::vector<DiagnosticsRecord> records;
  TrajectoryState final_state;
};

/// Integrates to t_end.  Breakdown is reported in the result (completed =
/// false) together with the last finite state.
RunResult run(const SolverConfig& cfg, const RunObserver& observer = {});
RunResult run_from(const SolverConfig& cfg, TrajectoryState state, const RunObserver& observer = {});

/// Max over inner nodes (|x_i| <= inner_fraction L, |x2 - x3| >= epsilon) of
///   |rhs + u.grad w1 - zeta (u2 - u3)| / |x2 - x3|
/// relative to the same expression without the time derivative.  Zero for
/// exact transport of zeta = w1/(x2 - x3).
double phi_transport_residual(const ScalarField& w1, double epsilon = 0.0, double inner_fraction = 0.25);

}  // namespace eulerperm
