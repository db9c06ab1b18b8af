#include "eulerperm/solver.hpp"

#include <cmath>
#include <numbers>

#include "eulerperm/biot_savart.hpp"
#include "eulerperm/constraint.hpp"
#include "eulerperm/error.hpp"
#include "eulerperm/pullback.hpp"
#include "eulerperm/simd/kernels.hpp"
#include "eulerperm/snapshot.hpp"
#include "eulerperm/spectral.hpp"

namespace eulerperm {

namespace {

constexpr double kPi = std::numbers::pi;

using Samples = std::vector<double>;
using State = std::vector<Spectrum>;

Samples to_samples(const Grid& g, const Spectrum& c) { return inverse_transform(g, c); }

void require_finite(const Spectrum& c) {
  for (const Complex& z : c)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw NumericalBreakdown("non-finite value in a stage");
}

// out += s * (a . grad f) where grad f is given by three sample arrays.
void add_advection(Samples& out, double s, const std::array<Samples, 3>& a, const std::array<Samples, 3>& grad) {
  simd::kernels().accumulate_dot3(out.data(), s, a[0].data(), a[1].data(), a[2].data(), grad[0].data(), grad[1].data(),
                                  grad[2].data(), out.size());
}

std::array<Samples, 3> gradient_samples(const Grid& g, const Spectrum& c) {
  return {to_samples(g, derivative_spectrum(g, c, 0)), to_samples(g, derivative_spectrum(g, c, 1)),
          to_samples(g, derivative_spectrum(g, c, 2))};
}

Samples negated_composition(const Grid& g, const Samples& s, PermutationName p) {
  const ScalarField f(g, s);
  const ScalarField c = compose_with(f, permutation(p));
  Samples out(c.samples().begin(), c.samples().end());
  for (double& v : out) v = -v;
  return out;
}

Spectrum finish(const Grid& g, const Samples& s, bool dealias) {
  for (double v : s)
    if (!std::isfinite(v)) throw NumericalBreakdown("non-finite nonlinear term");
  Spectrum c = forward_transform(g, s);
  if (dealias) dealias_in_place(g, c);
  return c;
}

Spectrum rhs_single_spectral(const Grid& g, const Spectrum& w1h, bool dealias) {
  const auto om = reconstruct_vorticity_spectrum(g, w1h);
  const auto uh = velocity_spectrum(g, om);
  const std::array<Samples, 3> u{to_samples(g, uh[0]), to_samples(g, uh[1]), to_samples(g, uh[2])};
  Samples w1 = to_samples(g, w1h);
  std::array<Samples, 3> w{w1, negated_composition(g, w1, PermutationName::P12),
                           negated_composition(g, w1, PermutationName::P13)};
  if (fault::active() == fault::Kind::reconstruct_sign)
    for (double& v : w[1]) v = -v;
  Samples nl(g.size(), 0.0);
  add_advection(nl, -1.0, u, gradient_samples(g, w1h));
  add_advection(nl, 1.0, w, gradient_samples(g, uh[0]));
  return finish(g, nl, dealias);
}

std::array<Spectrum, 3> rhs_full_spectral(const Grid& g, const std::array<Spectrum, 3>& om, bool dealias) {
  const auto uh = velocity_spectrum(g, om);
  const std::array<Samples, 3> u{to_samples(g, uh[0]), to_samples(g, uh[1]), to_samples(g, uh[2])};
  const std::array<Samples, 3> w{to_samples(g, om[0]), to_samples(g, om[1]), to_samples(g, om[2])};
  std::array<Spectrum, 3> out;
  for (int i = 0; i < 3; ++i) {
    Samples nl(g.size(), 0.0);
    add_advection(nl, -1.0, u, gradient_samples(g, om[i]));
    add_advection(nl, 1.0, w, gradient_samples(g, uh[i]));
    out[i] = finish(g, nl, dealias);
  }
  return out;
}

State axpy(const State& y, double a, const State& k) {
  State out = y;
  for (std::size_t c = 0; c < y.size(); ++c)
    for (std::size_t i = 0; i < y[c].size(); ++i) out[c][i] += a * k[c][i];
  return out;
}

template <class F>
State rk4(const State& y, double dt, F&& f) {
  const State k1 = f(y);
  const State k2 = f(axpy(y, 0.5 * dt, k1));
  const State k3 = f(axpy(y, 0.5 * dt, k2));
  const State k4 = f(axpy(y, dt, k3));
  State out = y;
  for (std::size_t c = 0; c < y.size(); ++c)
    for (std::size_t i = 0; i < y[c].size(); ++i)
      out[c][i] += dt / 6.0 * (k1[c][i] + 2.0 * k2[c][i] + 2.0 * k3[c][i] + k4[c][i]);
  return out;
}

double spectral_l2(const Grid& g, const std::array<Spectrum, 3>& c) {
  double s = 0.0;
  for (const auto& a : c)
    for (const Complex& z : a) s += std::norm(z);
  const double L = g.length(), N = static_cast<double>(g.size());
  return std::sqrt(s * L * L * L) / N;
}

double hminus1(const Grid& g, const Spectrum& c) {
  const int n = g.n();
  const double L = g.length();
  double s = 0.0;
  std::size_t idx = 0;
  for (int k3 = 0; k3 < n; ++k3)
    for (int k2 = 0; k2 < n; ++k2)
      for (int k1 = 0; k1 < n; ++k1, ++idx) {
        if (idx == 0) continue;
        const double m1 = g.frequency(k1) / L, m2 = g.frequency(k2) / L, m3 = g.frequency(k3) / L;
        s += std::norm(c[idx]) / (4.0 * kPi * kPi * (m1 * m1 + m2 * m2 + m3 * m3));
      }
  const double N = static_cast<double>(g.size());
  return std::sqrt(s * L * L * L) / N;
}

VectorField from_spectra(const Grid& g, const std::array<Spectrum, 3>& c) {
  return VectorField(ScalarField::from_spectrum(g, c[0]), ScalarField::from_spectrum(g, c[1]),
                     ScalarField::from_spectrum(g, c[2]));
}

std::array<Spectrum, 3> vorticity_spectra(const TrajectoryState& s) {
  if (s.w1) return reconstruct_vorticity_spectrum(s.w1->grid(), s.w1->spectrum());
  if (s.omega) return {(*s.omega)[0].spectrum(), (*s.omega)[1].spectrum(), (*s.omega)[2].spectrum()};
  throw InvalidInput("trajectory state holds no field");
}

const Grid& state_grid(const TrajectoryState& s) {
  if (s.w1) return s.w1->grid();
  if (s.omega) return s.omega->grid();
  throw InvalidInput("trajectory state holds no field");
}

double state_linf_w1(const TrajectoryState& s) { return linf_norm(s.w1 ? *s.w1 : (*s.omega)[0]); }

}  // namespace

Formulation parse_formulation(const std::string& name) {
  if (name == "single" || name == "single_component") return Formulation::single_component;
  if (name == "full" || name == "full_vorticity") return Formulation::full_vorticity;
  if (name == "both") return Formulation::both;
  throw InvalidInput("unknown mode: " + name);
}

std::string to_string(Formulation f) {
  switch (f) {
    case Formulation::single_component: return "single_component";
    case Formulation::full_vorticity: return "full_vorticity";
    case Formulation::both: return "both";
  }
  return "unknown";
}

void SolverConfig::validate() const {
  Grid(n, box_length);
  if (dt && !(*dt > 0.0 && std::isfinite(*dt))) throw InvalidInput("dt must be positive");
  if (!(cfl_safety > 0.0) || !std::isfinite(cfl_safety)) throw InvalidInput("cfl safety must be positive");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw InvalidInput("t_end must be positive");
  if (diagnostics_every < 1) throw InvalidInput("diagnostics cadence must be >= 1");
  if (snapshot_every < 0) throw InvalidInput("snapshot cadence must be >= 0");
  if (reproject_every < 0) throw InvalidInput("reproject_every must be >= 0");
  if (family == "file") {
    if (initial_file.empty()) throw InvalidInput("family 'file' needs initial_file");
  } else if (family != "zero") {
    parse_family(family);
  }
}

ScalarField rhs_single(const ScalarField& w1, bool dealias) {
  const ConstraintResidual r = constraint_residual(w1);
  if (r.max() > kMembershipTolerance)
    throw InvalidInput("rhs_single: w1 is not in the constraint space (residual " + std::to_string(r.max()) + ")");
  return ScalarField::from_spectrum(w1.grid(), rhs_single_spectral(w1.grid(), w1.spectrum(), dealias));
}

VectorField rhs_full(const VectorField& omega, bool dealias) {
  const double div = divergence_residual(omega);
  if (div > kMembershipTolerance)
    throw InvalidInput("rhs_full: vorticity is not divergence-free (residual " + std::to_string(div) + ")");
  const Grid& g = omega.grid();
  return from_spectra(g, rhs_full_spectral(g, {omega[0].spectrum(), omega[1].spectrum(), omega[2].spectrum()}, dealias));
}

TrajectoryState step_rk4(const TrajectoryState& state, double dt, bool dealias) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidInput("dt must be positive");
  TrajectoryState next;
  next.t = state.t + dt;
  if (state.w1) {
    const Grid& g = state.w1->grid();
    const State y{state.w1->spectrum()};
    const State out = rk4(y, dt, [&](const State& s) {
      Spectrum k = rhs_single_spectral(g, s[0], dealias);
      require_finite(k);
      return State{std::move(k)};
    });
    require_finite(out[0]);
    next.w1 = ScalarField::from_spectrum(g, out[0]);
    next.w1->set_flags(SymmetryFlag::constraint);
  }
  if (state.omega) {
    const Grid& g = state.omega->grid();
    const State y{(*state.omega)[0].spectrum(), (*state.omega)[1].spectrum(), (*state.omega)[2].spectrum()};
    const State out = rk4(y, dt, [&](const State& s) {
      auto k = rhs_full_spectral(g, {s[0], s[1], s[2]}, dealias);
      for (const auto& c : k) require_finite(c);
      return State{std::move(k[0]), std::move(k[1]), std::move(k[2])};
    });
    for (const auto& c : out) require_finite(c);
    next.omega = from_spectra(g, {out[0], out[1], out[2]});
  }
  return next;
}

double auto_dt(const TrajectoryState& state, double cfl_safety) {
  const Grid& g = state_grid(state);
  const VectorField u = from_spectra(g, velocity_spectrum(g, vorticity_spectra(state)));
  return cfl_safety * g.spacing() / std::max(1e-30, linf_norm(u));
}

DiagnosticsRecord diagnose(const TrajectoryState& state) {
  const Grid& g = state_grid(state);
  DiagnosticsRecord rec;
  rec.t = state.t;
  const auto om = vorticity_spectra(state);
  const auto uh = velocity_spectrum(g, om);
  const ScalarField& w1 = state.w1 ? *state.w1 : (*state.omega)[0];
  rec.lambda = -value_at_origin(g, derivative_spectrum(g, uh[0], 1));
  rec.l2_velocity = spectral_l2(g, uh);
  rec.hminus1_w1 = hminus1(g, w1.spectrum());
  rec.linf_w1 = linf_norm(w1);
  rec.symmetry_residual_max = permutation_residual(from_spectra(g, uh));
  const ConstraintResidual cr = constraint_residual(w1);
  rec.constraint_residual_physical = cr.physical;
  rec.constraint_residual_fourier = cr.fourier;
  rec.divergence_residual = state.omega ? divergence_residual(*state.omega) : divergence_residual(from_spectra(g, om));
  if (state.w1 && state.omega) {
    const double base = l2_norm(*state.w1);
    rec.formulation_gap = base > 0.0 ? l2_norm(*state.w1 - (*state.omega)[0]) / base : 0.0;
  }
  return rec;
}

TrajectoryState initial_state(const SolverConfig& cfg) {
  cfg.validate();
  const Grid g(cfg.n, cfg.box_length);
  ScalarField w1(g);
  if (cfg.family == "file") {
    Snapshot s = read_snapshot(cfg.initial_file);
    if (s.field.grid() != g) throw InvalidInput("initial file grid does not match the configuration");
    w1 = std::move(s.field);
  } else if (cfg.family != "zero") {
    w1 = sign_condition_data(parse_family(cfg.family), cfg.params, g);
  }
  if (cfg.dealias) w1 = dealias(w1);
  w1.set_flags(SymmetryFlag::constraint);
  TrajectoryState st;
  if (cfg.mode != Formulation::full_vorticity) st.w1 = w1;
  if (cfg.mode != Formulation::single_component) st.omega = reconstruct_vorticity(w1);
  return st;
}

RunResult run(const SolverConfig& cfg, const RunObserver& observer) { return run_from(cfg, initial_state(cfg), observer); }

RunResult run_from(const SolverConfig& cfg, TrajectoryState state, const RunObserver& observer) {
  cfg.validate();
  RunResult res;
  auto emit = [&](DiagnosticsRecord rec) {
    res.records.push_back(rec);
    if (observer.on_record) observer.on_record(rec);
  };
  double bkm = 0.0;
  double prev = state_linf_w1(state);
  DiagnosticsRecord first = diagnose(state);
  emit(first);

  const double t_end = cfg.t_end;
  int step = 0;
  bool last_recorded = true;
  res.completed = true;
  while (state.t < t_end * (1.0 - 1e-14)) {
    double dt = cfg.dt ? *cfg.dt : auto_dt(state, cfg.cfl_safety);
    if (!std::isfinite(dt) || dt < 1e-12 * t_end) {
      res.completed = false;
      res.message = "step size collapsed at t=" + std::to_string(state.t);
      break;
    }
    dt = std::min(dt, t_end - state.t);
    TrajectoryState next;
    try {
      next = step_rk4(state, dt, cfg.dealias);
    } catch (const NumericalBreakdown& e) {
      res.completed = false;
      res.message = std::string("numerical breakdown at t=") + std::to_string(state.t) + ": " + e.what();
      break;
    }
    if (next.t >= t_end * (1.0 - 1e-14)) next.t = t_end;
    state = std::move(next);
    ++step;
    if (cfg.reproject_every > 0 && state.w1 && step % cfg.reproject_every == 0) {
      state.w1 = project_constraint(*state.w1);
      ++res.reprojections;
    }
    const double cur = state_linf_w1(state);
    bkm += 0.5 * dt * (prev + cur);
    prev = cur;
    last_recorded = false;
    if (step % cfg.diagnostics_every == 0 || state.t >= t_end) {
      DiagnosticsRecord rec = diagnose(state);
      rec.step = step;
      rec.bkm_integral = bkm;
      emit(rec);
      last_recorded = true;
    }
    if (cfg.snapshot_every > 0 && step % cfg.snapshot_every == 0 && state.t < t_end && observer.on_snapshot)
      observer.on_snapshot(state, step);
  }
  if (!last_recorded) {
    DiagnosticsRecord rec = diagnose(state);
    rec.step = step;
    rec.bkm_integral = bkm;
    emit(rec);
  }
  if (res.completed) res.message = "completed";
  if (res.reprojections > 0) res.message += "; re-projected " + std::to_string(res.reprojections) + " times";
  res.steps = step;
  if (observer.on_snapshot) observer.on_snapshot(state, step);
  res.final_state = std::move(state);
  return res;
}

double phi_transport_residual(const ScalarField& w1, double epsilon, double inner_fraction) {
  const Grid& g = w1.grid();
  const double eps = epsilon > 0.0 ? epsilon : 2.0 * g.spacing();
  const VectorField u = velocity_from_w1(w1);
  const ScalarField dt_w1 = rhs_single(w1);
  const VectorField grad = gradient(w1);
  const int n = g.n();
  const double limit = inner_fraction * g.length();
  double worst = 0.0, scale = 0.0;
  std::size_t idx = 0;
  for (int i3 = 0; i3 < n; ++i3)
    for (int i2 = 0; i2 < n; ++i2)
      for (int i1 = 0; i1 < n; ++i1, ++idx) {
        const double x1 = g.coordinate(i1), x2 = g.coordinate(i2), x3 = g.coordinate(i3);
        if (std::max({std::abs(x1), std::abs(x2), std::abs(x3)}) > limit) continue;
        const double d = x2 - x3;
        if (std::abs(d) < eps) continue;
        const double adv = u[0][idx] * grad[0][idx] + u[1][idx] * grad[1][idx] + u[2][idx] * grad[2][idx];
        const double stretch = w1[idx] / d * (u[1][idx] - u[2][idx]);
        worst = std::max(worst, std::abs(dt_w1[idx] + adv - stretch) / std::abs(d));
        scale = std::max(scale, (std::abs(adv) + std::abs(stretch)) / std::abs(d));
      }
  return scale > 0.0 ? worst / scale : 0.0;
}

}  // namespace eulerperm
