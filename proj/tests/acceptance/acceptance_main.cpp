// Acceptance checks: one PASS/FAIL line per criterion, tolerances fixed here.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "eulerperm/axisym.hpp"
#include "eulerperm/biot_savart.hpp"
#include "eulerperm/constraint.hpp"
#include "eulerperm/fixtures.hpp"
#include "eulerperm/pullback.hpp"
#include "eulerperm/solver.hpp"
#include "eulerperm/spectral.hpp"

using namespace eulerperm;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double rel(const ScalarField& a, const ScalarField& b) { return l2_norm(a - b) / l2_norm(b); }
double rel(const VectorField& a, const VectorField& b) { return l2_norm(a - b) / l2_norm(b); }

struct Line {
  bool pass = true;
  std::string text;
  // Records "name=value (op tol)" and folds it into pass.
  void le(const std::string& name, double v, double tol) { add(name, v, "<=", tol, std::isfinite(v) && v <= tol); }
  void ge(const std::string& name, double v, double tol) { add(name, v, ">=", tol, std::isfinite(v) && v >= tol); }

 private:
  void add(const std::string& name, double v, const char* op, double tol, bool ok) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s%s=%.3e %s %.1e", text.empty() ? "" : "; ", name.c_str(), v, op, tol);
    text += buf;
    pass = pass && ok;
  }
};

// 1. Curl parity for random fields under all permutations.
Line curl_parity() {
  Line l;
  const Grid g(32, kTwoPi);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const VectorField u = random_band_limited_vector(g, 5000 + k, 10);
    const VectorField w = curl(u);
    for (const auto& p : all_permutations())
      worst = std::max(worst, l2_norm(curl(pullback(u, p)) - static_cast<double>(p.parity()) * pullback(w, p)) /
                                  l2_norm(w));
  }
  l.le("max_rel_residual", worst, 1e-12);
  return l;
}

// 2. Round trip through w1 and the norm identities.
Line characterization() {
  Line l;
  const Grid g(32, kTwoPi);
  const NormSpec s2{2.0};
  double trip = 0.0, eq = 0.0, hs = 0.0;
  for (int k = 0; k < 5; ++k) {
    const VectorField u = random_symmetric_velocity(g, 6000 + k, 10);
    const VectorField w = curl(u);
    trip = std::max(trip, rel(velocity_from_w1(extract_w1(u)), u));
    const std::function<double(const ScalarField&)> norms[3] = {
        [&](const ScalarField& f) { return sobolev_norm(f, s2, NormKind::HsCapHdotNeg1); },
        [](const ScalarField& f) { return l2_norm(f); }, [](const ScalarField& f) { return linf_norm(f); }};
    for (const auto& norm : norms) {
      const double a = norm(w[0]);
      for (int c = 1; c < 3; ++c) eq = std::max(eq, std::abs(norm(w[c]) - a) / a);
    }
    const double lhs = sobolev_norm(w[0], s2, NormKind::HsCapHdotNeg1);
    const double rhs = sobolev_norm(u, NormSpec{3.0}, NormKind::Hs) / std::sqrt(3.0);
    hs = std::max(hs, std::abs(lhs - rhs) / rhs);
  }
  l.le("round_trip", trip, 1e-10);
  l.le("component_norms", eq, 1e-12);
  l.le("w1_vs_u_Hs+1", hs, 1e-10);
  return l;
}

// 3. Constraint projection.
Line projection() {
  Line l;
  const Grid g(32, kTwoPi);
  double idem = 0.0, adj = 0.0, post = 0.0, fix = 0.0;
  for (int k = 0; k < 20; ++k) {
    const ScalarField f = random_mean_zero_scalar(g, 7000 + k, 15);
    const ScalarField h = random_mean_zero_scalar(g, 7500 + k, 15);
    const ScalarField pf = project_constraint(f), ph = project_constraint(h);
    idem = std::max(idem, rel(project_constraint(pf), pf));
    adj = std::max(adj, std::abs(inner_product(pf, h) - inner_product(f, ph)) / (l2_norm(f) * l2_norm(h)));
    post = std::max(post, constraint_residual(pf).max());
    const ScalarField m = curl(random_symmetric_velocity(g, 7900 + k, 10))[0];
    fix = std::max(fix, rel(project_constraint(m), m));
  }
  l.le("idempotence", idem, 1e-12);
  l.le("self_adjoint", adj, 1e-12);
  l.le("post_residual", post, 1e-12);
  l.le("fixes_members", fix, 1e-13);
  return l;
}

// 4. Lambda from every route, gradient pattern, eigenstructure.
Line lambda_cross() {
  Line l;
  FamilyParams p;
  p.width = 0.6;
  const StrainReport r = lambda_diagnostics(sign_condition_data(InitialFamily::gaussian, p, Grid(64, 8.0)));
  const double v[5] = {r.lambda_w1, r.lambda_w2, r.lambda_w3, r.lambda_omega, r.lambda_spectral};
  double pair = 0.0;
  for (int a = 0; a < 5; ++a)
    for (int b = a + 1; b < 5; ++b) pair = std::max(pair, std::abs(v[a] - v[b]) / std::abs(v[b]));
  const double lam = r.lambda_spectral;
  const double grad = (r.grad_origin - lambda_gradient_matrix(lam)).cwiseAbs().maxCoeff() / std::abs(lam);
  const double expect[3] = {-2.0 * lam, lam, lam};
  double eig = 0.0;
  for (int i = 0; i < 3; ++i) eig = std::max(eig, std::abs(r.eigenvalues[i] - expect[i]) / std::abs(lam));
  l.le("pairwise", pair, 1e-6);
  l.le("gradient", grad, 1e-6);
  l.le("eigenvalues", eig, 1e-8);
  l.le("1-alignment", 1.0 - r.axis_alignment, 1e-8);
  l.ge("lambda", lam, 1e-300);
  return l;
}

// 5. Kernel quadrature against the spectral free-space velocity.
double kernel_error(int n) {
  const Grid g(n, 16.0);
  FamilyParams p;
  p.width = 0.8;
  const ScalarField w1 = sign_condition_data(InitialFamily::gaussian, p, g);
  std::vector<Eigen::Vector3d> pts;
  for (int k = 0; k < 20; ++k)
    pts.emplace_back(0.5 * ((k * 7) % 9 - 4), 0.5 * ((k * 5 + 2) % 9 - 4), 0.5 * ((k * 3 + 1) % 9 - 4));
  const auto uk = velocity_kernel(w1, pts, KernelQuadrature{2, true});
  const VectorField u = velocity_from_w1(w1, {BiotSavartDomain::free_space});
  const TrigInterpolant i0(u[0]), i1(u[1]), i2(u[2]);
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const Eigen::Vector3d us(i0(pts[k]), i1(pts[k]), i2(pts[k]));
    num = std::max(num, (uk[k] - us).norm());
    den = std::max(den, us.norm());
  }
  return num / den;
}

Line kernel() {
  Line l;
  const double e64 = kernel_error(64), e96 = kernel_error(96);
  l.le("rel_error_n64", e64, 1e-3);
  l.le("n96_over_n64", e96 / e64, 1.0 - 1e-12);
  return l;
}

// 6 and 8 share one unit-time run.
struct ConservationRun {
  RunResult res;
  VectorField u_final, omega_final;
};

ConservationRun conservation_run() {
  SolverConfig c;
  c.n = 64;
  c.box_length = 8.0;
  c.t_end = 1.0;
  c.cfl_safety = 0.5;
  RunResult res = run(c);
  const ScalarField w1 = *res.final_state.w1;
  return {std::move(res), velocity_from_w1(w1), reconstruct_vorticity(w1)};
}

Line conservation(const ConservationRun& cr) {
  Line l;
  const auto& a = cr.res.records.front();
  const auto& b = cr.res.records.back();
  l.ge("completed", cr.res.completed ? 1.0 : 0.0, 1.0);
  l.le("hminus1_drift", std::abs(b.hminus1_w1 / a.hminus1_w1 - 1.0), 1e-6);
  l.le("l2_velocity_drift", std::abs(b.l2_velocity / a.l2_velocity - 1.0), 1e-6);
  l.le("bkm_integral", b.bkm_integral, 1e300);
  return l;
}

Line symmetry(const ConservationRun& cr) {
  Line l;
  double sym = 0.0;
  for (const auto& r : cr.res.records) sym = std::max(sym, r.symmetry_residual_max);
  l.le("permutation_residual", std::max(sym, permutation_residual(cr.u_final)), 1e-9);
  l.le("plane_identities", plane_identities(cr.u_final, cr.omega_final).max(), 1e-9);
  return l;
}

// 7. Single-component and full-vorticity runs agree.
Line formulations() {
  Line l;
  SolverConfig c;
  c.n = 48;
  c.t_end = 0.25;
  c.mode = Formulation::both;
  const RunResult r = run(c);
  double gap = 0.0;
  for (const auto& d : r.records) gap = std::max(gap, d.formulation_gap.value_or(INFINITY));
  l.ge("completed", r.completed ? 1.0 : 0.0, 1.0);
  l.le("max_gap", gap, 1e-8);
  return l;
}

// 9. Rotation, rotated ring symmetry, zeta transport convergence.
Line axisym() {
  Line l;
  const Eigen::Matrix3d q = rotation_Q().matrix();
  const double exact = std::max({(q.transpose() * q - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff(),
                                 std::abs(q.determinant() - 1.0),
                                 (q * Eigen::Vector3d::UnitZ() - sigma_unit()).cwiseAbs().maxCoeff()});
  l.le("Q_exactness", exact, 1e-15);
  const VectorField ring = rotate_axisym(gaussian_vortex_ring_velocity(Grid(32, 10.0), 1.0, 1.0));
  l.le("rotated_permutation", permutation_residual(ring), 1e-8);
  l.le("rotated_sigma_mirror", sampled_mirror_residual(ring, sigma_unit()), 1e-8);
  FamilyParams p;
  const double coarse = phi_transport_residual(sign_condition_data(InitialFamily::gaussian, p, Grid(32, 8.0)));
  const double fine = phi_transport_residual(sign_condition_data(InitialFamily::gaussian, p, Grid(64, 8.0)));
  l.ge("zeta_transport_ratio", coarse / fine, 4.0);
  return l;
}

// 10. Temporal order from dt halving.
Line rk4_order() {
  Line l;
  std::vector<ScalarField> out;
  for (int k = 0; k < 4; ++k) {
    SolverConfig c;
    c.n = 32;
    c.t_end = 1.0;
    c.dt = 0.5 / (1 << k);
    c.diagnostics_every = 1000;
    out.push_back(*run(c).final_state.w1);
  }
  double slope = INFINITY;
  for (int k = 0; k + 2 < 4; ++k)
    slope = std::min(slope, std::log2(l2_norm(out[k] - out[k + 1]) / l2_norm(out[k + 1] - out[k + 2])));
  l.ge("min_slope", slope, 3.9);
  return l;
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, const char* name, const std::function<Line()>& f) {
    const auto t0 = std::chrono::steady_clock::now();
    Line l;
    try {
      l = f();
    } catch (const std::exception& e) {
      l.pass = false;
      l.text = std::string("exception: ") + e.what();
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %2d %-20s %s [%.1f s]\n", l.pass ? "PASS" : "FAIL", id, name, l.text.c_str(), s);
    std::fflush(stdout);
    failures += l.pass ? 0 : 1;
  };
  report(1, "curl_parity", curl_parity);
  report(2, "characterization", characterization);
  report(3, "projection", projection);
  report(4, "lambda", lambda_cross);
  report(5, "kernel", kernel);
  std::optional<ConservationRun> cr;
  report(6, "conservation", [&] {
    cr = conservation_run();
    return conservation(*cr);
  });
  report(7, "formulations", formulations);
  report(8, "symmetry", [&] {
    if (!cr) throw std::runtime_error("conservation run unavailable");
    return symmetry(*cr);
  });
  report(9, "axisym", axisym);
  report(10, "rk4_order", rk4_order);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
