#include "eulerperm/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>

#include "eulerperm/axisym.hpp"
#include "eulerperm/biot_savart.hpp"
#include "eulerperm/constraint.hpp"
#include "eulerperm/error.hpp"
#include "eulerperm/fixtures.hpp"
#include "eulerperm/pullback.hpp"
#include "eulerperm/solver.hpp"
#include "eulerperm/spectral.hpp"

namespace eulerperm {

namespace {

struct Sizes {
  int n_small;     // algebraic identities
  int n_medium;    // identities on random fields
  int field_count;
  int n_lambda;
  int n_kernel;
  double kernel_tol;
  int n_conservation;
};

Sizes sizes_for(VerifyLevel level) {
  if (level == VerifyLevel::fast) return {16, 16, 10, 32, 64, 1e-3, 32};
  return {16, 32, 50, 64, 64, 1e-3, 64};
}

double rel(const ScalarField& a, const ScalarField& b) { return l2_norm(a - b) / std::max(l2_norm(b), 1e-300); }
double rel(const VectorField& a, const VectorField& b) { return l2_norm(a - b) / std::max(l2_norm(b), 1e-300); }

double spectrum_rel(const Spectrum& a, const Spectrum& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(b[i]);
  }
  return std::sqrt(num / std::max(den, 1e-300));
}

class Runner {
 public:
  Runner(VerifyReport& report, const std::function<void(const CheckResult&)>& progress)
      : report_(report), progress_(progress) {}

  void record(const std::string& suite, const std::string& name, double residual, double tol, std::string detail = {}) {
    CheckResult r{suite, name, residual, tol, std::isfinite(residual) && residual <= tol, std::move(detail)};
    push(std::move(r));
  }

  template <class F>
  void guarded(const std::string& suite, F&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      push(CheckResult{suite, "exception", NAN, 0.0, false, e.what()});
    }
  }

 private:
  void push(CheckResult r) {
    if (progress_) progress_(r);
    report_.checks.push_back(std::move(r));
  }
  VerifyReport& report_;
  const std::function<void(const CheckResult&)>& progress_;
};

void symmetry_algebra(Runner& run) {
  run.guarded("symmetry_algebra", [&] {
    double closure = 0.0, parity = 0.0;
    for (const auto& a : all_permutations()) {
      parity = std::max(parity, std::abs(a.as_matrix().determinant() - a.parity()));
      for (const auto& b : all_permutations()) {
        const Eigen::Matrix3d prod = a.as_matrix() * b.as_matrix();
        closure = std::max(closure, (compose(a, b).as_matrix() - prod).cwiseAbs().maxCoeff());
      }
      closure = std::max(closure, (a.as_matrix() * sigma() - sigma()).cwiseAbs().maxCoeff());
    }
    run.record("symmetry_algebra", "composition_and_sigma_fixed", closure, 0.0);
    run.record("symmetry_algebra", "parity_equals_det", parity, 1e-15);
    const Eigen::Matrix3d m = mirror(sigma_unit()).matrix();
    const double inv = (m * m - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
    const double flip = (m * sigma_unit() + sigma_unit()).cwiseAbs().maxCoeff();
    run.record("symmetry_algebra", "mirror_involution", std::max(inv, flip), 1e-15);
    double commute = 0.0;
    for (const auto& p : all_permutations())
      commute = std::max(commute, (p.as_matrix() * m - m * p.as_matrix()).cwiseAbs().maxCoeff());
    run.record("symmetry_algebra", "mirror_commutes_with_permutations", commute, 1e-15);
  });
}

void curl_parity(Runner& run, const Sizes& sz) {
  run.guarded("curl_parity", [&] {
    const Grid g(sz.n_medium, 2.0 * std::numbers::pi);
    const int band = sz.n_medium / 3;
    double worst = 0.0;
    for (int k = 0; k < sz.field_count; ++k) {
      const VectorField u = random_band_limited_vector(g, 1000 + k, band);
      const VectorField w = curl(u);
      for (const auto& p : all_permutations()) {
        const VectorField lhs = curl(pullback(u, p));
        const VectorField rhs = static_cast<double>(p.parity()) * pullback(w, p);
        worst = std::max(worst, l2_norm(lhs - rhs) / std::max(l2_norm(w), 1e-300));
      }
    }
    run.record("curl_parity", "random_fields", worst, 1e-12, std::to_string(sz.field_count) + " fields");

    const VectorField u = random_symmetric_velocity(g, 77, band);
    const VectorField w = curl(u);
    const VectorField rebuilt = reconstruct_vorticity(w[0]);
    run.record("curl_parity", "reconstruction_matches_curl", rel(rebuilt, w), 1e-12);
    double par = 0.0;
    for (const auto& p : all_permutations())
      par = std::max(par, rel(pullback(rebuilt, p), static_cast<double>(p.parity()) * rebuilt));
    run.record("curl_parity", "reconstructed_vorticity_parity", par, 1e-12);
  });
}

void fourier_commutation(Runner& run, const Sizes& sz) {
  run.guarded("fourier_commutation", [&] {
    const Grid g(sz.n_small, 3.0);
    const ScalarField f = random_band_limited_scalar(g, 5, sz.n_small / 3);
    std::vector<OrthogonalMap> maps;
    for (const auto& p : all_permutations()) {
      maps.emplace_back(p);
      maps.push_back(compose(central_inversion(), OrthogonalMap(p)));
    }
    double pb = 0.0;
    for (const auto& q : maps)
      pb = std::max(pb, spectrum_rel(pullback(f, q).spectrum(), pullback_spectrum(g, f.spectrum(), q)));
    run.record("fourier_commutation", "pullback_spectrum", pb, 1e-12);

    // d_a (f o P) = sum_b P_ba (d_b f) o P
    double chain = 0.0;
    for (const auto& p : all_permutations()) {
      const ScalarField fp = compose_with(f, p);
      for (int a = 0; a < 3; ++a) {
        ScalarField expect(g);
        for (int b = 0; b < 3; ++b) {
          const int coef = p.matrix()[b][a];
          if (coef != 0) expect = expect + static_cast<double>(coef) * compose_with(derivative(f, b), p);
        }
        chain = std::max(chain, rel(derivative(fp, a), expect));
      }
    }
    run.record("fourier_commutation", "derivative_chain_rule", chain, 1e-12);
  });
}

void norm_isometries(Runner& run, const Sizes& sz) {
  run.guarded("norm_isometries", [&] {
    const Grid g(sz.n_medium, 2.0 * std::numbers::pi);
    const VectorField u = random_symmetric_velocity(g, 11, sz.n_medium / 3);
    const VectorField w = curl(u);
    const NormSpec s2{2.0};
    double eq = 0.0;
    for (int c = 1; c < 3; ++c) {
      const double a = sobolev_norm(w[0], s2, NormKind::HsCapHdotNeg1);
      eq = std::max(eq, std::abs(sobolev_norm(w[c], s2, NormKind::HsCapHdotNeg1) - a) / a);
      eq = std::max(eq, std::abs(l2_norm(w[c]) - l2_norm(w[0])) / l2_norm(w[0]));
      eq = std::max(eq, std::abs(linf_norm(w[c]) - linf_norm(w[0])) / linf_norm(w[0]));
    }
    run.record("norm_isometries", "equal_component_norms", eq, 1e-12);
    const double lhs = sobolev_norm(w[0], s2, NormKind::HsCapHdotNeg1);
    const double rhs = sobolev_norm(u, NormSpec{3.0}, NormKind::Hs) / std::sqrt(3.0);
    run.record("norm_isometries", "w1_vs_velocity_h_s_plus_1", std::abs(lhs - rhs) / rhs, 1e-10);
    const ScalarField w1 = extract_w1(u);
    run.record("norm_isometries", "round_trip_velocity", rel(velocity_from_w1(w1), u), 1e-10);
  });
}

void projection(Runner& run, const Sizes& sz) {
  run.guarded("projection", [&] {
    const Grid g(sz.n_medium, 2.0 * std::numbers::pi);
    double idem = 0.0, adj = 0.0, post = 0.0;
    const int count = std::min(sz.field_count, 20);
    for (int k = 0; k < count; ++k) {
      const ScalarField f = random_mean_zero_scalar(g, 300 + k, sz.n_medium / 2 - 1);
      const ScalarField h = random_mean_zero_scalar(g, 600 + k, sz.n_medium / 2 - 1);
      const ScalarField pf = project_constraint(f);
      const ScalarField ph = project_constraint(h);
      idem = std::max(idem, rel(project_constraint(pf), pf));
      adj = std::max(adj, std::abs(inner_product(pf, h) - inner_product(f, ph)) / (l2_norm(f) * l2_norm(h)));
      post = std::max(post, constraint_residual(pf).max());
    }
    run.record("projection", "idempotent", idem, 1e-12);
    run.record("projection", "self_adjoint", adj, 1e-12);
    run.record("projection", "post_projection_residual", post, 1e-12);
    const VectorField u = random_symmetric_velocity(g, 21, sz.n_medium / 3);
    const ScalarField w1 = curl(u)[0];
    run.record("projection", "fixes_members", rel(project_constraint(w1), w1), 1e-13);
  });
}

void lambda_suites(Runner& run, const Sizes& sz) {
  run.guarded("lambda", [&] {
    const Grid g(sz.n_lambda, 8.0);
    FamilyParams params;
    params.width = 0.6;
    const ScalarField w1 = sign_condition_data(InitialFamily::gaussian, params, g);
    const StrainReport r = lambda_diagnostics(w1);
    const double vals[5] = {r.lambda_w1, r.lambda_w2, r.lambda_w3, r.lambda_omega, r.lambda_spectral};
    double pair = 0.0;
    for (int a = 0; a < 5; ++a)
      for (int b = a + 1; b < 5; ++b) pair = std::max(pair, std::abs(vals[a] - vals[b]) / std::abs(vals[b]));
    const double tol = sz.n_lambda >= 64 ? 1e-6 : 1e-4;
    run.record("lambda", "pairwise_agreement", pair, tol);
    const double exact = 0.3 * params.amplitude * params.width * params.width;
    run.record("lambda", "gaussian_closed_form", std::abs(r.lambda_spectral - exact) / exact, tol);
    run.record("lambda", "positive", r.lambda_spectral > 0.0 ? 0.0 : 1.0, 0.0);
    const double lam = r.lambda_spectral;
    run.record("eigenstructure", "gradient_matrix",
               (r.grad_origin - lambda_gradient_matrix(lam)).cwiseAbs().maxCoeff() / std::abs(lam), tol);
    const double expect[3] = {-2.0 * lam, lam, lam};
    double eig = 0.0;
    for (int i = 0; i < 3; ++i) eig = std::max(eig, std::abs(r.eigenvalues[i] - expect[i]) / std::abs(lam));
    run.record("eigenstructure", "eigenvalues", eig, sz.n_lambda >= 64 ? 1e-8 : 1e-6);
    run.record("eigenstructure", "compression_axis_alignment", 1.0 - r.axis_alignment, 1e-8);
  });
}

void planes(Runner& run, const Sizes& sz) {
  run.guarded("planes", [&] {
    const Grid g(sz.n_medium, 2.0 * std::numbers::pi);
    const VectorField u = random_symmetric_velocity(g, 31, sz.n_medium / 3);
    const PlaneIdentityReport p = plane_identities(u, curl(u));
    run.record("planes", "velocity_planes", p.velocity_planes, 1e-12);
    run.record("planes", "vorticity_planes", p.vorticity_planes, 1e-12);
    run.record("planes", "axis", std::max(p.axis_vorticity, p.axis_velocity), 1e-12);
  });
}

std::vector<Eigen::Vector3d> kernel_targets() {
  std::vector<Eigen::Vector3d> pts;
  for (int k = 0; k < 20; ++k)
    pts.emplace_back(0.5 * ((k * 7) % 9 - 4), 0.5 * ((k * 5 + 2) % 9 - 4), 0.5 * ((k * 3 + 1) % 9 - 4));
  return pts;
}

void kernel(Runner& run, const Sizes& sz) {
  run.guarded("kernel", [&] {
    const Grid g(sz.n_kernel, 16.0);
    FamilyParams params;
    params.width = 0.8;
    const ScalarField w1 = sign_condition_data(InitialFamily::gaussian, params, g);
    const auto pts = kernel_targets();
    const auto uk = velocity_kernel(w1, pts, KernelQuadrature{2, true});
    const VectorField u = velocity_from_w1(w1, {BiotSavartDomain::free_space});
    const TrigInterpolant i0(u[0]), i1(u[1]), i2(u[2]);
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const Eigen::Vector3d us(i0(pts[k]), i1(pts[k]), i2(pts[k]));
      num = std::max(num, (uk[k] - us).norm());
      den = std::max(den, us.norm());
    }
    run.record("kernel", "kernel_vs_spectral_velocity", num / den, sz.kernel_tol, std::to_string(pts.size()) + " targets");
  });
}

void conservation(Runner& run, const Sizes& sz) {
  run.guarded("conservation", [&] {
    SolverConfig cfg;
    cfg.n = sz.n_conservation;
    cfg.t_end = 1.0;
    const RunResult res = run_from(cfg, initial_state(cfg));
    if (!res.completed) throw NumericalBreakdown(res.message);
    const DiagnosticsRecord& a = res.records.front();
    const DiagnosticsRecord& b = res.records.back();
    run.record("conservation", "hminus1_drift", std::abs(b.hminus1_w1 / a.hminus1_w1 - 1.0), 1e-6);
    run.record("conservation", "l2_velocity_drift", std::abs(b.l2_velocity / a.l2_velocity - 1.0), 1e-6);
    double sym = 0.0, con = 0.0;
    for (const auto& r : res.records) {
      sym = std::max(sym, r.symmetry_residual_max);
      con = std::max({con, r.constraint_residual_physical, r.constraint_residual_fourier});
    }
    run.record("conservation", "symmetry_persistence", sym, 1e-9);
    run.record("conservation", "constraint_drift", con, 1e-9);
  });
}

}  // namespace

VerifyLevel parse_verify_level(const std::string& name) {
  if (name == "fast") return VerifyLevel::fast;
  if (name == "full") return VerifyLevel::full;
  throw InvalidInput("unknown verification level: " + name);
}

std::string to_string(VerifyLevel level) { return level == VerifyLevel::fast ? "fast" : "full"; }

bool VerifyReport::all_passed() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

VerifyReport run_verification(VerifyLevel level, const std::function<void(const CheckResult&)>& progress) {
  const auto start = std::chrono::steady_clock::now();
  VerifyReport report;
  report.level = level;
  Runner run(report, progress);
  const Sizes sz = sizes_for(level);
  symmetry_algebra(run);
  curl_parity(run, sz);
  fourier_commutation(run, sz);
  norm_isometries(run, sz);
  projection(run, sz);
  lambda_suites(run, sz);
  planes(run, sz);
  kernel(run, sz);
  conservation(run, sz);
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace eulerperm
