#include <doctest.h>

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

using namespace eulerperm;

namespace {

constexpr double kPi = std::numbers::pi;

ScalarField member(const Grid& g, std::uint64_t seed) { return dealias(curl(random_symmetric_velocity(g, seed, 4))[0]); }

using Vec = Eigen::Vector3d;

// Taylor-Green plus an ABC flow on [-pi, pi)^3: solenoidal, mean-zero, periodic.
Vec tg_u(const Vec& x) {
  return {std::sin(x[0]) * std::cos(x[1]) * std::cos(x[2]) + 0.2 * std::sin(x[2]) + 0.4 * std::cos(x[1]),
          -std::cos(x[0]) * std::sin(x[1]) * std::cos(x[2]) + 0.3 * std::sin(x[0]) + 0.2 * std::cos(x[2]),
          0.4 * std::sin(x[1]) + 0.3 * std::cos(x[0])};
}

Vec curl_fd(const std::function<Vec(const Vec&)>& f, const Vec& x, double d) {
  Vec j[3];
  for (int a = 0; a < 3; ++a) {
    Vec e = Vec::Zero();
    e[a] = d;
    // Fourth-order central difference.
    j[a] = (-f(x + 2 * e) + 8 * f(x + e) - 8 * f(x - e) + f(x - 2 * e)) / (12 * d);
  }
  return {j[1][2] - j[2][1], j[2][0] - j[0][2], j[0][1] - j[1][0]};
}

Eigen::Matrix3d grad_fd(const std::function<Vec(const Vec&)>& f, const Vec& x, double d) {
  Eigen::Matrix3d m;  // (i, a) = d_a f_i
  for (int a = 0; a < 3; ++a) {
    Vec e = Vec::Zero();
    e[a] = d;
    m.col(a) = (-f(x + 2 * e) + 8 * f(x + e) - 8 * f(x - e) + f(x - 2 * e)) / (12 * d);
  }
  return m;
}

}  // namespace

TEST_CASE("zero data gives zero right-hand sides and a fixed point") {
  const Grid g(16, 4.0);
  CHECK(linf_norm(rhs_single(ScalarField(g))) == 0.0);
  CHECK(linf_norm(rhs_full(VectorField(g))) == 0.0);
  TrajectoryState s;
  s.w1 = ScalarField(g);
  const TrajectoryState n = step_rk4(s, 0.1);
  CHECK(linf_norm(*n.w1) == 0.0);
  CHECK(n.t == doctest::Approx(0.1));
}

TEST_CASE("single-component and full right-hand sides agree") {
  const Grid g(16, 2.0 * kPi);
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const ScalarField w1 = member(g, 40 + seed);
    const ScalarField a = rhs_single(w1);
    const VectorField b = rhs_full(reconstruct_vorticity(w1));
    CHECK(l2_norm(a - b[0]) <= 1e-12 * l2_norm(a));
    CHECK(constraint_residual(a).max() <= 1e-11);
    CHECK(is_mean_zero(a));
    CHECK(divergence_residual(b) <= 1e-11);
  }
}

TEST_CASE("full right-hand side matches a finite-difference evaluation") {
  const Grid g(16, 2.0 * kPi);
  const auto pts = grid_points(g);
  auto omega_fn = [](const Vec& x) { return curl_fd(tg_u, x, 1e-3); };
  const VectorField u = [&] {
    std::array<std::vector<double>, 3> s;
    for (auto& c : s) c.resize(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      const Vec v = tg_u(pts[i]);
      for (int c = 0; c < 3; ++c) s[c][i] = v[c];
    }
    return VectorField(ScalarField(g, s[0]), ScalarField(g, s[1]), ScalarField(g, s[2]));
  }();
  const VectorField omega = curl(u);
  const VectorField rhs = rhs_full(omega);
  double worst = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < g.size(); i += 7) {
    const Vec x = pts[i];
    const Eigen::Matrix3d gw = grad_fd(omega_fn, x, 1e-2);
    const Eigen::Matrix3d gu = grad_fd(tg_u, x, 1e-3);
    const Vec uu = tg_u(x), ww = omega_fn(x);
    const Vec expect = -gw * uu + gu * ww;
    const Vec got(rhs[0][i], rhs[1][i], rhs[2][i]);
    worst = std::max(worst, (got - expect).norm());
    scale = std::max(scale, expect.norm());
  }
  CHECK(worst <= 1e-6 * scale);
}

TEST_CASE("full right-hand side keeps permutation antisymmetry of vorticity") {
  const Grid g(16, 2.0 * kPi);
  const VectorField omega = reconstruct_vorticity(member(g, 3));
  const VectorField r = rhs_full(omega);
  for (const char* name : {"P12", "P13"}) {
    const VectorField pr = pullback(r, permutation(name));
    CHECK(l2_norm(pr + r) <= 1e-11 * l2_norm(r));
  }
}

TEST_CASE("right-hand sides reject invalid input") {
  const Grid g(16, 2.0 * kPi);
  CHECK_THROWS_AS(rhs_single(random_mean_zero_scalar(g, 1, 4)), InvalidInput);
  CHECK_THROWS_AS(rhs_full(random_band_limited_vector(g, 1, 4)), InvalidInput);
}

TEST_CASE("one step is dt * rhs to first order") {
  const Grid g(16, 2.0 * kPi);
  TrajectoryState s;
  s.w1 = member(g, 8);
  const ScalarField r = rhs_single(*s.w1);
  double prev = 0.0;
  for (double dt : {1e-2, 1e-3}) {
    const ScalarField diff = (1.0 / dt) * (*step_rk4(s, dt).w1 - *s.w1) - r;
    const double e = l2_norm(diff) / l2_norm(r);
    if (prev > 0.0) CHECK(prev / e == doctest::Approx(10.0).epsilon(0.05));
    prev = e;
  }
  CHECK_THROWS_AS(step_rk4(s, 0.0), InvalidInput);
}

TEST_CASE("auto dt uses the CFL formula") {
  const Grid g(16, 2.0 * kPi);
  TrajectoryState s;
  s.w1 = member(g, 9);
  const double umax = linf_norm(velocity_from_w1(*s.w1));
  CHECK(auto_dt(s, 0.5) == doctest::Approx(0.5 * g.spacing() / umax).epsilon(1e-14));
  TrajectoryState z;
  z.w1 = ScalarField(g);
  CHECK(auto_dt(z, 0.5) == doctest::Approx(0.5 * g.spacing() / 1e-30));
}

TEST_CASE("configuration validation") {
  SolverConfig c;
  CHECK_NOTHROW(c.validate());
  c.dt = -1.0;
  CHECK_THROWS_AS(c.validate(), InvalidInput);
  c = {};
  c.t_end = 0.0;
  CHECK_THROWS_AS(c.validate(), InvalidInput);
  c = {};
  c.diagnostics_every = 0;
  CHECK_THROWS_AS(c.validate(), InvalidInput);
  c = {};
  c.n = 15;
  CHECK_THROWS_AS(c.validate(), InvalidInput);
  c = {};
  c.family = "file";
  CHECK_THROWS_AS(c.validate(), InvalidInput);
  c = {};
  c.family = "spiral";
  CHECK_THROWS_AS(c.validate(), InvalidInput);
  CHECK(parse_formulation("both") == Formulation::both);
  CHECK_THROWS_AS(parse_formulation("half"), InvalidInput);
}

TEST_CASE("zero data run has identically zero diagnostics") {
  SolverConfig c;
  c.n = 16;
  c.family = "zero";
  c.t_end = 0.5;
  c.dt = 0.1;
  const RunResult r = run(c);
  CHECK(r.completed);
  CHECK(r.steps == 5);
  for (const auto& d : r.records) {
    CHECK(d.lambda == 0.0);
    CHECK(d.l2_velocity == 0.0);
    CHECK(d.hminus1_w1 == 0.0);
    CHECK(d.linf_w1 == 0.0);
    CHECK(d.bkm_integral == 0.0);
    CHECK(d.symmetry_residual_max == 0.0);
  }
}

TEST_CASE("short run conserves invariants and keeps symmetry") {
  SolverConfig c;
  c.n = 32;
  c.t_end = 0.5;
  c.diagnostics_every = 1;
  int snapshots = 0;
  RunObserver obs;
  obs.on_snapshot = [&](const TrajectoryState&, int) { ++snapshots; };
  const RunResult r = run(c, obs);
  REQUIRE(r.completed);
  CHECK(snapshots == 1);
  const auto& a = r.records.front();
  const auto& b = r.records.back();
  CHECK(b.t == 0.5);
  CHECK(std::abs(b.hminus1_w1 / a.hminus1_w1 - 1.0) <= 1e-6);
  CHECK(std::abs(b.l2_velocity / a.l2_velocity - 1.0) <= 1e-6);
  double prev = 0.0;
  for (const auto& d : r.records) {
    CHECK(d.bkm_integral >= prev);
    prev = d.bkm_integral;
    CHECK(d.symmetry_residual_max <= 1e-12);
    CHECK(d.constraint_residual_physical >= 0.0);
  }
  // Lambda varies continuously: no step jump exceeds ten times the mean step change.
  double total = 0.0, biggest = 0.0;
  for (std::size_t i = 1; i < r.records.size(); ++i) {
    const double d = std::abs(r.records[i].lambda - r.records[i - 1].lambda);
    total += d;
    biggest = std::max(biggest, d);
  }
  CHECK(biggest <= 10.0 * total / static_cast<double>(r.records.size() - 1));
}

TEST_CASE("both mode tracks the formulation gap") {
  SolverConfig c;
  c.n = 24;
  c.t_end = 0.1;
  c.mode = Formulation::both;
  const RunResult r = run(c);
  REQUIRE(r.completed);
  for (const auto& d : r.records) {
    REQUIRE(d.formulation_gap.has_value());
    CHECK(*d.formulation_gap <= 1e-12);
  }
}

TEST_CASE("re-projection is counted") {
  SolverConfig c;
  c.n = 16;
  c.t_end = 0.4;
  c.dt = 0.1;
  c.reproject_every = 2;
  const RunResult r = run(c);
  CHECK(r.reprojections == 2);
  CHECK(r.message.find("re-projected") != std::string::npos);
}

TEST_CASE("blow-up of the discrete scheme is reported as breakdown") {
  SolverConfig c;
  c.n = 16;
  c.params.amplitude = 200.0;
  c.dt = 5.0;
  c.t_end = 1000.0;
  c.dealias = false;
  const RunResult r = run(c);
  CHECK_FALSE(r.completed);
  CHECK(r.message.find("breakdown") != std::string::npos);
  REQUIRE(r.final_state.w1.has_value());
  CHECK(std::isfinite(l2_norm(*r.final_state.w1)));
}

TEST_CASE("RK4 converges at fourth order") {
  std::vector<ScalarField> out;
  for (int k = 0; k < 3; ++k) {
    SolverConfig c;
    c.n = 16;
    c.t_end = 1.0;
    c.dt = 0.5 / (1 << k);
    c.diagnostics_every = 100;
    out.push_back(*run(c).final_state.w1);
  }
  const double slope = std::log2(l2_norm(out[0] - out[1]) / l2_norm(out[1] - out[2]));
  CHECK(slope >= 3.9);
}

TEST_CASE("distance between nearby solutions grows at a delta-independent rate") {
  const Grid g(16, 8.0);
  SolverConfig c;
  c.n = 16;
  c.t_end = 1.0;
  c.dt = 0.25;
  const TrajectoryState base = initial_state(c);
  const ScalarField bump = project_constraint(member(g, 71));
  std::vector<double> growth;
  for (double delta : {1e-4, 5e-5}) {
    TrajectoryState p = base;
    p.w1 = *base.w1 + (delta / l2_norm(bump)) * bump;
    const double d0 = l2_norm(*p.w1 - *base.w1);
    const RunResult a = run_from(c, base), b = run_from(c, p);
    growth.push_back(l2_norm(*b.final_state.w1 - *a.final_state.w1) / d0);
  }
  CHECK(growth[0] == doctest::Approx(growth[1]).epsilon(1e-3));
}

TEST_CASE("zeta transport residual falls under refinement") {
  FamilyParams p;
  const double coarse = phi_transport_residual(sign_condition_data(InitialFamily::gaussian, p, Grid(24, 8.0)));
  const double fine = phi_transport_residual(sign_condition_data(InitialFamily::gaussian, p, Grid(32, 8.0)));
  CHECK(fine < coarse);
}
