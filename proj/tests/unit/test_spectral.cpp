#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>

#include "eulerperm/axisym.hpp"
#include "eulerperm/error.hpp"
#include "eulerperm/fixtures.hpp"
#include "eulerperm/pullback.hpp"
#include "eulerperm/snapshot.hpp"
#include "eulerperm/spectral.hpp"

using namespace eulerperm;

namespace {

constexpr double kPi = std::numbers::pi;

ScalarField sample(const Grid& g, const std::function<double(double, double, double)>& f) {
  std::vector<double> s(g.size());
  std::size_t idx = 0;
  for (int k = 0; k < g.n(); ++k)
    for (int j = 0; j < g.n(); ++j)
      for (int i = 0; i < g.n(); ++i, ++idx) s[idx] = f(g.coordinate(i), g.coordinate(j), g.coordinate(k));
  return ScalarField(g, std::move(s));
}

double max_diff(const ScalarField& a, const ScalarField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.grid().size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("grid validation and frequency map") {
  CHECK_THROWS_AS(Grid(15, 1.0), InvalidInput);
  CHECK_THROWS_AS(Grid(2, 1.0), InvalidInput);
  CHECK_THROWS_AS(Grid(16, 0.0), InvalidInput);
  const Grid g(8, 2.0);
  CHECK(g.frequency(3) == 3);
  CHECK(g.frequency(4) == -4);
  CHECK(g.frequency(7) == -1);
  CHECK(g.derivative_wavenumber(4) == 0.0);
  CHECK(g.coordinate(g.origin_index()) == 0.0);
  CHECK(g.index(1, 2, 3) == 1 + 8 * (2 + 8 * 3));
}

TEST_CASE("transform round trip and non-finite input") {
  const Grid g(16, 3.0);
  const ScalarField f = random_band_limited_scalar(g, 3, 7);
  const auto back = inverse_transform(g, forward_transform(g, f.samples()));
  double m = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) m = std::max(m, std::abs(back[i] - f[i]));
  CHECK(m <= 1e-13);
  std::vector<double> bad(g.size(), 0.0);
  bad[5] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(forward_transform(g, bad), InvalidInput);
}

TEST_CASE("derivatives of single modes are exact") {
  const Grid g(16, 2.5);
  const double k = 2.0 * kPi * 3.0 / g.length();
  const ScalarField f = sample(g, [&](double, double y, double) { return std::sin(k * y); });
  const ScalarField df = sample(g, [&](double, double y, double) { return k * std::cos(k * y); });
  CHECK(max_diff(derivative(f, 1), df) <= 1e-12);
  CHECK(linf_norm(derivative(f, 0)) <= 1e-13);
  const ScalarField lap = sample(g, [&](double, double y, double) { return -k * k * std::sin(k * y); });
  CHECK(max_diff(laplacian(f), lap) <= 1e-11);
  CHECK(max_diff(inverse_laplacian(laplacian(f)), -1.0 * f) <= 1e-13);
}

TEST_CASE("inverse Laplacian needs mean-zero input") {
  const Grid g(8, 1.0);
  const ScalarField one = sample(g, [](double, double, double) { return 1.0; });
  CHECK_FALSE(is_mean_zero(one));
  CHECK_THROWS_AS(inverse_laplacian(one), InvalidInput);
}

TEST_CASE("vector calculus identities") {
  const Grid g(16, 2.0 * kPi);
  const ScalarField phi = random_band_limited_scalar(g, 9, 5);
  CHECK(l2_norm(curl(gradient(phi))) <= 1e-12 * l2_norm(gradient(phi)));
  const VectorField u = random_band_limited_vector(g, 4, 5);
  CHECK(l2_norm(divergence(curl(u))) <= 1e-12 * l2_norm(curl(u)));
  const VectorField p = leray_project(u);
  CHECK(l2_norm(divergence(p)) <= 1e-12 * l2_norm(u));
  CHECK(l2_norm(leray_project(p) - p) <= 1e-13 * l2_norm(p));
}

TEST_CASE("Sobolev norms of a single cosine mode") {
  const double L = 3.0;
  const Grid g(16, L);
  const int m = 2;
  const ScalarField f = sample(g, [&](double x, double, double) { return std::cos(2.0 * kPi * m * x / L); });
  const double base = L * L * L / 2.0;  // ||cos||^2 over the box
  const double xi2 = 4.0 * kPi * kPi * (m / L) * (m / L);
  for (double s : {0.0, 1.0, 2.5}) {
    const double expect = std::sqrt(base * std::pow(1.0 + xi2, s));
    CHECK(sobolev_norm(f, NormSpec{s}, NormKind::Hs) == doctest::Approx(expect).epsilon(1e-13));
    const double comb = std::sqrt(base * std::pow(1.0 + xi2, s + 1.0) / xi2);
    CHECK(sobolev_norm(f, NormSpec{s}, NormKind::HsCapHdotNeg1) == doctest::Approx(comb).epsilon(1e-13));
  }
  CHECK(sobolev_norm(f, NormSpec{}, NormKind::HdotNeg1) == doctest::Approx(std::sqrt(base / xi2)).epsilon(1e-13));
  CHECK(sobolev_norm(f, NormSpec{}, NormKind::Hs) == doctest::Approx(l2_norm(f)).epsilon(1e-13));
  CHECK_THROWS_AS(sobolev_norm(f, NormSpec{-1.5}, NormKind::HsCapHdotNeg1), InvalidInput);
  const ScalarField one = sample(g, [](double, double, double) { return 1.0; });
  CHECK_THROWS_AS(sobolev_norm(one, NormSpec{}, NormKind::HdotNeg1), InvalidInput);
}

TEST_CASE("dealiased products carry no aliasing error") {
  // Oracle: the same product formed on a grid with twice the resolution.
  const Grid g(16, 2.0);
  const ScalarField a = dealias(random_band_limited_scalar(g, 1, 7));
  const ScalarField b = dealias(random_band_limited_scalar(g, 2, 7));
  std::vector<double> prod(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) prod[i] = a[i] * b[i];
  const ScalarField coarse = dealias(ScalarField(g, prod));

  const ScalarField af = resample(a, 32), bf = resample(b, 32);
  std::vector<double> fine(af.grid().size());
  for (std::size_t i = 0; i < fine.size(); ++i) fine[i] = af[i] * bf[i];
  const ScalarField exact = dealias(resample(ScalarField(af.grid(), fine), 16));
  CHECK(max_diff(coarse, exact) <= 1e-13 * linf_norm(exact));
}

TEST_CASE("dealias cutoff") {
  const Grid g(12, 1.0);
  Spectrum c(g.size(), Complex(1.0));
  dealias_in_place(g, c);
  CHECK(c[g.index(4, 0, 0)] == Complex(1.0));
  CHECK(c[g.index(5, 0, 0)] == Complex(0.0));
  CHECK(c[g.index(g.wrap(-4), 4, g.wrap(-4))] == Complex(1.0));
}

TEST_CASE("resample refines and restores band-limited fields") {
  const Grid g(16, 2.0);
  const ScalarField f = random_band_limited_scalar(g, 12, 7);
  const ScalarField up = resample(f, 24);
  CHECK(max_diff(resample(up, 16), f) <= 1e-13);
  for (int i = 0; i < 16; i += 2)
    CHECK(up.at(3 * i / 2, 0, 0) == doctest::Approx(f.at(i, 0, 0)).epsilon(1e-12));
}

TEST_CASE("value at the origin from coefficients") {
  const Grid g(8, 1.7);
  const ScalarField f = random_band_limited_scalar(g, 8, 4);
  CHECK(value_at_origin(g, f.spectrum()) == doctest::Approx(f[g.origin()]).epsilon(1e-13));
}

TEST_CASE("interpolant reproduces samples and band-limited functions") {
  const Grid g(16, 4.0);
  const double k = 2.0 * kPi / g.length();
  auto fn = [&](double x, double y, double z) { return std::cos(k * x) * std::sin(2 * k * y) + std::cos(3 * k * z + 0.4); };
  const ScalarField f = sample(g, fn);
  const TrigInterpolant it(f);
  CHECK(it.band() == 3);
  CHECK(it(Eigen::Vector3d(g.coordinate(3), g.coordinate(5), g.coordinate(11))) ==
        doctest::Approx(f.at(3, 5, 11)).epsilon(1e-13));
  const Eigen::Vector3d p(0.123, -1.4, 0.77);
  CHECK(it(p) == doctest::Approx(fn(p[0], p[1], p[2])).epsilon(1e-12));
}

TEST_CASE("exact and interpolating pullbacks agree on signed permutations") {
  const Grid g(8, 2.0);
  const VectorField u = random_band_limited_vector(g, 6, 3);
  const OrthogonalMap q = compose(OrthogonalMap(permutation("Pf")), central_inversion());
  const VectorField a = pullback(u, q);
  const VectorField b = pullback(u, q, PullbackMode::interpolating);
  CHECK(l2_norm(a - b) <= 1e-12 * l2_norm(a));
  CHECK_THROWS_AS(pullback(u, rotation_Q()), InvalidInput);
}

TEST_CASE("pullback matches the spectral index map") {
  const Grid g(8, 2.0);
  const ScalarField f = random_band_limited_scalar(g, 14, 3);
  for (const auto& p : all_permutations()) {
    const Spectrum direct = pullback_spectrum(g, f.spectrum(), p);
    const Spectrum via = pullback(f, p).spectrum();
    double m = 0.0;
    for (std::size_t i = 0; i < direct.size(); ++i) m = std::max(m, std::abs(direct[i] - via[i]));
    CHECK(m <= 1e-12);
  }
}

TEST_CASE("symmetry flags text form") {
  const SymmetryFlag f = SymmetryFlag::permutation | SymmetryFlag::constraint;
  CHECK(parse_symmetry_flags(describe(f)) == f);
  CHECK(parse_symmetry_flags(describe(SymmetryFlag::none)) == SymmetryFlag::none);
  CHECK_THROWS_AS(parse_symmetry_flags("bogus"), InvalidInput);
}

TEST_CASE("snapshot round trip is bit exact") {
  const Grid g(8, 2.25);
  ScalarField f = random_band_limited_scalar(g, 21, 3);
  const auto path = std::filesystem::temp_directory_path() / "eulerperm_snapshot_test.field";
  write_snapshot(path, f, {8, 2.25, "w1", 1, SymmetryFlag::constraint, 0.125});
  const Snapshot s = read_snapshot(path);
  CHECK(s.header.n == 8);
  CHECK(s.header.box_length == 2.25);
  CHECK(s.header.kind == "w1");
  CHECK(s.header.symmetry == SymmetryFlag::constraint);
  CHECK(s.header.time == 0.125);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(s.field[i] == f[i]);
  CHECK_THROWS_AS(write_snapshot(path, f, {16, 2.25, "w1", 1, SymmetryFlag::none, 0.0}), InvalidInput);

  // Truncated payload.
  std::filesystem::resize_file(path, std::filesystem::file_size(path) - 8);
  CHECK_THROWS_AS(read_snapshot(path), InvalidInput);
  std::ofstream(path) << "not a snapshot\n";
  CHECK_THROWS_AS(read_snapshot(path), InvalidInput);
  std::filesystem::remove(path);
}
