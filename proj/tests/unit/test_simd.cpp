#include <doctest.h>

#include <array>

#include <cmath>
#include <random>
#include <vector>

#include "eulerperm/error.hpp"
#include "eulerperm/simd/kernels.hpp"

using namespace eulerperm;
using eulerperm::simd::Level;

namespace {

std::vector<double> random_vec(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  std::vector<double> v(n);
  for (double& x : v) x = d(rng);
  return v;
}

double rel_close(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("level parsing") {
  CHECK(simd::parse_level("scalar") == Level::scalar);
  CHECK(simd::parse_level("avx2") == Level::avx2);
  CHECK_THROWS_AS(simd::parse_level("neon"), InvalidInput);
  CHECK(simd::available(Level::scalar));
}

TEST_CASE("forcing the scalar level") {
  const Level before = simd::active_level();
  simd::set_active_level(Level::scalar);
  CHECK(simd::kernels().level == Level::scalar);
  simd::set_active_level(before);
}

TEST_CASE("vector kernels agree with the scalar reference") {
  if (!simd::available(Level::avx2)) {
    MESSAGE("AVX2 not available on this machine; equivalence not exercised");
    return;
  }
  const auto& s = simd::scalar_table();
  const auto& v = simd::table(Level::avx2);
  for (std::size_t n : {0, 1, 3, 4, 5, 7, 8, 13, 64, 101}) {
    CAPTURE(n);
    const auto a = random_vec(n, 1 + n), b = random_vec(n, 2 + n);
    CHECK(rel_close(v.sum_squares(a.data(), n), s.sum_squares(a.data(), n)) <= 1e-14);
    CHECK(v.max_abs(a.data(), n) == s.max_abs(a.data(), n));
    CHECK(rel_close(v.dot(a.data(), b.data(), n), s.dot(a.data(), b.data(), n)) <= 1e-14);

    const auto a1 = random_vec(n, 3), a2 = random_vec(n, 4), b1 = random_vec(n, 5), b2 = random_vec(n, 6);
    std::vector<double> o1 = random_vec(n, 7), o2 = o1;
    s.accumulate_dot3(o1.data(), -0.7, a.data(), a1.data(), a2.data(), b.data(), b1.data(), b2.data(), n);
    v.accumulate_dot3(o2.data(), -0.7, a.data(), a1.data(), a2.data(), b.data(), b1.data(), b2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(rel_close(o2[i], o1[i]) <= 1e-14);

    std::vector<std::complex<double>> ca(n), cb(n);
    for (std::size_t i = 0; i < n; ++i) {
      ca[i] = {a[i], a1[i]};
      cb[i] = {b[i], b1[i]};
    }
    const auto zs = s.complex_dot(ca.data(), cb.data(), n), zv = v.complex_dot(ca.data(), cb.data(), n);
    CHECK(std::abs(zs - zv) <= 1e-13 * std::max(1.0, std::abs(zs)));
  }
}

TEST_CASE("kernel rows agree, including the exclusion mask") {
  if (!simd::available(Level::avx2)) return;
  const auto& s = simd::scalar_table();
  const auto& v = simd::table(Level::avx2);
  const double h = 0.25;
  for (std::size_t count : {1, 4, 9, 16, 33}) {
    const auto w = random_vec(count, 40 + count);
    // Targets on and off the source row; on-row targets hit the exclusion.
    for (const auto& x : {std::array<double, 3>{0.0, 0.5, -0.25}, std::array<double, 3>{0.13, -0.4, 0.9},
                          std::array<double, 3>{0.5, 0.5, -0.25}}) {
      const simd::KernelRow row{w.data(), count, -1.0, h, 0.5, -0.25};
      double as[3] = {0, 0, 0}, av[3] = {0, 0, 0};
      s.kernel_row(x.data(), row, 0.25 * h * h, as);
      v.kernel_row(x.data(), row, 0.25 * h * h, av);
      for (int c = 0; c < 3; ++c) CHECK(std::abs(as[c] - av[c]) <= 1e-12 * std::max(1.0, std::abs(as[c])));
    }
  }
}
