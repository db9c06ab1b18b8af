#include "eulerperm/fixtures.hpp"

#include <random>

#include "eulerperm/pullback.hpp"
#include "eulerperm/spectral.hpp"

namespace eulerperm {

ScalarField random_band_limited_scalar(const Grid& g, std::uint64_t seed, int band) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> s(g.size());
  for (double& v : s) v = normal(rng);
  Spectrum c = forward_transform(g, s);
  const int n = g.n();
  std::size_t idx = 0;
  for (int k3 = 0; k3 < n; ++k3)
    for (int k2 = 0; k2 < n; ++k2)
      for (int k1 = 0; k1 < n; ++k1, ++idx)
        if (std::abs(g.frequency(k1)) > band || std::abs(g.frequency(k2)) > band || std::abs(g.frequency(k3)) > band ||
            std::abs(g.frequency(k1)) == n / 2 || std::abs(g.frequency(k2)) == n / 2 ||
            std::abs(g.frequency(k3)) == n / 2)
          c[idx] = 0.0;
  return ScalarField::from_spectrum(g, std::move(c));
}

VectorField random_band_limited_vector(const Grid& g, std::uint64_t seed, int band) {
  return VectorField(random_band_limited_scalar(g, seed * 3 + 0, band), random_band_limited_scalar(g, seed * 3 + 1, band),
                     random_band_limited_scalar(g, seed * 3 + 2, band));
}

ScalarField random_mean_zero_scalar(const Grid& g, std::uint64_t seed, int band) {
  Spectrum c = random_band_limited_scalar(g, seed, band).spectrum();
  c[0] = 0.0;
  return ScalarField::from_spectrum(g, std::move(c));
}

VectorField symmetrize_permutation(const VectorField& u) {
  VectorField acc(u.grid());
  for (const PermutationElement& p : all_permutations()) acc = acc + pullback(u, p);
  return (1.0 / 6.0) * acc;
}

VectorField random_symmetric_velocity(const Grid& g, std::uint64_t seed, int band) {
  VectorField u = leray_project(symmetrize_permutation(random_band_limited_vector(g, seed, band)));
  for (int c = 0; c < 3; ++c) u[c].set_flags(SymmetryFlag::permutation);
  return u;
}

}  // namespace eulerperm
