#pragma once

#include <cstdint>

#include "eulerperm/field.hpp"

namespace eulerperm {

/// Deterministic random fields whose modes satisfy |m_i| <= band.
ScalarField random_band_limited_scalar(const Grid& g, std::uint64_t seed, int band);
VectorField random_band_limited_vector(const Grid& g, std::uint64_t seed, int band);
/// Mean-zero variant.
ScalarField random_mean_zero_scalar(const Grid& g, std::uint64_t seed, int band);

/// Average of u^P over the six permutations.
VectorField symmetrize_permutation(const VectorField& u);
/// Band-limited, mean-zero, divergence-free and permutation-symmetric.
VectorField random_symmetric_velocity(const Grid& g, std::uint64_t seed, int band);

}  // namespace eulerperm
