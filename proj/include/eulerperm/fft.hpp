#pragma once

#include <complex>
#include <span>
#include <vector>

#include "eulerperm/grid.hpp"

namespace eulerperm {

using Complex = std::complex<double>;
using Spectrum = std::vector<Complex>;

/// Unnormalized forward transform c_k = sum_j f_j exp(-2 pi i k.j/n).
/// Throws InvalidInput if any sample is non-finite.
Spectrum forward_transform(const Grid& g, std::span<const double> samples);

/// Inverse transform (scaled by 1/n^3); returns the real part.
std::vector<double> inverse_transform(const Grid& g, std::span<const Complex> coeffs);
void inverse_transform(const Grid& g, std::span<const Complex> coeffs, std::span<double> out);

}  // namespace eulerperm
