#pragma once

#include "eulerperm/field.hpp"

namespace eulerperm {

enum class NormKind { Hs, HdotNeg1, HsCapHdotNeg1 };

/// Sobolev index.  The combined kind requires s > -1.
struct NormSpec {
  double s = 0.0;
};

/// Riemann-sum Sobolev norms over the discrete frequencies xi = m/L:
///   ||f||^2 = (L^3 / n^6) sum_m weight(xi) |c_m|^2
/// with weight (1+4pi^2|xi|^2)^s, 1/(4pi^2|xi|^2), or (1+4pi^2|xi|^2)^(s+1)/(4pi^2|xi|^2).
/// The homogeneous kinds throw InvalidInput unless the field is mean-zero.
double sobolev_norm(const ScalarField& f, NormSpec spec, NormKind kind);
double sobolev_norm(const VectorField& u, NormSpec spec, NormKind kind);

/// |c_0| <= tol * (sum_m |c_m|^2)^(1/2).
bool is_mean_zero(const ScalarField& f, double tol = 1e-10);

ScalarField derivative(const ScalarField& f, int axis);
VectorField gradient(const ScalarField& f);
VectorField curl(const VectorField& u);
ScalarField divergence(const VectorField& u);
ScalarField laplacian(const ScalarField& f);
/// Inverse of -Laplacian: multiplier 1/(4 pi^2 |xi|^2), zero mode set to 0.
/// Throws InvalidInput for fields that are not mean-zero.
ScalarField inverse_laplacian(const ScalarField& f);
/// Removes the gradient part and the mean.
VectorField leray_project(const VectorField& u);

/// Zeroes every mode with some |m_i| > n/3.
void dealias_in_place(const Grid& g, Spectrum& c);
Spectrum dealias(const Grid& g, Spectrum c);
ScalarField dealias(const ScalarField& f);
VectorField dealias(const VectorField& u);

/// Spectral coefficient array of the derivative d/dx_axis.
Spectrum derivative_spectrum(const Grid& g, const Spectrum& c, int axis);

/// Largest |m_i| over modes whose magnitude exceeds rel_tol * max magnitude.
int spectral_band(const Grid& g, const Spectrum& c, double rel_tol = 1e-15);

/// Zero-pads (or truncates) coefficients to a grid with the same box length.
/// The Nyquist plane of the source is split evenly between +-n/2 when refining.
ScalarField resample(const ScalarField& f, int n_target);

/// Value at the origin node computed from coefficients: (1/N) sum c_m (-1)^(m1+m2+m3).
double value_at_origin(const Grid& g, const Spectrum& c);

}  // namespace eulerperm
