#pragma once

#include "eulerperm/field.hpp"

namespace eulerperm {

inline constexpr double kMembershipTolerance = 1e-8;

/// physical: ||f + f o P23|| / ||f||.
/// fourier: l2 size of m1 c(m) - m2 c(P12 m) - m3 c(P13 m) over all modes,
/// relative to (sum |m|^2 |c(m)|^2)^(1/2).
struct ConstraintResidual {
  double physical = 0.0;
  double fourier = 0.0;
  double max() const { return physical > fourier ? physical : fourier; }
};

ConstraintResidual constraint_residual(const ScalarField& f);

/// L2-orthogonal projection onto the discrete constraint space.  Modes with
/// a Nyquist component and the mean mode are removed.
ScalarField project_constraint(const ScalarField& f);
Spectrum project_constraint(const Grid& g, const Spectrum& c);

/// omega = (w1, -w1 o P12, -w1 o P13).  Throws InvalidInput when either
/// constraint residual exceeds tol.
VectorField reconstruct_vorticity(const ScalarField& w1, double tol = kMembershipTolerance);
/// The same map on spectral coefficients, without the membership check.
std::array<Spectrum, 3> reconstruct_vorticity_spectrum(const Grid& g, const Spectrum& w1);

/// First component of curl u.  Throws InvalidInput unless u is solenoidal and
/// permutation symmetric within tol.
ScalarField extract_w1(const VectorField& u, double tol = kMembershipTolerance);

/// Relative divergence ||div u|| / ||grad u|| (0 for constant fields).
double divergence_residual(const VectorField& u);

namespace fault {
/// Deliberate defects for mutation checks of the verification suite.
enum class Kind { none, reconstruct_sign };
void inject(Kind k);
Kind active();
}  // namespace fault

}  // namespace eulerperm
