#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "eulerperm/field.hpp"
#include "eulerperm/symmetry.hpp"

namespace eulerperm {

/// exact: index remapping, only for signed permutation matrices.
/// interpolating: trigonometric interpolation at Q^T x, for any orthogonal Q;
///   sources outside the box read zero (the field is treated as localized).
enum class PullbackMode { exact, interpolating };

/// Band-limited trigonometric interpolant of a periodic field.
///
/// Modes whose magnitude is below rel_tol times the peak are dropped when
/// detecting the band; a full band keeps the Nyquist modes with half weight
/// on +-n/2 so the interpolant is real and reproduces the samples.
class TrigInterpolant {
 public:
  explicit TrigInterpolant(const ScalarField& f, double rel_tol = 1e-15);

  int band() const { return band_; }
  double operator()(const Eigen::Vector3d& y) const;
  std::vector<double> evaluate(std::span<const Eigen::Vector3d> points) const;

 private:
  Grid grid_;
  int band_;
  int width_;
  std::vector<Complex> block_;  // m1 fastest, then m2, then m3 >= 0
};

/// u^Q(x) = Q u(Q^T x).  Exact mode throws InvalidInput for maps that are not
/// signed permutations.
VectorField pullback(const VectorField& u, const OrthogonalMap& q, PullbackMode mode = PullbackMode::exact);
/// f^Q(x) = f(Q^T x).
ScalarField pullback(const ScalarField& f, const OrthogonalMap& q, PullbackMode mode = PullbackMode::exact);
/// (f o P)(x) = f(P x).
ScalarField compose_with(const ScalarField& f, const PermutationElement& p);

/// Coefficients of the pullback computed directly on the spectral array:
/// (f^Q)^(m) = f^(Q^T m) for signed permutations.
Spectrum pullback_spectrum(const Grid& g, const Spectrum& c, const OrthogonalMap& q);

/// ||u - sign u^Q|| / max(||u||, 1e-300).
double symmetry_residual(const VectorField& u, const OrthogonalMap& q, int sign,
                         PullbackMode mode = PullbackMode::exact);
/// Max of symmetry_residual(u, P, +1) over the six permutations.
double permutation_residual(const VectorField& u);

/// Grid nodes as physical points, x1 fastest.
std::vector<Eigen::Vector3d> grid_points(const Grid& g);

}  // namespace eulerperm
