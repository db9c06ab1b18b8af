#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "eulerperm/constraint.hpp"
#include "eulerperm/field.hpp"

namespace eulerperm {

/// periodic: Green's function of the torus, 1/(4 pi^2 |xi|^2).
/// free_space: the R^3 kernel truncated at radius R = L/2, whose transform is
///   (1 - cos(2 pi |xi| R)) / (4 pi^2 |xi|^2).
/// The free-space result is exact at x when every source y of the field has
/// |x - y| < L/2.
enum class BiotSavartDomain { periodic, free_space };

struct VelocityOptions {
  BiotSavartDomain domain = BiotSavartDomain::periodic;
  double tol = kMembershipTolerance;
};

/// u = curl (-Laplacian)^{-1} reconstruct_vorticity(w1).
VectorField velocity_from_w1(const ScalarField& w1, const VelocityOptions& opts = {});
VectorField velocity_from_vorticity(const VectorField& omega, BiotSavartDomain domain = BiotSavartDomain::periodic);
std::array<Spectrum, 3> velocity_spectrum(const Grid& g, const std::array<Spectrum, 3>& omega,
                                          BiotSavartDomain domain = BiotSavartDomain::periodic);

/// Simple-cubic lattice sum of 1/|k| over nonzero k, regularized by the
/// neutralizing background.
inline constexpr double kCubicLatticeConstant = -2.8372974794806;

/// Quadrature options for the explicit kernel.
///   refine: sum over a spectrally refined grid with refine*n nodes per axis.
///   lattice_correction: remove the leading h^2 error of the punctured sum,
///     -h^2 Z/(12 pi) curl(omega)(x); only valid for targets on grid nodes.
struct KernelQuadrature {
  int refine = 1;
  bool lattice_correction = false;
};

/// u(x) = (1/4pi) sum_y G(x, y) w1(y) h^3 with the three symmetric kernel
/// blocks, skipping nodes within h/2 of a block singularity.  Throws
/// InvalidInput for points outside the box, for lattice correction at
/// off-node points, and for w1 that does not decay inside the inner half box.
std::vector<Eigen::Vector3d> velocity_kernel(const ScalarField& w1, std::span<const Eigen::Vector3d> points,
                                             const KernelQuadrature& quad = {});

enum class LambdaQuadrature {
  punctured,  // trapezoid sum with the origin node omitted
  split,      // erfc partition: smooth far part on the grid, near part on a spherical product rule
};

struct LambdaOptions {
  LambdaQuadrature rule = LambdaQuadrature::split;
  BiotSavartDomain spectral_domain = BiotSavartDomain::free_space;
  double cutoff_cells = 1.5;  // partition width delta in grid spacings
  int radial_nodes = 32;
  int polar_nodes = 16;
  int azimuthal_nodes = 32;  // multiple of 4 keeps the node set closed under P23
  bool require_member = true;
  double tol = kMembershipTolerance;
};

struct StrainReport {
  double lambda_w1 = 0.0;
  double lambda_w2 = 0.0;
  double lambda_w3 = 0.0;
  double lambda_omega = 0.0;
  double lambda_spectral = 0.0;  // -d2 u1(0)
  Eigen::Matrix3d grad_origin = Eigen::Matrix3d::Zero();  // (i, j) = d_j u_i
  Eigen::Matrix3d strain_origin = Eigen::Matrix3d::Zero();
  std::array<double, 3> eigenvalues{};  // ascending
  double axis_alignment = 0.0;

  std::string to_text() const;
};

/// Throws InvalidInput when require_member is set and w1 is not in the
/// constraint space, or when the partition ball does not fit in the box.
StrainReport lambda_diagnostics(const ScalarField& w1, const LambdaOptions& opts = {});
/// -(1/8pi) integral (sigma.x)/|x|^5 (sigma x x).omega, with the same quadrature.
double lambda_from_vorticity(const VectorField& omega, const LambdaOptions& opts = {});
/// -d2 u1 at the origin from the spectral velocity.
double lambda_spectral(const ScalarField& w1, BiotSavartDomain domain = BiotSavartDomain::periodic);
Eigen::Matrix3d gradient_at_origin(const ScalarField& w1, BiotSavartDomain domain = BiotSavartDomain::free_space);

struct Eigenstructure {
  std::array<double, 3> eigenvalues{};  // ascending
  Eigen::Vector3d min_vector = Eigen::Vector3d::Zero();
  double axis_alignment = 0.0;  // |cos| between min_vector and sigma/sqrt(3)
};
Eigenstructure strain_eigenstructure(const Eigen::Matrix3d& strain);
Eigenstructure strain_eigenstructure(const StrainReport& report);
/// lambda * [[0,-1,-1],[-1,0,-1],[-1,-1,0]].
Eigen::Matrix3d lambda_gradient_matrix(double lambda);

/// omega - (1/3)(omega.sigma) sigma.
VectorField omega_perp(const VectorField& omega);

}  // namespace eulerperm
