#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "eulerperm/field.hpp"
#include "eulerperm/symmetry.hpp"

namespace eulerperm {

/// Right-handed orthonormal frame {w, w_tilde, v} with w x w_tilde = v.
class AxisFrame {
 public:
  /// Throws InvalidInput unless the vectors are orthonormal and right-handed within 1e-12.
  AxisFrame(const Eigen::Vector3d& w, const Eigen::Vector3d& w_tilde, const Eigen::Vector3d& v);
  /// Completes a unit axis to a frame.  Throws InvalidInput for non-unit v.
  static AxisFrame from_axis(const Eigen::Vector3d& v);
  /// The frame given by the columns of rotation_Q().
  static AxisFrame sigma();
  static AxisFrame e3();

  const Eigen::Vector3d& v() const { return v_; }
  const Eigen::Vector3d& w() const { return w_; }
  const Eigen::Vector3d& w_tilde() const { return wt_; }
  /// Columns [w, w_tilde, v].
  Eigen::Matrix3d matrix() const;
  /// Rotation by angle theta about v.
  Eigen::Matrix3d rotation(double theta) const;

 private:
  Eigen::Vector3d w_, wt_, v_;
};

struct CylindricalPoint {
  double r = 0.0;
  double z = 0.0;
  Eigen::Vector3d e_r = Eigen::Vector3d::Zero();
  bool on_axis = false;  // e_r undefined when r = 0
};

CylindricalPoint cylindrical_coords(const Eigen::Vector3d& x, const AxisFrame& frame);

/// Relative vorticity phi(r, z).
struct AxisymProfile {
  std::function<double(double r, double z)> phi;
  std::string name;
};

struct AxisymVorticity {
  VectorField omega;
  /// max |phi r| on the box boundary relative to its max; above 1e-6 sets the warning.
  double boundary_ratio = 0.0;
  bool boundary_warning = false;
};

/// omega(x) = -phi(r, z) v x x sampled on the grid, then Leray-projected.
AxisymVorticity build_axisym_vorticity(const AxisymProfile& profile, const AxisFrame& frame, const Grid& g);

/// Columns (1/sqrt2, -1/sqrt2, 0), (1/sqrt6, 1/sqrt6, -2/sqrt6), (1/sqrt3, 1/sqrt3, 1/sqrt3).
OrthogonalMap rotation_Q();

struct AxisymmetryCheck {
  double rotation = 0.0;  // max |u^R(x) - u(x)| / max|u| over samples and angles
  double swirl = 0.0;     // max |u.e_theta| / max|u| over samples
  double max() const { return rotation > swirl ? rotation : swirl; }
};

/// Sampled test of v-axisymmetry and absence of swirl.  Samples are grid
/// nodes inside the inner half box chosen by a fixed-seed generator.
AxisymmetryCheck axisymmetry_residual(const VectorField& u, const AxisFrame& frame, int samples = 64);

/// max |M u(M x) - u(x)| / max|u| over the same node sample, M the mirror
/// about the plane normal to axis; sign = -1 for pseudovectors such as vorticity.
/// Cheap alternative to a full interpolating pullback.
double sampled_mirror_residual(const VectorField& u, const Eigen::Vector3d& axis, int sign = 1, int samples = 64);

/// u^Q with Q = rotation_Q(): maps an e3-axisymmetric swirl-free field to a
/// sigma-axisymmetric one.  Throws InvalidInput if the input fails the e3 test at tol.
VectorField rotate_axisym(const VectorField& u, double tol = 1e-8);

/// zeta = w1/(x2 - x3) where |x2 - x3| >= epsilon; mask[i] = 1 marks valid nodes.
struct ZetaField {
  ScalarField values;
  std::vector<std::uint8_t> mask;
  double epsilon = 0.0;
};
/// epsilon <= 0 selects the default 2h.
ZetaField zeta(const ScalarField& w1, double epsilon = 0.0);

enum class InitialFamily { gaussian, ring, perturbed };
InitialFamily parse_family(const std::string& name);
std::string to_string(InitialFamily f);

/// gaussian: f = A exp(-|x|^2/w^2).
/// ring: f = A exp(-((r^2-R^2)^2/(w^2+4R^2) + (z-z0)^2)/w^2) about sigma; with mirror the
///   reflected term at -z0 is added so the data is sigma-mirror symmetric.
/// perturbed: gaussian plus eps A (h(x) - h(P23 x)) with an off-center bump h.
struct FamilyParams {
  double amplitude = 1.0;
  double width = 1.0;
  double ring_radius = 1.0;
  double ring_offset = 0.5;
  double perturbation = 0.1;
  bool mirror = false;
};

/// omega1 = (sigma.x)(x2 - x3) f, projected onto the discrete constraint
/// space.  Throws InvalidInput for parameters that make f change sign or
/// vanish, and when the result does not have lambda > 0.
ScalarField sign_condition_data(InitialFamily family, const FamilyParams& params, const Grid& g);

/// max over nodes of max(0, -w1 sign((sigma.x)(x2-x3))) / max|w1|.
double sign_condition_violation(const ScalarField& w1);

/// Velocity curl(a(r,z) e3 x x) with a = A z exp(-|x|^2/w^2): an
/// e3-axisymmetric, swirl-free, e3-mirror-symmetric vortex ring.
VectorField gaussian_vortex_ring_velocity(const Grid& g, double amplitude, double width);

/// Plane and axis identities of permutation-symmetric fields, each relative
/// to max|u| or max|omega|.
struct PlaneIdentityReport {
  double velocity_planes = 0.0;   // u1=u2 on x1=x2 and permuted variants
  double vorticity_planes = 0.0;  // omega3=0 on x1=x2, omega2=0 on x1=x3, omega1=0 on x2=x3
  double axis_vorticity = 0.0;    // omega = 0 on x1=x2=x3
  double axis_velocity = 0.0;     // u parallel to sigma on x1=x2=x3
  double max() const;
};
PlaneIdentityReport plane_identities(const VectorField& u, const VectorField& omega);

}  // namespace eulerperm
