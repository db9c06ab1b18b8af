#include "eulerperm/axisym.hpp"

#include <cmath>
#include <random>

#include "eulerperm/biot_savart.hpp"
#include "eulerperm/constraint.hpp"
#include "eulerperm/error.hpp"
#include "eulerperm/pullback.hpp"
#include "eulerperm/spectral.hpp"

namespace eulerperm {

AxisFrame::AxisFrame(const Eigen::Vector3d& w, const Eigen::Vector3d& w_tilde, const Eigen::Vector3d& v)
    : w_(w), wt_(w_tilde), v_(v) {
  const Eigen::Matrix3d m = matrix();
  if (!m.allFinite() || (m.transpose() * m - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() > 1e-12)
    throw InvalidInput("axis frame is not orthonormal");
  if (std::abs(m.determinant() - 1.0) > 1e-12) throw InvalidInput("axis frame is not right-handed");
}

AxisFrame AxisFrame::from_axis(const Eigen::Vector3d& v) {
  if (!v.allFinite() || std::abs(v.norm() - 1.0) > 1e-12) throw InvalidInput("axis must be a unit vector");
  const Eigen::Vector3d a = std::abs(v[0]) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
  const Eigen::Vector3d w = (a - a.dot(v) * v).normalized();
  return AxisFrame(w, v.cross(w), v);
}

AxisFrame AxisFrame::sigma() {
  const Eigen::Matrix3d q = rotation_Q().matrix();
  return AxisFrame(q.col(0), q.col(1), q.col(2));
}

AxisFrame AxisFrame::e3() { return AxisFrame(Eigen::Vector3d::UnitX(), Eigen::Vector3d::UnitY(), Eigen::Vector3d::UnitZ()); }

Eigen::Matrix3d AxisFrame::matrix() const {
  Eigen::Matrix3d m;
  m.col(0) = w_;
  m.col(1) = wt_;
  m.col(2) = v_;
  return m;
}

Eigen::Matrix3d AxisFrame::rotation(double theta) const {
  Eigen::Matrix3d rz;
  rz << std::cos(theta), -std::sin(theta), 0.0, std::sin(theta), std::cos(theta), 0.0, 0.0, 0.0, 1.0;
  const Eigen::Matrix3d f = matrix();
  return f * rz * f.transpose();
}

CylindricalPoint cylindrical_coords(const Eigen::Vector3d& x, const AxisFrame& frame) {
  CylindricalPoint p;
  p.z = x.dot(frame.v());
  const Eigen::Vector3d xp = x - p.z * frame.v();
  p.r = xp.norm();
  if (p.r == 0.0) {
    p.on_axis = true;
  } else {
    p.e_r = xp / p.r;
  }
  return p;
}

AxisymVorticity build_axisym_vorticity(const AxisymProfile& profile, const AxisFrame& frame, const Grid& g) {
  if (!profile.phi) throw InvalidInput("profile has no phi");
  const int n = g.n();
  std::array<std::vector<double>, 3> om;
  for (auto& c : om) c.assign(g.size(), 0.0);
  double peak = 0.0, boundary = 0.0;
  std::size_t idx = 0;
  for (int i3 = 0; i3 < n; ++i3)
    for (int i2 = 0; i2 < n; ++i2)
      for (int i1 = 0; i1 < n; ++i1, ++idx) {
        const Eigen::Vector3d x(g.coordinate(i1), g.coordinate(i2), g.coordinate(i3));
        const CylindricalPoint cp = cylindrical_coords(x, frame);
        const double phi = profile.phi(cp.r, cp.z);
        if (!std::isfinite(phi)) throw InvalidInput("profile is not finite at a grid node");
        const Eigen::Vector3d w = -phi * frame.v().cross(x);
        for (int a = 0; a < 3; ++a) om[a][idx] = w[a];
        const double mag = std::abs(phi) * cp.r;
        peak = std::max(peak, mag);
        if (i1 == 0 || i2 == 0 || i3 == 0) boundary = std::max(boundary, mag);
      }
  VectorField raw(ScalarField(g, std::move(om[0])), ScalarField(g, std::move(om[1])), ScalarField(g, std::move(om[2])));
  AxisymVorticity out{leray_project(raw), 0.0, false};
  out.boundary_ratio = peak > 0.0 ? boundary / peak : 0.0;
  out.boundary_warning = out.boundary_ratio > 1e-6;
  return out;
}

OrthogonalMap rotation_Q() {
  const double s2 = std::sqrt(2.0), s6 = std::sqrt(6.0), s3 = std::sqrt(3.0);
  Eigen::Matrix3d q;
  q << 1.0 / s2, 1.0 / s6, 1.0 / s3,
      -1.0 / s2, 1.0 / s6, 1.0 / s3,
      0.0, -2.0 / s6, 1.0 / s3;
  return OrthogonalMap(q);
}

namespace {

// Fixed-seed sample of nodes in the inner half box.
void sample_inner_nodes(const Grid& g, int samples, std::vector<Eigen::Vector3d>& pts, std::vector<std::size_t>& ids) {
  const int n = g.n();
  std::mt19937_64 rng(20240917);
  std::uniform_int_distribution<int> pick(n / 4, 3 * n / 4);
  for (int s = 0; s < samples; ++s) {
    const int i1 = pick(rng), i2 = pick(rng), i3 = pick(rng);
    pts.emplace_back(g.coordinate(i1), g.coordinate(i2), g.coordinate(i3));
    ids.push_back(g.index(i1, i2, i3));
  }
}

}  // namespace

AxisymmetryCheck axisymmetry_residual(const VectorField& u, const AxisFrame& frame, int samples) {
  const Grid& g = u.grid();
  const double peak = linf_norm(u);
  AxisymmetryCheck res;
  if (peak == 0.0) return res;
  std::vector<Eigen::Vector3d> pts;
  std::vector<std::size_t> ids;
  sample_inner_nodes(g, samples, pts, ids);
  for (std::size_t s = 0; s < pts.size(); ++s) {
    const CylindricalPoint cp = cylindrical_coords(pts[s], frame);
    if (cp.on_axis) continue;
    const Eigen::Vector3d e_theta = frame.v().cross(cp.e_r);
    const Eigen::Vector3d us(u[0][ids[s]], u[1][ids[s]], u[2][ids[s]]);
    res.swirl = std::max(res.swirl, std::abs(us.dot(e_theta)) / peak);
  }
  const TrigInterpolant i0(u[0]), i1(u[1]), i2(u[2]);
  for (double theta : {0.7, 1.9, 2.6}) {
    const Eigen::Matrix3d r = frame.rotation(theta);
    std::vector<Eigen::Vector3d> src(pts.size());
    for (std::size_t s = 0; s < pts.size(); ++s) src[s] = r.transpose() * pts[s];
    const auto a = i0.evaluate(src), b = i1.evaluate(src), c = i2.evaluate(src);
    for (std::size_t s = 0; s < pts.size(); ++s) {
      const Eigen::Vector3d rotated = r * Eigen::Vector3d(a[s], b[s], c[s]);
      const Eigen::Vector3d us(u[0][ids[s]], u[1][ids[s]], u[2][ids[s]]);
      res.rotation = std::max(res.rotation, (rotated - us).norm() / peak);
    }
  }
  return res;
}

double sampled_mirror_residual(const VectorField& u, const Eigen::Vector3d& axis, int sign, int samples) {
  const Eigen::Matrix3d m = mirror(axis).matrix();
  const double peak = linf_norm(u);
  if (peak == 0.0) return 0.0;
  std::vector<Eigen::Vector3d> pts;
  std::vector<std::size_t> ids;
  sample_inner_nodes(u.grid(), samples, pts, ids);
  std::vector<Eigen::Vector3d> src(pts.size());
  for (std::size_t s = 0; s < pts.size(); ++s) src[s] = m * pts[s];
  const TrigInterpolant i0(u[0]), i1(u[1]), i2(u[2]);
  const auto a = i0.evaluate(src), b = i1.evaluate(src), c = i2.evaluate(src);
  double worst = 0.0;
  for (std::size_t s = 0; s < pts.size(); ++s) {
    const Eigen::Vector3d reflected = static_cast<double>(sign) * (m * Eigen::Vector3d(a[s], b[s], c[s]));
    const Eigen::Vector3d us(u[0][ids[s]], u[1][ids[s]], u[2][ids[s]]);
    worst = std::max(worst, (reflected - us).norm() / peak);
  }
  return worst;
}

VectorField rotate_axisym(const VectorField& u, double tol) {
  const AxisymmetryCheck c = axisymmetry_residual(u, AxisFrame::e3());
  if (c.max() > tol)
    throw InvalidInput("input is not e3-axisymmetric swirl-free (residual " + std::to_string(c.max()) + ")");
  VectorField out = pullback(u, rotation_Q(), PullbackMode::interpolating);
  for (int a = 0; a < 3; ++a) out[a].set_flags(SymmetryFlag::permutation | SymmetryFlag::sigma_axisymmetric);
  return out;
}

ZetaField zeta(const ScalarField& w1, double epsilon) {
  const Grid& g = w1.grid();
  const double eps = epsilon > 0.0 ? epsilon : 2.0 * g.spacing();
  const int n = g.n();
  std::vector<double> vals(g.size(), 0.0);
  std::vector<std::uint8_t> mask(g.size(), 0);
  std::size_t idx = 0;
  for (int i3 = 0; i3 < n; ++i3)
    for (int i2 = 0; i2 < n; ++i2)
      for (int i1 = 0; i1 < n; ++i1, ++idx) {
        const double d = g.coordinate(i2) - g.coordinate(i3);
        if (std::abs(d) < eps) continue;
        vals[idx] = w1[idx] / d;
        mask[idx] = 1;
      }
  return ZetaField{ScalarField(g, std::move(vals)), std::move(mask), eps};
}

InitialFamily parse_family(const std::string& name) {
  if (name == "gaussian") return InitialFamily::gaussian;
  if (name == "ring") return InitialFamily::ring;
  if (name == "perturbed") return InitialFamily::perturbed;
  throw InvalidInput("unknown initial family: " + name);
}

std::string to_string(InitialFamily f) {
  switch (f) {
    case InitialFamily::gaussian: return "gaussian";
    case InitialFamily::ring: return "ring";
    case InitialFamily::perturbed: return "perturbed";
  }
  return "unknown";
}

ScalarField sign_condition_data(InitialFamily family, const FamilyParams& p, const Grid& g) {
  if (!(p.amplitude > 0.0) || !std::isfinite(p.amplitude))
    throw InvalidInput("amplitude must be positive (the envelope may not change sign)");
  if (!(p.width > 0.0) || !std::isfinite(p.width)) throw InvalidInput("width must be positive");
  if (family == InitialFamily::ring && (!(p.ring_radius >= 0.0) || !std::isfinite(p.ring_offset)))
    throw InvalidInput("ring radius must be non-negative and offset finite");
  if (family == InitialFamily::perturbed && (!(p.perturbation >= 0.0) || !std::isfinite(p.perturbation)))
    throw InvalidInput("perturbation size must be non-negative");

  const AxisFrame frame = AxisFrame::sigma();
  const double w2inv = 1.0 / (p.width * p.width);
  auto envelope = [&](const Eigen::Vector3d& x) {
    if (family != InitialFamily::ring) return p.amplitude * std::exp(-x.squaredNorm() * w2inv);
    const CylindricalPoint cp = cylindrical_coords(x, frame);
    // (r^2 - R^2)^2 / (w^2 + 4 R^2) ~ (r - R)^2 near the core, but stays smooth on the axis.
    const double R2 = p.ring_radius * p.ring_radius;
    const double q = cp.r * cp.r - R2;
    const double radial = q * q / (p.width * p.width + 4.0 * R2);
    double f = std::exp(-(radial + (cp.z - p.ring_offset) * (cp.z - p.ring_offset)) * w2inv);
    if (p.mirror) f += std::exp(-(radial + (cp.z + p.ring_offset) * (cp.z + p.ring_offset)) * w2inv);
    return p.amplitude * f;
  };
  // Off-center bump for the perturbed family.
  const Eigen::Vector3d c(0.5 * p.width, 0.8 * p.width, -0.3 * p.width);
  auto bump = [&](const Eigen::Vector3d& x) { return std::exp(-(x - c).squaredNorm() * w2inv); };

  const int n = g.n();
  std::vector<double> vals(g.size());
  std::size_t idx = 0;
  for (int i3 = 0; i3 < n; ++i3)
    for (int i2 = 0; i2 < n; ++i2)
      for (int i1 = 0; i1 < n; ++i1, ++idx) {
        const Eigen::Vector3d x(g.coordinate(i1), g.coordinate(i2), g.coordinate(i3));
        double v = (x[0] + x[1] + x[2]) * (x[1] - x[2]) * envelope(x);
        if (family == InitialFamily::perturbed) {
          const Eigen::Vector3d xs(x[0], x[2], x[1]);
          v += p.perturbation * p.amplitude * (bump(x) - bump(xs));
        }
        vals[idx] = v;
      }
  ScalarField w1 = project_constraint(ScalarField(g, std::move(vals)));
  if (linf_norm(w1) == 0.0) throw InvalidInput("initial data vanishes on this grid");
  if (!(lambda_spectral(w1) > 0.0)) throw InvalidInput("initial data does not have lambda > 0");
  SymmetryFlag flags = SymmetryFlag::constraint;
  if (family != InitialFamily::perturbed) flags = flags | SymmetryFlag::sigma_axisymmetric;
  if (family == InitialFamily::gaussian || (family == InitialFamily::ring && p.mirror))
    flags = flags | SymmetryFlag::sigma_mirror;
  w1.set_flags(flags);
  return w1;
}

double sign_condition_violation(const ScalarField& w1) {
  const Grid& g = w1.grid();
  const double peak = linf_norm(w1);
  if (peak == 0.0) return 0.0;
  const int n = g.n();
  double worst = 0.0;
  std::size_t idx = 0;
  for (int i3 = 0; i3 < n; ++i3)
    for (int i2 = 0; i2 < n; ++i2)
      for (int i1 = 0; i1 < n; ++i1, ++idx) {
        const double t = (g.coordinate(i1) + g.coordinate(i2) + g.coordinate(i3)) * (g.coordinate(i2) - g.coordinate(i3));
        const double s = t > 0.0 ? 1.0 : (t < 0.0 ? -1.0 : 0.0);
        worst = std::max(worst, -w1[idx] * s);
      }
  return worst / peak;
}

VectorField gaussian_vortex_ring_velocity(const Grid& g, double amplitude, double width) {
  if (!(width > 0.0)) throw InvalidInput("width must be positive");
  const int n = g.n();
  std::array<std::vector<double>, 3> u;
  for (auto& c : u) c.resize(g.size());
  const double w2 = width * width;
  std::size_t idx = 0;
  for (int i3 = 0; i3 < n; ++i3)
    for (int i2 = 0; i2 < n; ++i2)
      for (int i1 = 0; i1 < n; ++i1, ++idx) {
        const double x1 = g.coordinate(i1), x2 = g.coordinate(i2), z = g.coordinate(i3);
        const double r2 = x1 * x1 + x2 * x2;
        const double gv = amplitude * std::exp(-(r2 + z * z) / w2);
        const double gp = -gv / w2;  // derivative of g with respect to |x|^2
        const double radial = -(gv + 2.0 * z * z * gp);
        u[0][idx] = x1 * radial;
        u[1][idx] = x2 * radial;
        u[2][idx] = 2.0 * z * (gv + r2 * gp);
      }
  return VectorField(ScalarField(g, std::move(u[0])), ScalarField(g, std::move(u[1])), ScalarField(g, std::move(u[2])));
}

double PlaneIdentityReport::max() const {
  return std::max({velocity_planes, vorticity_planes, axis_vorticity, axis_velocity});
}

PlaneIdentityReport plane_identities(const VectorField& u, const VectorField& omega) {
  const Grid& g = u.grid();
  const int n = g.n();
  const double umax = std::max(linf_norm(u), 1e-300);
  const double wmax = std::max(linf_norm(omega), 1e-300);
  PlaneIdentityReport r;
  const Eigen::Vector3d s = sigma_unit();
  std::size_t idx = 0;
  for (int i3 = 0; i3 < n; ++i3)
    for (int i2 = 0; i2 < n; ++i2)
      for (int i1 = 0; i1 < n; ++i1, ++idx) {
        if (i1 == i2) {
          r.velocity_planes = std::max(r.velocity_planes, std::abs(u[0][idx] - u[1][idx]) / umax);
          r.vorticity_planes = std::max(r.vorticity_planes, std::abs(omega[2][idx]) / wmax);
        }
        if (i1 == i3) {
          r.velocity_planes = std::max(r.velocity_planes, std::abs(u[0][idx] - u[2][idx]) / umax);
          r.vorticity_planes = std::max(r.vorticity_planes, std::abs(omega[1][idx]) / wmax);
        }
        if (i2 == i3) {
          r.velocity_planes = std::max(r.velocity_planes, std::abs(u[1][idx] - u[2][idx]) / umax);
          r.vorticity_planes = std::max(r.vorticity_planes, std::abs(omega[0][idx]) / wmax);
        }
        if (i1 == i2 && i2 == i3) {
          const Eigen::Vector3d w(omega[0][idx], omega[1][idx], omega[2][idx]);
          const Eigen::Vector3d v(u[0][idx], u[1][idx], u[2][idx]);
          r.axis_vorticity = std::max(r.axis_vorticity, w.norm() / wmax);
          r.axis_velocity = std::max(r.axis_velocity, (v - v.dot(s) * s).norm() / umax);
        }
      }
  return r;
}

}  // namespace eulerperm
