#include "eulerperm/biot_savart.hpp"

#include <cmath>
#include <numbers>

#include "eulerperm/error.hpp"
#include "eulerperm/pullback.hpp"
#include "eulerperm/simd/kernels.hpp"
#include "eulerperm/spectral.hpp"

namespace eulerperm {

namespace {

constexpr double kPi = std::numbers::pi;

// Transform of the Green's function of -Laplacian at |xi|^2 = q2.
double green_multiplier(const Grid& g, BiotSavartDomain domain, double q2) {
  if (q2 == 0.0) return 0.0;
  const double base = 1.0 / (4.0 * kPi * kPi * q2);
  if (domain == BiotSavartDomain::periodic) return base;
  const double radius = 0.5 * g.length();
  return base * (1.0 - std::cos(2.0 * kPi * std::sqrt(q2) * radius));
}

VectorField from_spectra(const Grid& g, std::array<Spectrum, 3> c) {
  return VectorField(ScalarField::from_spectrum(g, std::move(c[0])), ScalarField::from_spectrum(g, std::move(c[1])),
                     ScalarField::from_spectrum(g, std::move(c[2])));
}

void require_member(const ScalarField& w1, double tol) {
  const ConstraintResidual r = constraint_residual(w1);
  if (r.max() > tol)
    throw InvalidInput("w1 is not in the constraint space (residual " + std::to_string(r.max()) + ")");
  if (!is_mean_zero(w1)) throw InvalidInput("w1 must be mean-zero");
}

}  // namespace

std::array<Spectrum, 3> velocity_spectrum(const Grid& g, const std::array<Spectrum, 3>& w, BiotSavartDomain domain) {
  const int n = g.n();
  const double L = g.length();
  std::array<Spectrum, 3> u{Spectrum(g.size()), Spectrum(g.size()), Spectrum(g.size())};
  std::size_t idx = 0;
  for (int k3 = 0; k3 < n; ++k3)
    for (int k2 = 0; k2 < n; ++k2)
      for (int k1 = 0; k1 < n; ++k1, ++idx) {
        const double m1 = g.frequency(k1) / L, m2 = g.frequency(k2) / L, m3 = g.frequency(k3) / L;
        const double gm = green_multiplier(g, domain, m1 * m1 + m2 * m2 + m3 * m3);
        const Complex f1(0.0, 2.0 * kPi * g.derivative_wavenumber(k1) * gm);
        const Complex f2(0.0, 2.0 * kPi * g.derivative_wavenumber(k2) * gm);
        const Complex f3(0.0, 2.0 * kPi * g.derivative_wavenumber(k3) * gm);
        u[0][idx] = f2 * w[2][idx] - f3 * w[1][idx];
        u[1][idx] = f3 * w[0][idx] - f1 * w[2][idx];
        u[2][idx] = f1 * w[1][idx] - f2 * w[0][idx];
      }
  return u;
}

VectorField velocity_from_vorticity(const VectorField& omega, BiotSavartDomain domain) {
  const Grid& g = omega.grid();
  return from_spectra(g, velocity_spectrum(g, {omega[0].spectrum(), omega[1].spectrum(), omega[2].spectrum()}, domain));
}

VectorField velocity_from_w1(const ScalarField& w1, const VelocityOptions& opts) {
  require_member(w1, opts.tol);
  const Grid& g = w1.grid();
  VectorField u = from_spectra(g, velocity_spectrum(g, reconstruct_vorticity_spectrum(g, w1.spectrum()), opts.domain));
  for (int c = 0; c < 3; ++c) u[c].set_flags(SymmetryFlag::permutation);
  return u;
}

Eigen::Matrix3d gradient_at_origin(const ScalarField& w1, BiotSavartDomain domain) {
  const Grid& g = w1.grid();
  const auto u = velocity_spectrum(g, reconstruct_vorticity_spectrum(g, w1.spectrum()), domain);
  Eigen::Matrix3d grad;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) grad(i, j) = value_at_origin(g, derivative_spectrum(g, u[i], j));
  return grad;
}

double lambda_spectral(const ScalarField& w1, BiotSavartDomain domain) {
  const Grid& g = w1.grid();
  const auto w = reconstruct_vorticity_spectrum(g, w1.spectrum());
  const auto u = velocity_spectrum(g, w, domain);
  return -value_at_origin(g, derivative_spectrum(g, u[0], 1));
}

std::vector<Eigen::Vector3d> velocity_kernel(const ScalarField& w1, std::span<const Eigen::Vector3d> points,
                                             const KernelQuadrature& quad) {
  const Grid& g = w1.grid();
  const double half = 0.5 * g.length();
  if (quad.refine < 1) throw InvalidInput("kernel refinement factor must be >= 1");
  for (const auto& x : points)
    if (!x.allFinite() || x.cwiseAbs().maxCoeff() > half) throw InvalidInput("evaluation point outside the box");

  const double peak = linf_norm(w1);
  if (peak == 0.0) return std::vector<Eigen::Vector3d>(points.size(), Eigen::Vector3d::Zero());
  {
    double outer = 0.0;
    const int n = g.n();
    for (int i3 = 0; i3 < n; ++i3)
      for (int i2 = 0; i2 < n; ++i2)
        for (int i1 = 0; i1 < n; ++i1) {
          const double r = std::max({std::abs(g.coordinate(i1)), std::abs(g.coordinate(i2)), std::abs(g.coordinate(i3))});
          if (r >= 0.5 * half) outer = std::max(outer, std::abs(w1.at(i1, i2, i3)));
        }
    if (outer > 1e-8 * peak) throw InvalidInput("w1 does not decay inside the inner half of the box");
  }

  const ScalarField src = quad.refine == 1 ? w1 : resample(w1, quad.refine * g.n());
  const Grid& gs = src.grid();
  const double hs = gs.spacing();

  std::vector<Eigen::Vector3d> curl_at(points.size(), Eigen::Vector3d::Zero());
  if (quad.lattice_correction) {
    for (const auto& x : points)
      for (int a = 0; a < 3; ++a) {
        const double t = (x[a] + half) / hs;
        if (std::abs(t - std::round(t)) > 1e-9) throw InvalidInput("lattice correction requires grid-node targets");
      }
    const VectorField omega = reconstruct_vorticity(w1, 1.0);
    const VectorField c = curl(omega);
    for (int comp = 0; comp < 3; ++comp) {
      const auto vals = TrigInterpolant(c[comp]).evaluate(points);
      for (std::size_t p = 0; p < points.size(); ++p) curl_at[p][comp] = vals[p];
    }
  }

  const int ns = gs.n();
  const double excl2 = 0.25 * hs * hs;
  const auto& kern = simd::kernels();
  const auto samples = src.samples();
  std::vector<Eigen::Vector3d> out(points.size());
  const long count = static_cast<long>(points.size());
#pragma omp parallel for schedule(dynamic)
  for (long p = 0; p < count; ++p) {
    const double x[3] = {points[p][0], points[p][1], points[p][2]};
    double acc[3] = {0.0, 0.0, 0.0};
    for (int i3 = 0; i3 < ns; ++i3)
      for (int i2 = 0; i2 < ns; ++i2) {
        simd::KernelRow row{samples.data() + gs.index(0, i2, i3), static_cast<std::size_t>(ns), gs.coordinate(0), hs,
                            gs.coordinate(i2), gs.coordinate(i3)};
        kern.kernel_row(x, row, excl2, acc);
      }
    const double scale = hs * hs * hs / (4.0 * kPi);
    Eigen::Vector3d u(acc[0] * scale, acc[1] * scale, acc[2] * scale);
    if (quad.lattice_correction) u -= hs * hs * kCubicLatticeConstant / (12.0 * kPi) * curl_at[p];
    out[p] = u;
  }
  return out;
}

}  // namespace eulerperm
