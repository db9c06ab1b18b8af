#include <cmath>
#include <limits>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "eulerperm/biot_savart.hpp"
#include "eulerperm/error.hpp"
#include "eulerperm/pullback.hpp"
#include "eulerperm/simd/kernels.hpp"
#include "eulerperm/spectral.hpp"

namespace eulerperm {

namespace {

constexpr double kPi = std::numbers::pi;

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      dp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

// Integrals of the lambda kernels against omega:
//   k[i] = int (sigma.x) d_i(x) / |x|^5 omega_i,  d = (x2-x3, x3-x1, x1-x2)
//   cross = int (sigma.x)/|x|^5 (sigma x x).omega
struct KernelSums {
  double k[3] = {0.0, 0.0, 0.0};
  double cross = 0.0;
};

struct KernelValues {
  double k[3];
  double c[3];
};

KernelValues kernel_values(double x1, double x2, double x3) {
  const double r2 = x1 * x1 + x2 * x2 + x3 * x3;
  const double base = (x1 + x2 + x3) / (r2 * r2 * std::sqrt(r2));
  return {{base * (x2 - x3), base * (x3 - x1), base * (x1 - x2)},
          {base * (x3 - x2), base * (x1 - x3), base * (x2 - x1)}};
}

KernelSums kernel_sums(const VectorField& omega, const LambdaOptions& opts) {
  const Grid& g = omega.grid();
  const int n = g.n();
  const double h = g.spacing();
  const double h3 = g.cell_volume();
  const bool split = opts.rule == LambdaQuadrature::split;
  const double delta = opts.cutoff_cells * h;
  const double r0 = 5.0 * delta;
  const double rho = 10.0 * delta;
  if (split) {
    if (rho > 0.5 * g.length()) throw InvalidInput("split lambda quadrature: partition ball does not fit in the box");
    if (opts.radial_nodes < 1 || opts.polar_nodes < 1 || opts.azimuthal_nodes < 4 || opts.azimuthal_nodes % 4 != 0)
      throw InvalidInput("split lambda quadrature: invalid node counts");
  }

  // Far part on the grid nodes.
  std::array<std::vector<double>, 3> wk, wc;
  for (int a = 0; a < 3; ++a) {
    wk[a].assign(g.size(), 0.0);
    wc[a].assign(g.size(), 0.0);
  }
  const std::size_t origin = g.origin();
  std::size_t idx = 0;
  for (int i3 = 0; i3 < n; ++i3)
    for (int i2 = 0; i2 < n; ++i2)
      for (int i1 = 0; i1 < n; ++i1, ++idx) {
        if (idx == origin) continue;
        const double x1 = g.coordinate(i1), x2 = g.coordinate(i2), x3 = g.coordinate(i3);
        double chi = 1.0;
        if (split) chi = 0.5 * std::erfc((r0 - std::sqrt(x1 * x1 + x2 * x2 + x3 * x3)) / delta);
        const KernelValues kv = kernel_values(x1, x2, x3);
        for (int a = 0; a < 3; ++a) {
          wk[a][idx] = h3 * chi * kv.k[a];
          wc[a][idx] = h3 * chi * kv.c[a];
        }
      }
  const auto& kern = simd::kernels();
  KernelSums s;
  for (int a = 0; a < 3; ++a) {
    const double* om = omega[a].samples().data();
    s.k[a] = kern.dot(wk[a].data(), om, g.size());
    s.cross += kern.dot(wc[a].data(), om, g.size());
  }
  if (!split) return s;

  // Near part on a spherical product rule with polar axis e1.
  std::vector<double> xr, wr, xm, wm;
  gauss_legendre(opts.radial_nodes, xr, wr);
  gauss_legendre(opts.polar_nodes, xm, wm);
  const int nphi = opts.azimuthal_nodes;
  std::vector<Eigen::Vector3d> pts;
  std::vector<double> weight;
  pts.reserve(static_cast<std::size_t>(opts.radial_nodes) * opts.polar_nodes * nphi);
  for (int a = 0; a < opts.radial_nodes; ++a) {
    const double r = 0.5 * rho * (xr[a] + 1.0);
    const double psi = 0.5 * std::erfc((r - r0) / delta);
    const double wrad = 0.5 * rho * wr[a] * r * r * psi;
    for (int b = 0; b < opts.polar_nodes; ++b) {
      const double mu = xm[b];
      const double st = std::sqrt(1.0 - mu * mu);
      for (int c = 0; c < nphi; ++c) {
        const double phi = 2.0 * kPi * (c + 0.5) / nphi;
        pts.emplace_back(r * mu, r * st * std::cos(phi), r * st * std::sin(phi));
        weight.push_back(wrad * wm[b] * 2.0 * kPi / nphi);
      }
    }
  }
  std::array<std::vector<double>, 3> vals;
  for (int a = 0; a < 3; ++a) vals[a] = TrigInterpolant(omega[a]).evaluate(pts);
  for (std::size_t q = 0; q < pts.size(); ++q) {
    const KernelValues kv = kernel_values(pts[q][0], pts[q][1], pts[q][2]);
    for (int a = 0; a < 3; ++a) {
      s.k[a] += weight[q] * kv.k[a] * vals[a][q];
      s.cross += weight[q] * kv.c[a] * vals[a][q];
    }
  }
  return s;
}

}  // namespace

Eigen::Matrix3d lambda_gradient_matrix(double lambda) {
  Eigen::Matrix3d m;
  m << 0.0, -1.0, -1.0, -1.0, 0.0, -1.0, -1.0, -1.0, 0.0;
  return lambda * m;
}

Eigenstructure strain_eigenstructure(const Eigen::Matrix3d& strain) {
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(0.5 * (strain + strain.transpose()));
  Eigenstructure e;
  for (int i = 0; i < 3; ++i) e.eigenvalues[i] = es.eigenvalues()[i];
  e.min_vector = es.eigenvectors().col(0);
  e.axis_alignment = std::min(1.0, std::abs(e.min_vector.dot(sigma_unit())));
  return e;
}

Eigenstructure strain_eigenstructure(const StrainReport& report) { return strain_eigenstructure(report.strain_origin); }

double lambda_from_vorticity(const VectorField& omega, const LambdaOptions& opts) {
  return -kernel_sums(omega, opts).cross / (8.0 * kPi);
}

StrainReport lambda_diagnostics(const ScalarField& w1, const LambdaOptions& opts) {
  const Grid& g = w1.grid();
  if (opts.require_member) {
    const ConstraintResidual r = constraint_residual(w1);
    if (r.max() > opts.tol)
      throw InvalidInput("w1 is not in the constraint space (residual " + std::to_string(r.max()) + ")");
  }
  const VectorField omega = reconstruct_vorticity(w1, std::numeric_limits<double>::infinity());
  const KernelSums s = kernel_sums(omega, opts);
  StrainReport rep;
  rep.lambda_w1 = 3.0 / (8.0 * kPi) * s.k[0];
  rep.lambda_w2 = 3.0 / (8.0 * kPi) * s.k[1];
  rep.lambda_w3 = 3.0 / (8.0 * kPi) * s.k[2];
  rep.lambda_omega = -s.cross / (8.0 * kPi);
  if (is_mean_zero(w1)) {
    rep.grad_origin = gradient_at_origin(w1, opts.spectral_domain);
  } else {
    // Diagnostics-only input: drop the mean before inverting the Laplacian.
    Spectrum c = w1.spectrum();
    c[0] = 0.0;
    rep.grad_origin = gradient_at_origin(ScalarField::from_spectrum(g, std::move(c)), opts.spectral_domain);
  }
  rep.lambda_spectral = -rep.grad_origin(0, 1);
  rep.strain_origin = 0.5 * (rep.grad_origin + rep.grad_origin.transpose());
  const Eigenstructure e = strain_eigenstructure(rep.strain_origin);
  rep.eigenvalues = e.eigenvalues;
  rep.axis_alignment = e.axis_alignment;
  return rep;
}

std::string StrainReport::to_text() const {
  std::ostringstream ss;
  ss << std::setprecision(15);
  ss << "lambda_w1 " << lambda_w1 << '\n'
     << "lambda_w2 " << lambda_w2 << '\n'
     << "lambda_w3 " << lambda_w3 << '\n'
     << "lambda_omega " << lambda_omega << '\n'
     << "lambda_spectral " << lambda_spectral << '\n';
  for (int i = 0; i < 3; ++i)
    ss << "grad_origin_row" << i + 1 << ' ' << grad_origin(i, 0) << ' ' << grad_origin(i, 1) << ' ' << grad_origin(i, 2)
       << '\n';
  for (int i = 0; i < 3; ++i)
    ss << "strain_origin_row" << i + 1 << ' ' << strain_origin(i, 0) << ' ' << strain_origin(i, 1) << ' '
       << strain_origin(i, 2) << '\n';
  ss << "eigenvalues " << eigenvalues[0] << ' ' << eigenvalues[1] << ' ' << eigenvalues[2] << '\n'
     << "axis_alignment " << axis_alignment << '\n';
  return ss.str();
}

VectorField omega_perp(const VectorField& omega) {
  const Grid& g = omega.grid();
  std::array<std::vector<double>, 3> out;
  for (int a = 0; a < 3; ++a) out[a].resize(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double s = (omega[0][i] + omega[1][i] + omega[2][i]) / 3.0;
    for (int a = 0; a < 3; ++a) out[a][i] = omega[a][i] - s;
  }
  return VectorField(ScalarField(g, std::move(out[0])), ScalarField(g, std::move(out[1])),
                     ScalarField(g, std::move(out[2])));
}

}  // namespace eulerperm
