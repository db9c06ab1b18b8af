#include "eulerperm/pullback.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "eulerperm/error.hpp"
#include "eulerperm/simd/kernels.hpp"
#include "eulerperm/spectral.hpp"

namespace eulerperm {

namespace {

const SignedPermutation& require_signed(const OrthogonalMap& q) {
  if (!q.signed_permutation())
    throw InvalidInput("exact pullback needs a signed permutation; use PullbackMode::interpolating");
  return *q.signed_permutation();
}

// For y = Q^T x with Q a signed permutation: y_a = sign[b] x_b where col[b] = a.
struct AxisSource {
  int from[3];
  int sign[3];
};

AxisSource transpose_source(const SignedPermutation& sp) {
  AxisSource s{};
  for (int b = 0; b < 3; ++b) {
    s.from[sp.col[b]] = b;
    s.sign[sp.col[b]] = sp.sign[b];
  }
  return s;
}

// Source node of Q^T x for every node x (centered index arithmetic).
std::vector<std::size_t> node_map(const Grid& g, const SignedPermutation& sp) {
  const AxisSource s = transpose_source(sp);
  const int n = g.n(), c = n / 2;
  std::vector<std::size_t> map(g.size());
  std::size_t idx = 0;
  for (int i3 = 0; i3 < n; ++i3)
    for (int i2 = 0; i2 < n; ++i2)
      for (int i1 = 0; i1 < n; ++i1, ++idx) {
        const int i[3] = {i1, i2, i3};
        int j[3];
        for (int a = 0; a < 3; ++a) j[a] = g.wrap(c + s.sign[a] * (i[s.from[a]] - c));
        map[idx] = g.index(j[0], j[1], j[2]);
      }
  return map;
}

std::vector<double> gather(const ScalarField& f, const std::vector<std::size_t>& map) {
  std::vector<double> out(map.size());
  for (std::size_t i = 0; i < map.size(); ++i) out[i] = f[map[i]];
  return out;
}

std::vector<double> interpolate_pulled(const ScalarField& f, const Eigen::Matrix3d& q) {
  const std::vector<Eigen::Vector3d> pts = grid_points(f.grid());
  std::vector<Eigen::Vector3d> src(pts.size());
  const Eigen::Matrix3d qt = q.transpose();
  // Sources outside the box see the field's zero extension, not its periodic image.
  const double half = 0.5 * f.grid().length() * (1.0 + 1e-12);
  std::vector<std::size_t> inside;
  inside.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Eigen::Vector3d y = qt * pts[i];
    if (y.cwiseAbs().maxCoeff() <= half) {
      src[inside.size()] = y;
      inside.push_back(i);
    }
  }
  src.resize(inside.size());
  const std::vector<double> vals = TrigInterpolant(f).evaluate(src);
  std::vector<double> out(pts.size(), 0.0);
  for (std::size_t k = 0; k < inside.size(); ++k) out[inside[k]] = vals[k];
  return out;
}

}  // namespace

TrigInterpolant::TrigInterpolant(const ScalarField& f, double rel_tol) : grid_(f.grid()) {
  const Grid& g = grid_;
  const Spectrum& c = f.spectrum();
  const int half = g.n() / 2;
  band_ = std::min(spectral_band(g, c, rel_tol), half);
  const int B = band_;
  width_ = 2 * B + 1;
  block_.assign(static_cast<std::size_t>(B + 1) * width_ * width_, Complex(0.0));
  auto axis_weight = [&](int m) { return std::abs(m) == half ? 0.5 : 1.0; };
  for (int m3 = 0; m3 <= B; ++m3)
    for (int m2 = -B; m2 <= B; ++m2)
      for (int m1 = -B; m1 <= B; ++m1) {
        const double w = axis_weight(m1) * axis_weight(m2) * axis_weight(m3) * (m3 > 0 ? 2.0 : 1.0);
        block_[(static_cast<std::size_t>(m3) * width_ + (m2 + B)) * width_ + (m1 + B)] =
            w * c[g.index(g.wrap(m1), g.wrap(m2), g.wrap(m3))];
      }
}

double TrigInterpolant::operator()(const Eigen::Vector3d& y) const {
  const int B = band_, W = width_;
  const double L = grid_.length();
  const double x0 = -0.5 * L;
  std::vector<Complex> phases(3 * static_cast<std::size_t>(W));
  Complex* ex[3] = {phases.data(), phases.data() + W, phases.data() + 2 * W};
  for (int a = 0; a < 3; ++a) {
    const double theta = 2.0 * std::numbers::pi * (y[a] - x0) / L;
    for (int m = -B; m <= B; ++m) ex[a][m + B] = std::polar(1.0, theta * m);
  }
  const auto& k = simd::kernels();
  double total = 0.0;
  for (int m3 = 0; m3 <= B; ++m3) {
    Complex plane(0.0);
    for (int m2 = -B; m2 <= B; ++m2) {
      const Complex* row = block_.data() + (static_cast<std::size_t>(m3) * W + (m2 + B)) * W;
      plane += ex[1][m2 + B] * k.complex_dot(ex[0], row, static_cast<std::size_t>(W));
    }
    total += (ex[2][m3 + B] * plane).real();
  }
  return total / static_cast<double>(grid_.size());
}

std::vector<double> TrigInterpolant::evaluate(std::span<const Eigen::Vector3d> points) const {
  std::vector<double> out(points.size());
  const long count = static_cast<long>(points.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < count; ++i) out[i] = (*this)(points[i]);
  return out;
}

std::vector<Eigen::Vector3d> grid_points(const Grid& g) {
  std::vector<Eigen::Vector3d> pts(g.size());
  const int n = g.n();
  std::size_t idx = 0;
  for (int i3 = 0; i3 < n; ++i3)
    for (int i2 = 0; i2 < n; ++i2)
      for (int i1 = 0; i1 < n; ++i1, ++idx) pts[idx] = {g.coordinate(i1), g.coordinate(i2), g.coordinate(i3)};
  return pts;
}

ScalarField pullback(const ScalarField& f, const OrthogonalMap& q, PullbackMode mode) {
  if (mode == PullbackMode::exact) {
    const auto map = node_map(f.grid(), require_signed(q));
    return ScalarField(f.grid(), gather(f, map));
  }
  return ScalarField(f.grid(), interpolate_pulled(f, q.matrix()));
}

VectorField pullback(const VectorField& u, const OrthogonalMap& q, PullbackMode mode) {
  const Grid& g = u.grid();
  std::array<std::vector<double>, 3> src;
  if (mode == PullbackMode::exact) {
    const auto map = node_map(g, require_signed(q));
    for (int c = 0; c < 3; ++c) src[c] = gather(u[c], map);
  } else {
    for (int c = 0; c < 3; ++c) src[c] = interpolate_pulled(u[c], q.matrix());
  }
  const Eigen::Matrix3d& m = q.matrix();
  std::array<std::vector<double>, 3> out;
  for (int r = 0; r < 3; ++r) {
    out[r].assign(g.size(), 0.0);
    for (int c = 0; c < 3; ++c) {
      const double coef = m(r, c);
      if (coef == 0.0) continue;
      for (std::size_t i = 0; i < g.size(); ++i) out[r][i] += coef * src[c][i];
    }
  }
  return VectorField(ScalarField(g, std::move(out[0])), ScalarField(g, std::move(out[1])),
                     ScalarField(g, std::move(out[2])));
}

ScalarField compose_with(const ScalarField& f, const PermutationElement& p) {
  // f(P x) = f^{P^T}(x).
  return pullback(f, OrthogonalMap(p).transpose());
}

Spectrum pullback_spectrum(const Grid& g, const Spectrum& c, const OrthogonalMap& q) {
  const AxisSource s = transpose_source(require_signed(q));
  const int n = g.n();
  Spectrum out(c.size());
  std::size_t idx = 0;
  for (int k3 = 0; k3 < n; ++k3)
    for (int k2 = 0; k2 < n; ++k2)
      for (int k1 = 0; k1 < n; ++k1, ++idx) {
        const int m[3] = {g.frequency(k1), g.frequency(k2), g.frequency(k3)};
        int j[3];
        for (int a = 0; a < 3; ++a) j[a] = g.wrap(s.sign[a] * m[s.from[a]]);
        out[idx] = c[g.index(j[0], j[1], j[2])];
      }
  return out;
}

double symmetry_residual(const VectorField& u, const OrthogonalMap& q, int sign, PullbackMode mode) {
  if (sign != 1 && sign != -1) throw InvalidInput("symmetry sign must be +1 or -1");
  const VectorField pulled = pullback(u, q, mode);
  double diff = 0.0;
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < u.grid().size(); ++i) {
      const double d = u[c][i] - sign * pulled[c][i];
      diff += d * d;
    }
  const double h3 = u.grid().cell_volume();
  return std::sqrt(h3 * diff) / std::max(l2_norm(u), 1e-300);
}

double permutation_residual(const VectorField& u) {
  double worst = 0.0;
  for (const PermutationElement& p : all_permutations()) worst = std::max(worst, symmetry_residual(u, p, 1));
  return worst;
}

}  // namespace eulerperm
