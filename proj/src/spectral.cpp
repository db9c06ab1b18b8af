#include "eulerperm/spectral.hpp"

#include <cmath>
#include <numbers>

#include "eulerperm/error.hpp"

namespace eulerperm {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kFourPi2 = 4.0 * std::numbers::pi * std::numbers::pi;

// Calls fn(flat, k1, k2, k3) over the whole spectral array.
template <class Fn>
void for_each_mode(const Grid& g, Fn&& fn) {
  const int n = g.n();
  std::size_t idx = 0;
  for (int k3 = 0; k3 < n; ++k3)
    for (int k2 = 0; k2 < n; ++k2)
      for (int k1 = 0; k1 < n; ++k1, ++idx) fn(idx, k1, k2, k3);
}

double xi2(const Grid& g, int k1, int k2, int k3) {
  const double L = g.length();
  const double a = g.frequency(k1) / L, b = g.frequency(k2) / L, c = g.frequency(k3) / L;
  return a * a + b * b + c * c;
}

double spectral_mass(const Spectrum& c) {
  double s = 0.0;
  for (const Complex& z : c) s += std::norm(z);
  return s;
}

void require_mean_zero(const ScalarField& f, const char* what) {
  if (!is_mean_zero(f)) throw InvalidInput(std::string(what) + " requires a mean-zero field");
}

double norm_sum(const ScalarField& f, NormSpec spec, NormKind kind) {
  const Grid& g = f.grid();
  if (kind != NormKind::Hs) require_mean_zero(f, "homogeneous Sobolev norm");
  if (kind == NormKind::HsCapHdotNeg1 && !(spec.s > -1.0))
    throw InvalidInput("combined norm requires s > -1");
  const Spectrum& c = f.spectrum();
  double total = 0.0;
  for_each_mode(g, [&](std::size_t idx, int k1, int k2, int k3) {
    const double q = kFourPi2 * xi2(g, k1, k2, k3);
    double w = 0.0;
    switch (kind) {
      case NormKind::Hs:
        w = std::pow(1.0 + q, spec.s);
        break;
      case NormKind::HdotNeg1:
        w = idx == 0 ? 0.0 : 1.0 / q;
        break;
      case NormKind::HsCapHdotNeg1:
        w = idx == 0 ? 0.0 : std::pow(1.0 + q, spec.s + 1.0) / q;
        break;
    }
    total += w * std::norm(c[idx]);
  });
  const double L = g.length();
  const double N = static_cast<double>(g.size());
  return total * L * L * L / (N * N);
}

}  // namespace

bool is_mean_zero(const ScalarField& f, double tol) {
  const Spectrum& c = f.spectrum();
  return std::abs(c[0]) <= tol * std::sqrt(spectral_mass(c));
}

double sobolev_norm(const ScalarField& f, NormSpec spec, NormKind kind) {
  return std::sqrt(norm_sum(f, spec, kind));
}

double sobolev_norm(const VectorField& u, NormSpec spec, NormKind kind) {
  return std::sqrt(norm_sum(u[0], spec, kind) + norm_sum(u[1], spec, kind) + norm_sum(u[2], spec, kind));
}

Spectrum derivative_spectrum(const Grid& g, const Spectrum& c, int axis) {
  if (axis < 0 || axis > 2) throw InvalidInput("axis must be 0, 1 or 2");
  Spectrum out(c.size());
  for_each_mode(g, [&](std::size_t idx, int k1, int k2, int k3) {
    const int k = axis == 0 ? k1 : (axis == 1 ? k2 : k3);
    out[idx] = Complex(0.0, kTwoPi * g.derivative_wavenumber(k)) * c[idx];
  });
  return out;
}

ScalarField derivative(const ScalarField& f, int axis) {
  return ScalarField::from_spectrum(f.grid(), derivative_spectrum(f.grid(), f.spectrum(), axis));
}

VectorField gradient(const ScalarField& f) { return VectorField(derivative(f, 0), derivative(f, 1), derivative(f, 2)); }

VectorField curl(const VectorField& u) {
  const Grid& g = u.grid();
  const Spectrum& a = u[0].spectrum();
  const Spectrum& b = u[1].spectrum();
  const Spectrum& c = u[2].spectrum();
  Spectrum w1(g.size()), w2(g.size()), w3(g.size());
  for_each_mode(g, [&](std::size_t idx, int k1, int k2, int k3) {
    const Complex i1(0.0, kTwoPi * g.derivative_wavenumber(k1));
    const Complex i2(0.0, kTwoPi * g.derivative_wavenumber(k2));
    const Complex i3(0.0, kTwoPi * g.derivative_wavenumber(k3));
    w1[idx] = i2 * c[idx] - i3 * b[idx];
    w2[idx] = i3 * a[idx] - i1 * c[idx];
    w3[idx] = i1 * b[idx] - i2 * a[idx];
  });
  return VectorField(ScalarField::from_spectrum(g, std::move(w1)), ScalarField::from_spectrum(g, std::move(w2)),
                     ScalarField::from_spectrum(g, std::move(w3)));
}

ScalarField divergence(const VectorField& u) {
  const Grid& g = u.grid();
  const Spectrum& a = u[0].spectrum();
  const Spectrum& b = u[1].spectrum();
  const Spectrum& c = u[2].spectrum();
  Spectrum d(g.size());
  for_each_mode(g, [&](std::size_t idx, int k1, int k2, int k3) {
    d[idx] = Complex(0.0, kTwoPi) * (g.derivative_wavenumber(k1) * a[idx] + g.derivative_wavenumber(k2) * b[idx] +
                                     g.derivative_wavenumber(k3) * c[idx]);
  });
  return ScalarField::from_spectrum(g, std::move(d));
}

ScalarField laplacian(const ScalarField& f) {
  const Grid& g = f.grid();
  const Spectrum& c = f.spectrum();
  Spectrum out(g.size());
  for_each_mode(g, [&](std::size_t idx, int k1, int k2, int k3) { out[idx] = -kFourPi2 * xi2(g, k1, k2, k3) * c[idx]; });
  return ScalarField::from_spectrum(g, std::move(out));
}

ScalarField inverse_laplacian(const ScalarField& f) {
  require_mean_zero(f, "inverse_laplacian");
  const Grid& g = f.grid();
  const Spectrum& c = f.spectrum();
  Spectrum out(g.size());
  for_each_mode(g, [&](std::size_t idx, int k1, int k2, int k3) {
    out[idx] = idx == 0 ? Complex(0.0) : c[idx] / (kFourPi2 * xi2(g, k1, k2, k3));
  });
  return ScalarField::from_spectrum(g, std::move(out));
}

VectorField leray_project(const VectorField& u) {
  const Grid& g = u.grid();
  const Spectrum& a = u[0].spectrum();
  const Spectrum& b = u[1].spectrum();
  const Spectrum& c = u[2].spectrum();
  Spectrum p1(g.size()), p2(g.size()), p3(g.size());
  for_each_mode(g, [&](std::size_t idx, int k1, int k2, int k3) {
    const double q1 = g.derivative_wavenumber(k1), q2 = g.derivative_wavenumber(k2), q3 = g.derivative_wavenumber(k3);
    const double qq = q1 * q1 + q2 * q2 + q3 * q3;
    if (idx == 0) return;
    Complex v1 = a[idx], v2 = b[idx], v3 = c[idx];
    if (qq > 0.0) {
      const Complex s = (q1 * v1 + q2 * v2 + q3 * v3) / qq;
      v1 -= q1 * s;
      v2 -= q2 * s;
      v3 -= q3 * s;
    }
    p1[idx] = v1;
    p2[idx] = v2;
    p3[idx] = v3;
  });
  return VectorField(ScalarField::from_spectrum(g, std::move(p1)), ScalarField::from_spectrum(g, std::move(p2)),
                     ScalarField::from_spectrum(g, std::move(p3)));
}

void dealias_in_place(const Grid& g, Spectrum& c) {
  const int cut = g.dealias_cutoff();
  for_each_mode(g, [&](std::size_t idx, int k1, int k2, int k3) {
    if (std::abs(g.frequency(k1)) > cut || std::abs(g.frequency(k2)) > cut || std::abs(g.frequency(k3)) > cut)
      c[idx] = 0.0;
  });
}

Spectrum dealias(const Grid& g, Spectrum c) {
  dealias_in_place(g, c);
  return c;
}

ScalarField dealias(const ScalarField& f) {
  ScalarField out = ScalarField::from_spectrum(f.grid(), dealias(f.grid(), f.spectrum()));
  out.set_flags(f.flags());
  return out;
}

VectorField dealias(const VectorField& u) { return VectorField(dealias(u[0]), dealias(u[1]), dealias(u[2])); }

int spectral_band(const Grid& g, const Spectrum& c, double rel_tol) {
  double peak = 0.0;
  for (const Complex& z : c) peak = std::max(peak, std::abs(z));
  if (peak == 0.0) return 0;
  const double floor = rel_tol * peak;
  int band = 0;
  for_each_mode(g, [&](std::size_t idx, int k1, int k2, int k3) {
    if (std::abs(c[idx]) <= floor) return;
    band = std::max({band, std::abs(g.frequency(k1)), std::abs(g.frequency(k2)), std::abs(g.frequency(k3))});
  });
  return band;
}

ScalarField resample(const ScalarField& f, int n_target) {
  const Grid& src = f.grid();
  const Grid dst(n_target, src.length());
  const Spectrum& c = f.spectrum();
  Spectrum out(dst.size(), Complex(0.0));
  const double scale = static_cast<double>(dst.size()) / static_cast<double>(src.size());
  const int half_src = src.n() / 2;
  const int half_dst = dst.n() / 2;
  for_each_mode(src, [&](std::size_t idx, int k1, int k2, int k3) {
    const int m[3] = {src.frequency(k1), src.frequency(k2), src.frequency(k3)};
    // Expand Nyquist entries into +-n/2 halves when refining.
    int options[3][2];
    int count[3];
    for (int a = 0; a < 3; ++a) {
      if (m[a] == -half_src && n_target > src.n()) {
        options[a][0] = -half_src;
        options[a][1] = half_src;
        count[a] = 2;
      } else {
        options[a][0] = m[a];
        count[a] = 1;
      }
    }
    const double w = 1.0 / (count[0] * count[1] * count[2]);
    for (int a = 0; a < count[0]; ++a)
      for (int b = 0; b < count[1]; ++b)
        for (int d = 0; d < count[2]; ++d) {
          const int p = options[0][a], q = options[1][b], r = options[2][d];
          if (std::abs(p) >= half_dst || std::abs(q) >= half_dst || std::abs(r) >= half_dst) continue;
          out[dst.index(dst.wrap(p), dst.wrap(q), dst.wrap(r))] += w * scale * c[idx];
        }
  });
  return ScalarField::from_spectrum(dst, std::move(out));
}

double value_at_origin(const Grid& g, const Spectrum& c) {
  double total = 0.0;
  for_each_mode(g, [&](std::size_t idx, int k1, int k2, int k3) {
    const double sign = ((k1 + k2 + k3) & 1) ? -1.0 : 1.0;
    total += sign * c[idx].real();
  });
  return total / static_cast<double>(g.size());
}

}  // namespace eulerperm
