#include "eulerperm/constraint.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

#include "eulerperm/error.hpp"
#include "eulerperm/pullback.hpp"
#include "eulerperm/spectral.hpp"
#include "eulerperm/symmetry.hpp"

namespace eulerperm {

namespace fault {
namespace {
std::atomic<Kind> g_fault{Kind::none};
}
void inject(Kind k) { g_fault.store(k); }
Kind active() { return g_fault.load(); }
}  // namespace fault

namespace {

using Int = __int128;

Int gcd_abs(Int a, Int b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Orthonormal basis (as rows of a k x k matrix product) of the null space of
// an integer matrix, computed by fraction-free elimination.
std::vector<std::vector<double>> null_space(std::vector<std::vector<Int>> a, int cols) {
  const int rows = static_cast<int>(a.size());
  std::vector<int> pivot_col;
  int prow = 0;
  for (int c = 0; c < cols && prow < rows; ++c) {
    int sel = -1;
    for (int r = prow; r < rows; ++r)
      if (a[r][c] != 0) {
        sel = r;
        break;
      }
    if (sel < 0) continue;
    std::swap(a[prow], a[sel]);
    for (int r = 0; r < rows; ++r) {
      if (r == prow || a[r][c] == 0) continue;
      const Int p = a[prow][c], q = a[r][c];
      Int g = 0;
      for (int j = 0; j < cols; ++j) {
        a[r][j] = a[r][j] * p - a[prow][j] * q;
        g = gcd_abs(g, a[r][j]);
      }
      if (g > 1)
        for (int j = 0; j < cols; ++j) a[r][j] /= g;
    }
    pivot_col.push_back(c);
    ++prow;
  }
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_col) is_pivot[c] = true;

  std::vector<std::vector<double>> basis;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<double> v(cols, 0.0);
    v[f] = 1.0;
    for (std::size_t r = 0; r < pivot_col.size(); ++r) {
      const int pc = pivot_col[r];
      v[pc] = -static_cast<double>(a[r][f]) / static_cast<double>(a[r][pc]);
    }
    // Modified Gram-Schmidt, two passes.
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) {
        const double d = std::inner_product(v.begin(), v.end(), b.begin(), 0.0);
        for (int j = 0; j < cols; ++j) v[j] -= d * b[j];
      }
    const double nv = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
    for (double& x : v) x /= nv;
    basis.push_back(std::move(v));
  }
  return basis;
}

struct Orbit {
  std::uint8_t size;
  std::array<std::uint32_t, 6> idx;
  std::uint32_t offset;  // into the projector pool; UINT32_MAX for the zero projector
};

class OrbitTable {
 public:
  explicit OrbitTable(const Grid& g) {
    const int n = g.n();
    const int half = n / 2;
    std::vector<bool> seen(g.size(), false);
    for (int k3 = 0; k3 < n; ++k3)
      for (int k2 = 0; k2 < n; ++k2)
        for (int k1 = 0; k1 < n; ++k1) {
          const std::size_t flat = g.index(k1, k2, k3);
          if (seen[flat]) continue;
          const std::array<int, 3> m{g.frequency(k1), g.frequency(k2), g.frequency(k3)};
          std::vector<std::array<int, 3>> pts;
          for (const PermutationElement& p : all_permutations()) {
            std::array<int, 3> pm{};
            for (int r = 0; r < 3; ++r)
              for (int c = 0; c < 3; ++c)
                if (p.matrix()[r][c]) pm[r] = m[c];
            if (std::find(pts.begin(), pts.end(), pm) == pts.end()) pts.push_back(pm);
          }
          Orbit o{};
          o.size = static_cast<std::uint8_t>(pts.size());
          for (std::size_t j = 0; j < pts.size(); ++j) {
            o.idx[j] = static_cast<std::uint32_t>(g.index(g.wrap(pts[j][0]), g.wrap(pts[j][1]), g.wrap(pts[j][2])));
            seen[o.idx[j]] = true;
          }
          const bool nyquist = std::abs(m[0]) == half || std::abs(m[1]) == half || std::abs(m[2]) == half;
          o.offset = nyquist ? UINT32_MAX : build_projector(pts);
          orbits_.push_back(o);
        }
  }

  void apply(const Spectrum& in, Spectrum& out) const {
    const long count = static_cast<long>(orbits_.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < count; ++i) {
      const Orbit& o = orbits_[i];
      const int k = o.size;
      if (o.offset == UINT32_MAX) {
        for (int j = 0; j < k; ++j) out[o.idx[j]] = 0.0;
        continue;
      }
      const double* p = pool_.data() + o.offset;
      Complex x[6];
      for (int j = 0; j < k; ++j) x[j] = in[o.idx[j]];
      for (int r = 0; r < k; ++r) {
        Complex s(0.0);
        for (int j = 0; j < k; ++j) s += p[r * k + j] * x[j];
        out[o.idx[r]] = s;
      }
    }
  }

 private:
  std::uint32_t build_projector(const std::vector<std::array<int, 3>>& pts) {
    const int k = static_cast<int>(pts.size());
    auto col = [&](const std::array<int, 3>& q) {
      return static_cast<int>(std::find(pts.begin(), pts.end(), q) - pts.begin());
    };
    std::vector<std::vector<Int>> rows;
    for (const auto& e : pts) {
      std::vector<Int> odd(k, 0), div(k, 0);
      odd[col(e)] += 1;
      odd[col({e[0], e[2], e[1]})] += 1;
      div[col(e)] += e[0];
      div[col({e[1], e[0], e[2]})] -= e[1];
      div[col({e[2], e[1], e[0]})] -= e[2];
      rows.push_back(std::move(odd));
      rows.push_back(std::move(div));
    }
    const auto basis = null_space(std::move(rows), k);
    const auto offset = static_cast<std::uint32_t>(pool_.size());
    pool_.resize(pool_.size() + static_cast<std::size_t>(k) * k, 0.0);
    double* p = pool_.data() + offset;
    for (const auto& b : basis)
      for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c) p[r * k + c] += b[r] * b[c];
    return offset;
  }

  std::vector<Orbit> orbits_;
  std::vector<double> pool_;
};

std::shared_ptr<const OrbitTable> orbit_table(const Grid& g) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const OrbitTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(g.n());
  if (it != cache.end()) return it->second;
  auto t = std::make_shared<const OrbitTable>(g);
  cache.emplace(g.n(), t);
  return t;
}

}  // namespace

ConstraintResidual constraint_residual(const ScalarField& f) {
  const Grid& g = f.grid();
  ConstraintResidual res;
  const double norm = l2_norm(f);
  if (norm == 0.0) return res;
  const ScalarField swapped = compose_with(f, permutation(PermutationName::P23));
  res.physical = l2_norm(f + swapped) / norm;

  const Spectrum& c = f.spectrum();
  const int n = g.n();
  double num = 0.0, den = 0.0;
  std::size_t idx = 0;
  for (int k3 = 0; k3 < n; ++k3)
    for (int k2 = 0; k2 < n; ++k2)
      for (int k1 = 0; k1 < n; ++k1, ++idx) {
        const double m1 = g.frequency(k1), m2 = g.frequency(k2), m3 = g.frequency(k3);
        const Complex r = m1 * c[idx] - m2 * c[g.index(k2, k1, k3)] - m3 * c[g.index(k3, k2, k1)];
        num += std::norm(r);
        den += (m1 * m1 + m2 * m2 + m3 * m3) * std::norm(c[idx]);
      }
  res.fourier = den > 0.0 ? std::sqrt(num / den) : 0.0;
  return res;
}

Spectrum project_constraint(const Grid& g, const Spectrum& c) {
  if (c.size() != g.size()) throw InvalidInput("spectrum size does not match grid");
  Spectrum out(c.size());
  orbit_table(g)->apply(c, out);
  return out;
}

ScalarField project_constraint(const ScalarField& f) {
  ScalarField out = ScalarField::from_spectrum(f.grid(), project_constraint(f.grid(), f.spectrum()));
  out.set_flags(SymmetryFlag::constraint);
  return out;
}

std::array<Spectrum, 3> reconstruct_vorticity_spectrum(const Grid& g, const Spectrum& w1) {
  const int n = g.n();
  Spectrum w2(g.size()), w3(g.size());
  const double s2 = fault::active() == fault::Kind::reconstruct_sign ? 1.0 : -1.0;
  std::size_t idx = 0;
  for (int k3 = 0; k3 < n; ++k3)
    for (int k2 = 0; k2 < n; ++k2)
      for (int k1 = 0; k1 < n; ++k1, ++idx) {
        w2[idx] = s2 * w1[g.index(k2, k1, k3)];
        w3[idx] = -w1[g.index(k3, k2, k1)];
      }
  return {w1, std::move(w2), std::move(w3)};
}

VectorField reconstruct_vorticity(const ScalarField& w1, double tol) {
  const ConstraintResidual r = constraint_residual(w1);
  if (r.max() > tol)
    throw InvalidInput("w1 is not in the constraint space (physical " + std::to_string(r.physical) + ", fourier " +
                       std::to_string(r.fourier) + ")");
  ScalarField w2 = -1.0 * compose_with(w1, permutation(PermutationName::P12));
  if (fault::active() == fault::Kind::reconstruct_sign) w2 = -1.0 * w2;
  ScalarField w3 = -1.0 * compose_with(w1, permutation(PermutationName::P13));
  return VectorField(w1, std::move(w2), std::move(w3));
}

double divergence_residual(const VectorField& u) {
  const Grid& g = u.grid();
  const Spectrum& a = u[0].spectrum();
  const Spectrum& b = u[1].spectrum();
  const Spectrum& c = u[2].spectrum();
  const int n = g.n();
  double num = 0.0, den = 0.0;
  std::size_t idx = 0;
  for (int k3 = 0; k3 < n; ++k3)
    for (int k2 = 0; k2 < n; ++k2)
      for (int k1 = 0; k1 < n; ++k1, ++idx) {
        const double q1 = g.derivative_wavenumber(k1), q2 = g.derivative_wavenumber(k2),
                     q3 = g.derivative_wavenumber(k3);
        num += std::norm(q1 * a[idx] + q2 * b[idx] + q3 * c[idx]);
        den += (q1 * q1 + q2 * q2 + q3 * q3) * (std::norm(a[idx]) + std::norm(b[idx]) + std::norm(c[idx]));
      }
  return den > 0.0 ? std::sqrt(num / den) : 0.0;
}

ScalarField extract_w1(const VectorField& u, double tol) {
  const double div = divergence_residual(u);
  if (div > tol) throw InvalidInput("velocity is not divergence-free (residual " + std::to_string(div) + ")");
  const double sym = permutation_residual(u);
  if (sym > tol) throw InvalidInput("velocity is not permutation symmetric (residual " + std::to_string(sym) + ")");
  ScalarField w1 = curl(u)[0];
  w1.set_flags(SymmetryFlag::constraint);
  return w1;
}

}  // namespace eulerperm
