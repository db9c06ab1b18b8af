#include "eulerperm/field.hpp"

#include <cmath>
#include <sstream>

#include "eulerperm/error.hpp"
#include "eulerperm/simd/kernels.hpp"

namespace eulerperm {

namespace {

struct FlagName {
  SymmetryFlag flag;
  const char* name;
};
constexpr FlagName kFlagNames[] = {
    {SymmetryFlag::permutation, "permutation"},
    {SymmetryFlag::constraint, "constraint"},
    {SymmetryFlag::sigma_mirror, "sigma_mirror"},
    {SymmetryFlag::sigma_axisymmetric, "sigma_axisymmetric"},
};

void require_same_grid(const Grid& a, const Grid& b) {
  if (a != b) throw InvalidInput("fields live on different grids");
}

}  // namespace

std::string describe(SymmetryFlag flags) {
  std::string out;
  for (const auto& f : kFlagNames) {
    if (!has_flag(flags, f.flag)) continue;
    if (!out.empty()) out += ',';
    out += f.name;
  }
  return out.empty() ? "none" : out;
}

SymmetryFlag parse_symmetry_flags(const std::string& text) {
  SymmetryFlag flags = SymmetryFlag::none;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item == "none") continue;
    bool known = false;
    for (const auto& f : kFlagNames) {
      if (item == f.name) {
        flags = flags | f.flag;
        known = true;
      }
    }
    if (!known) throw InvalidInput("unknown symmetry flag: " + item);
  }
  return flags;
}

ScalarField::ScalarField(const Grid& g)
    : grid_(g), samples_(g.size(), 0.0), mu_(std::make_unique<std::mutex>()) {}

ScalarField::ScalarField(const Grid& g, std::vector<double> samples)
    : grid_(g), samples_(std::move(samples)), mu_(std::make_unique<std::mutex>()) {
  if (samples_.size() != g.size()) throw InvalidInput("sample count does not match grid");
}

ScalarField ScalarField::from_spectrum(const Grid& g, Spectrum coeffs) {
  ScalarField f(g, inverse_transform(g, coeffs));
  f.spectral_ = std::make_shared<const Spectrum>(std::move(coeffs));
  return f;
}

ScalarField::ScalarField(const ScalarField& o)
    : grid_(o.grid_), samples_(o.samples_), mu_(std::make_unique<std::mutex>()), flags_(o.flags_) {
  std::lock_guard<std::mutex> lock(*o.mu_);
  spectral_ = o.spectral_;
}

ScalarField& ScalarField::operator=(const ScalarField& o) {
  if (this == &o) return *this;
  grid_ = o.grid_;
  samples_ = o.samples_;
  flags_ = o.flags_;
  if (!mu_) mu_ = std::make_unique<std::mutex>();
  std::shared_ptr<const Spectrum> s;
  {
    std::lock_guard<std::mutex> lock(*o.mu_);
    s = o.spectral_;
  }
  spectral_ = std::move(s);
  return *this;
}

std::span<double> ScalarField::mutable_samples() {
  spectral_.reset();
  return samples_;
}

const Spectrum& ScalarField::spectrum() const {
  std::lock_guard<std::mutex> lock(*mu_);
  if (!spectral_) spectral_ = std::make_shared<const Spectrum>(forward_transform(grid_, samples_));
  return *spectral_;
}

VectorField::VectorField(const Grid& g) : c_{ScalarField(g), ScalarField(g), ScalarField(g)} {}

VectorField::VectorField(ScalarField c1, ScalarField c2, ScalarField c3)
    : c_{std::move(c1), std::move(c2), std::move(c3)} {
  require_same_grid(c_[0].grid(), c_[1].grid());
  require_same_grid(c_[0].grid(), c_[2].grid());
}

namespace {

template <class Op>
ScalarField combine(const ScalarField& a, const ScalarField& b, Op op) {
  require_same_grid(a.grid(), b.grid());
  std::vector<double> out(a.grid().size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = op(a[i], b[i]);
  return ScalarField(a.grid(), std::move(out));
}

}  // namespace

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  return combine(a, b, [](double x, double y) { return x + y; });
}
ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  return combine(a, b, [](double x, double y) { return x - y; });
}
ScalarField operator*(double s, const ScalarField& a) {
  std::vector<double> out(a.samples().begin(), a.samples().end());
  for (double& v : out) v *= s;
  return ScalarField(a.grid(), std::move(out));
}
VectorField operator+(const VectorField& a, const VectorField& b) {
  return VectorField(a[0] + b[0], a[1] + b[1], a[2] + b[2]);
}
VectorField operator-(const VectorField& a, const VectorField& b) {
  return VectorField(a[0] - b[0], a[1] - b[1], a[2] - b[2]);
}
VectorField operator*(double s, const VectorField& a) { return VectorField(s * a[0], s * a[1], s * a[2]); }

double l2_norm(const ScalarField& f) {
  const auto s = f.samples();
  return std::sqrt(f.grid().cell_volume() * simd::kernels().sum_squares(s.data(), s.size()));
}

double l2_norm(const VectorField& u) {
  double total = 0.0;
  for (int c = 0; c < 3; ++c) {
    const auto s = u[c].samples();
    total += simd::kernels().sum_squares(s.data(), s.size());
  }
  return std::sqrt(u.grid().cell_volume() * total);
}

double linf_norm(const ScalarField& f) {
  const auto s = f.samples();
  return simd::kernels().max_abs(s.data(), s.size());
}

double linf_norm(const VectorField& u) {
  double m = 0.0;
  const std::size_t n = u.grid().size();
  for (std::size_t i = 0; i < n; ++i) {
    const double a = u[0][i], b = u[1][i], c = u[2][i];
    m = std::max(m, a * a + b * b + c * c);
  }
  return std::sqrt(m);
}

double inner_product(const ScalarField& f, const ScalarField& g) {
  require_same_grid(f.grid(), g.grid());
  return f.grid().cell_volume() * simd::kernels().dot(f.samples().data(), g.samples().data(), f.grid().size());
}

double inner_product(const VectorField& u, const VectorField& v) {
  return inner_product(u[0], v[0]) + inner_product(u[1], v[1]) + inner_product(u[2], v[2]);
}

}  // namespace eulerperm
