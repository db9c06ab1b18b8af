#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "eulerperm/fft.hpp"
#include "eulerperm/grid.hpp"

namespace eulerperm {

/// Symmetry properties asserted by whoever produced a field.
enum class SymmetryFlag : std::uint32_t {
  none = 0,
  permutation = 1u << 0,  // velocity invariant under all six permutations
  constraint = 1u << 1,   // scalar lies in the constraint space
  sigma_mirror = 1u << 2,
  sigma_axisymmetric = 1u << 3,
};

inline SymmetryFlag operator|(SymmetryFlag a, SymmetryFlag b) {
  return static_cast<SymmetryFlag>(static_cast<std::uint32_t>(a) | static_cast<std::uint32_t>(b));
}
inline bool has_flag(SymmetryFlag set, SymmetryFlag f) {
  return (static_cast<std::uint32_t>(set) & static_cast<std::uint32_t>(f)) != 0;
}
std::string describe(SymmetryFlag flags);
SymmetryFlag parse_symmetry_flags(const std::string& text);

/// Real samples on a Grid with a lazily computed, shared spectral cache.
///
/// Value semantics: copies share the immutable cache; mutation through
/// mutable_samples() drops it.
class ScalarField {
 public:
  explicit ScalarField(const Grid& g);
  ScalarField(const Grid& g, std::vector<double> samples);
  /// Builds samples from coefficients; the spectrum is retained as the cache.
  static ScalarField from_spectrum(const Grid& g, Spectrum coeffs);

  ScalarField(const ScalarField& o);
  ScalarField& operator=(const ScalarField& o);
  ScalarField(ScalarField&&) noexcept = default;
  ScalarField& operator=(ScalarField&&) noexcept = default;

  const Grid& grid() const { return grid_; }
  std::span<const double> samples() const { return samples_; }
  std::span<double> mutable_samples();
  double operator[](std::size_t i) const { return samples_[i]; }
  double at(int i1, int i2, int i3) const { return samples_[grid_.index(i1, i2, i3)]; }

  /// Throws InvalidInput if a sample is non-finite.
  const Spectrum& spectrum() const;

  SymmetryFlag flags() const { return flags_; }
  void set_flags(SymmetryFlag f) { flags_ = f; }

 private:
  Grid grid_;
  std::vector<double> samples_;
  mutable std::shared_ptr<const Spectrum> spectral_;
  mutable std::unique_ptr<std::mutex> mu_;
  SymmetryFlag flags_ = SymmetryFlag::none;
};

/// Three components on a common grid.
class VectorField {
 public:
  explicit VectorField(const Grid& g);
  VectorField(ScalarField c1, ScalarField c2, ScalarField c3);

  const Grid& grid() const { return c_[0].grid(); }
  const ScalarField& operator[](int i) const { return c_[i]; }
  ScalarField& operator[](int i) { return c_[i]; }
  const std::array<ScalarField, 3>& components() const { return c_; }

 private:
  std::array<ScalarField, 3> c_;
};

ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(double s, const ScalarField& a);
VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator-(const VectorField& a, const VectorField& b);
VectorField operator*(double s, const VectorField& a);

/// Sample-space norms with the quadrature weight h^3.
double l2_norm(const ScalarField& f);
double l2_norm(const VectorField& u);
double linf_norm(const ScalarField& f);
/// Max over nodes of the Euclidean length.
double linf_norm(const VectorField& u);
double inner_product(const ScalarField& f, const ScalarField& g);
double inner_product(const VectorField& u, const VectorField& v);

}  // namespace eulerperm
