#pragma once

#include <cstddef>

namespace eulerperm {

/// Periodic cubic lattice on [-L/2, L/2)^3 with n nodes per axis.
///
/// Samples are stored x1-fastest: index(i1, i2, i3) = i1 + n (i2 + n i3).
/// Spectral arrays use the same layout with FFT index k per axis, whose
/// signed frequency is m = k for k < n/2 and k - n otherwise.
class Grid {
 public:
  /// Throws InvalidInput unless n is even, n >= 4 and L > 0.
  Grid(int n, double box_length);

  int n() const { return n_; }
  double length() const { return length_; }
  double spacing() const { return length_ / n_; }
  std::size_t size() const { return static_cast<std::size_t>(n_) * n_ * n_; }
  double cell_volume() const { const double h = spacing(); return h * h * h; }

  double coordinate(int i) const { return -0.5 * length_ + i * spacing(); }
  std::size_t index(int i1, int i2, int i3) const {
    return static_cast<std::size_t>(i1) + static_cast<std::size_t>(n_) * (i2 + static_cast<std::size_t>(n_) * i3);
  }
  int origin_index() const { return n_ / 2; }
  std::size_t origin() const { return index(n_ / 2, n_ / 2, n_ / 2); }

  int frequency(int k) const { return k < n_ / 2 ? k : k - n_; }
  int wrap(int m) const { return ((m % n_) + n_) % n_; }
  /// Derivative wavenumber: m/L, with the Nyquist mode mapped to zero.
  double derivative_wavenumber(int k) const { return k == n_ / 2 ? 0.0 : frequency(k) / length_; }

  /// Largest |m| kept by the two-thirds rule.
  int dealias_cutoff() const { return n_ / 3; }

  bool operator==(const Grid& o) const { return n_ == o.n_ && length_ == o.length_; }
  bool operator!=(const Grid& o) const { return !(*this == o); }

 private:
  int n_;
  double length_;
};

}  // namespace eulerperm
