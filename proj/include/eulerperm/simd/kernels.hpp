#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

namespace eulerperm::simd {

enum class Level { scalar, avx2 };

/// One row of Biot-Savart kernel sources: nodes y = (y1_start + i h, y2, y3)
/// for i in [0, count), carrying weights w1[i].
struct KernelRow {
  const double* w1;
  std::size_t count;
  double y1_start;
  double h;
  double y2;
  double y3;
};

/// Function table for the data-parallel inner loops.  Every entry has a scalar
/// reference implementation; vector variants must agree to rounding.
struct KernelTable {
  Level level;
  std::string_view name;
  double (*sum_squares)(const double* a, std::size_t n);
  double (*max_abs)(const double* a, std::size_t n);
  double (*dot)(const double* a, const double* b, std::size_t n);
  /// out[i] += s * (a0[i] b0[i] + a1[i] b1[i] + a2[i] b2[i])
  void (*accumulate_dot3)(double* out, double s, const double* a0, const double* a1, const double* a2,
                          const double* b0, const double* b1, const double* b2, std::size_t n);
  std::complex<double> (*complex_dot)(const std::complex<double>* a, const std::complex<double>* b,
                                      std::size_t n);
  /// Adds the three symmetric kernel blocks for target x over one source row;
  /// a block is skipped for a node closer than sqrt(exclusion2) to its singularity.
  void (*kernel_row)(const double x[3], const KernelRow& row, double exclusion2, double acc[3]);
};

const KernelTable& scalar_table();
bool available(Level level);
/// Throws InvalidInput if the level is not available on this machine.
const KernelTable& table(Level level);

/// The active table: AVX2 when the CPU supports it, unless overridden by
/// set_active_level or EULERPERM_SIMD=scalar in the environment.
const KernelTable& kernels();
void set_active_level(Level level);
Level active_level();
Level parse_level(std::string_view text);

}  // namespace eulerperm::simd
