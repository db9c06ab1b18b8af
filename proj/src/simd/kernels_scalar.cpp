#include <cmath>

#include "eulerperm/simd/kernels.hpp"

namespace eulerperm::simd {

namespace {

double sum_squares(const double* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * a[i];
  return s;
}

double max_abs(const double* a, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(a[i]));
  return m;
}

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

void accumulate_dot3(double* out, double s, const double* a0, const double* a1, const double* a2,
                     const double* b0, const double* b1, const double* b2, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] += s * (a0[i] * b0[i] + a1[i] * b1[i] + a2[i] * b2[i]);
}

std::complex<double> complex_dot(const std::complex<double>* a, const std::complex<double>* b, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
  }
  return {re, im};
}

void kernel_row(const double x[3], const KernelRow& row, double exclusion2, double acc[3]) {
  const double y2 = row.y2, y3 = row.y3;
  double s1 = 0.0, s2 = 0.0, s3 = 0.0;
  for (std::size_t i = 0; i < row.count; ++i) {
    const double y1 = row.y1_start + static_cast<double>(i) * row.h;
    const double w = row.w1[i];
    // block for y itself
    double d1 = x[0] - y1, d2 = x[1] - y2, d3 = x[2] - y3;
    double r2 = d1 * d1 + d2 * d2 + d3 * d3;
    if (r2 >= exclusion2) {
      const double k = w / (r2 * std::sqrt(r2));
      s2 += (y3 - x[2]) * k;
      s3 += (x[1] - y2) * k;
    }
    // block for P12 y = (y2, y1, y3)
    d1 = x[0] - y2; d2 = x[1] - y1; d3 = x[2] - y3;
    r2 = d1 * d1 + d2 * d2 + d3 * d3;
    if (r2 >= exclusion2) {
      const double k = w / (r2 * std::sqrt(r2));
      s1 += (y3 - x[2]) * k;
      s3 += (x[0] - y2) * k;
    }
    // block for P13 y = (y3, y2, y1)
    d1 = x[0] - y3; d2 = x[1] - y2; d3 = x[2] - y1;
    r2 = d1 * d1 + d2 * d2 + d3 * d3;
    if (r2 >= exclusion2) {
      const double k = w / (r2 * std::sqrt(r2));
      s1 += (x[1] - y2) * k;
      s2 += (y3 - x[0]) * k;
    }
  }
  acc[0] += s1;
  acc[1] += s2;
  acc[2] += s3;
}

const KernelTable kScalar{Level::scalar, "scalar", sum_squares, max_abs, dot, accumulate_dot3, complex_dot, kernel_row};

}  // namespace

const KernelTable& scalar_table() { return kScalar; }

}  // namespace eulerperm::simd
