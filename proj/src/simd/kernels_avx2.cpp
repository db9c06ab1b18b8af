#include <immintrin.h>

#include <cmath>

#include "eulerperm/simd/kernels.hpp"

namespace eulerperm::simd {

namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline double hmax(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d m = _mm_max_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_max_sd(m, _mm_unpackhi_pd(m, m)));
}

double sum_squares(const double* a, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d x = _mm256_loadu_pd(a + i);
    const __m256d y = _mm256_loadu_pd(a + i + 4);
    acc0 = _mm256_fmadd_pd(x, x, acc0);
    acc1 = _mm256_fmadd_pd(y, y, acc1);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * a[i];
  return s;
}

double max_abs(const double* a, std::size_t n) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d m = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) m = _mm256_max_pd(m, _mm256_andnot_pd(sign, _mm256_loadu_pd(a + i)));
  double r = hmax(m);
  for (; i < n; ++i) r = std::max(r, std::abs(a[i]));
  return r;
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void accumulate_dot3(double* out, double s, const double* a0, const double* a1, const double* a2,
                     const double* b0, const double* b1, const double* b2, std::size_t n) {
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d d = _mm256_mul_pd(_mm256_loadu_pd(a0 + i), _mm256_loadu_pd(b0 + i));
    d = _mm256_fmadd_pd(_mm256_loadu_pd(a1 + i), _mm256_loadu_pd(b1 + i), d);
    d = _mm256_fmadd_pd(_mm256_loadu_pd(a2 + i), _mm256_loadu_pd(b2 + i), d);
    _mm256_storeu_pd(out + i, _mm256_fmadd_pd(vs, d, _mm256_loadu_pd(out + i)));
  }
  for (; i < n; ++i) out[i] += s * (a0[i] * b0[i] + a1[i] * b1[i] + a2[i] * b2[i]);
}

// Two interleaved complex numbers per register: (re0, im0, re1, im1).
std::complex<double> complex_dot(const std::complex<double>* a, const std::complex<double>* b, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  __m256d acc_rr = _mm256_setzero_pd();  // accumulates (ar br, ai bi, ...)
  __m256d acc_ri = _mm256_setzero_pd();  // accumulates (ar bi, ai br, ...)
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * i);
    const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    acc_rr = _mm256_fmadd_pd(va, vb, acc_rr);
    acc_ri = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0x5), acc_ri);
  }
  alignas(32) double rr[4], ri[4];
  _mm256_store_pd(rr, acc_rr);
  _mm256_store_pd(ri, acc_ri);
  double re = (rr[0] - rr[1]) + (rr[2] - rr[3]);
  double im = (ri[0] + ri[1]) + (ri[2] + ri[3]);
  for (; i < n; ++i) {
    re += a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
  }
  return {re, im};
}

inline __m256d inv_cube(__m256d r2, __m256d w, __m256d ex) {
  const __m256d k = _mm256_div_pd(w, _mm256_mul_pd(r2, _mm256_sqrt_pd(r2)));
  return _mm256_and_pd(k, _mm256_cmp_pd(r2, ex, _CMP_GE_OQ));
}

void kernel_row(const double x[3], const KernelRow& row, double exclusion2, double acc[3]) {
  const __m256d x1 = _mm256_set1_pd(x[0]), x2 = _mm256_set1_pd(x[1]), x3 = _mm256_set1_pd(x[2]);
  const __m256d y2 = _mm256_set1_pd(row.y2), y3 = _mm256_set1_pd(row.y3);
  const __m256d ex = _mm256_set1_pd(exclusion2);
  const __m256d step = _mm256_set1_pd(row.h);
  const __m256d lane = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
  __m256d s1 = _mm256_setzero_pd(), s2 = _mm256_setzero_pd(), s3 = _mm256_setzero_pd();

  // Terms constant along the row.
  const __m256d x1my2 = _mm256_sub_pd(x1, y2);
  const __m256d x2my2 = _mm256_sub_pd(x2, y2);
  const __m256d y3mx3 = _mm256_sub_pd(y3, x3);
  const __m256d x1my3 = _mm256_sub_pd(x1, y3);
  const __m256d dd12 = _mm256_add_pd(_mm256_mul_pd(x1my2, x1my2), _mm256_mul_pd(y3mx3, y3mx3));
  const __m256d dd13 = _mm256_add_pd(_mm256_mul_pd(x1my3, x1my3), _mm256_mul_pd(x2my2, x2my2));
  const __m256d dd0 = _mm256_add_pd(_mm256_mul_pd(x2my2, x2my2), _mm256_mul_pd(y3mx3, y3mx3));

  std::size_t i = 0;
  for (; i + 4 <= row.count; i += 4) {
    const __m256d idx = _mm256_add_pd(_mm256_set1_pd(static_cast<double>(i)), lane);
    const __m256d y1 = _mm256_fmadd_pd(idx, step, _mm256_set1_pd(row.y1_start));
    const __m256d w = _mm256_loadu_pd(row.w1 + i);

    const __m256d a = _mm256_sub_pd(x1, y1);
    const __m256d k0 = inv_cube(_mm256_fmadd_pd(a, a, dd0), w, ex);
    s2 = _mm256_fmadd_pd(y3mx3, k0, s2);
    s3 = _mm256_fmadd_pd(x2my2, k0, s3);

    const __m256d b = _mm256_sub_pd(x2, y1);
    const __m256d k12 = inv_cube(_mm256_fmadd_pd(b, b, dd12), w, ex);
    s1 = _mm256_fmadd_pd(y3mx3, k12, s1);
    s3 = _mm256_fmadd_pd(x1my2, k12, s3);

    const __m256d c = _mm256_sub_pd(x3, y1);
    const __m256d k13 = inv_cube(_mm256_fmadd_pd(c, c, dd13), w, ex);
    s1 = _mm256_fmadd_pd(x2my2, k13, s1);
    s2 = _mm256_fnmadd_pd(x1my3, k13, s2);
  }
  double acc_local[3] = {hsum(s1), hsum(s2), hsum(s3)};
  if (i < row.count) {
    KernelRow tail = row;
    tail.w1 = row.w1 + i;
    tail.count = row.count - i;
    tail.y1_start = row.y1_start + static_cast<double>(i) * row.h;
    scalar_table().kernel_row(x, tail, exclusion2, acc_local);
  }
  acc[0] += acc_local[0];
  acc[1] += acc_local[1];
  acc[2] += acc_local[2];
}

}  // namespace

extern const KernelTable kAvx2Table;
const KernelTable kAvx2Table{Level::avx2, "avx2", sum_squares, max_abs, dot, accumulate_dot3, complex_dot, kernel_row};

}  // namespace eulerperm::simd
