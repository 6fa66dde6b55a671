// Compiled with -mavx2 only; never called unless the CPU reports AVX2.
// No FMA: every product and sum rounds exactly as in kernels_scalar.cpp.

#include <immintrin.h>

#include <algorithm>

#include "kernels_impl.hpp"

namespace ofdm::simd::detail {
namespace {

inline const double* as_doubles(const Complex* p) { return reinterpret_cast<const double*>(p); }
inline double* as_doubles(Complex* p) { return reinterpret_cast<double*>(p); }

// [ar br - ai bi, ai br + ar bi] for two complex lanes.
inline __m256d mul2(__m256d a, __m256d b) {
  const __m256d br = _mm256_movedup_pd(b);
  const __m256d bi = _mm256_permute_pd(b, 0xF);
  const __m256d t1 = _mm256_mul_pd(a, br);
  const __m256d t2 = _mm256_mul_pd(_mm256_permute_pd(a, 0x5), bi);
  return _mm256_addsub_pd(t1, t2);
}

void cmul_avx2(const Complex* a, const Complex* b, Complex* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(as_doubles(a + i));
    const __m256d vb = _mm256_loadu_pd(as_doubles(b + i));
    _mm256_storeu_pd(as_doubles(out + i), mul2(va, vb));
  }
  cmul_scalar(a + i, b + i, out + i, n - i);
}

void caxpy_avx2(Complex h, const Complex* x, Complex* y, std::size_t n) {
  const __m256d hr = _mm256_set1_pd(h.real());
  const __m256d hi = _mm256_set1_pd(h.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d vx = _mm256_loadu_pd(as_doubles(x + i));
    const __m256d t1 = _mm256_mul_pd(vx, hr);
    const __m256d t2 = _mm256_mul_pd(_mm256_permute_pd(vx, 0x5), hi);
    const __m256d prod = _mm256_addsub_pd(t1, t2);
    const __m256d vy = _mm256_loadu_pd(as_doubles(y + i));
    _mm256_storeu_pd(as_doubles(y + i), _mm256_add_pd(vy, prod));
  }
  caxpy_scalar(h, x + i, y + i, n - i);
}

void scale_real_avx2(const double* w, Complex* x, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d w2 = _mm256_castpd128_pd256(_mm_loadu_pd(w + i));
    const __m256d wd = _mm256_permute4x64_pd(w2, 0x50);
    const __m256d vx = _mm256_loadu_pd(as_doubles(x + i));
    _mm256_storeu_pd(as_doubles(x + i), _mm256_mul_pd(vx, wd));
  }
  scale_real_scalar(w + i, x + i, n - i);
}

void axpy_real_avx2(double s, const Complex* g, Complex* y, std::size_t n) {
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d vg = _mm256_loadu_pd(as_doubles(g + i));
    const __m256d vy = _mm256_loadu_pd(as_doubles(y + i));
    _mm256_storeu_pd(as_doubles(y + i), _mm256_add_pd(vy, _mm256_mul_pd(vs, vg)));
  }
  axpy_real_scalar(s, g + i, y + i, n - i);
}

PowerStats power_stats_avx2(const Complex* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  __m256d peak = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a = _mm256_loadu_pd(as_doubles(x + i));
    const __m256d b = _mm256_loadu_pd(as_doubles(x + i + 2));
    // [p0, p2, p1, p3]
    const __m256d p = _mm256_hadd_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(b, b));
    acc = _mm256_add_pd(acc, p);
    peak = _mm256_max_pd(peak, p);
  }
  alignas(32) double lanes[4];
  alignas(32) double peaks[4];
  _mm256_store_pd(lanes, acc);
  _mm256_store_pd(peaks, peak);
  PowerStats tail = power_stats_scalar(x + i, n - i);
  PowerStats st;
  st.sum = ((lanes[0] + lanes[1]) + (lanes[2] + lanes[3])) + tail.sum;
  st.peak = std::max({peaks[0], peaks[1], peaks[2], peaks[3], tail.peak});
  return st;
}

void clip_magnitude_avx2(Complex* x, std::size_t n, double limit) {
  const __m256d vlimit = _mm256_set1_pd(limit);
  const __m256d vlimit2 = _mm256_set1_pd(limit * limit);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d vx = _mm256_loadu_pd(as_doubles(x + i));
    const __m256d sq = _mm256_mul_pd(vx, vx);
    const __m256d p = _mm256_hadd_pd(sq, sq);  // [p0, p0, p1, p1]
    const __m256d mask = _mm256_cmp_pd(p, vlimit2, _CMP_GT_OQ);
    const __m256d g = _mm256_div_pd(vlimit, _mm256_sqrt_pd(p));
    const __m256d clipped = _mm256_mul_pd(vx, g);
    _mm256_storeu_pd(as_doubles(x + i), _mm256_blendv_pd(vx, clipped, mask));
  }
  clip_magnitude_scalar(x + i, n - i, limit);
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{
      "avx2",        cmul_avx2,        caxpy_avx2,          scale_real_avx2,
      axpy_real_avx2, power_stats_avx2, clip_magnitude_avx2,
  };
  return table;
}

}  // namespace ofdm::simd::detail
