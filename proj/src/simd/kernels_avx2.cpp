// Copyright (c) 2026 The casec authors
// SPDX-License-Identifier: Apache-2.0

// AVX2/FMA variants of the dense kernels. This translation unit is compiled
// with -mavx2 -mfma; it must only be entered after the runtime CPU check in
// dispatch.cpp.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "casec/simd/kernels.hpp"

namespace casec::simd {

namespace {

inline double hsum256(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

void gram_wwt_avx2(const double* w, int rows, int cols, double* out) {
  for (int i = 0; i < rows; ++i) {
    const double* wi = w + static_cast<size_t>(i) * cols;
    for (int j = 0; j <= i; ++j) {
      const double* wj = w + static_cast<size_t>(j) * cols;
      __m256d acc0 = _mm256_setzero_pd();
      __m256d acc1 = _mm256_setzero_pd();
      int c = 0;
      for (; c + 8 <= cols; c += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(wi + c), _mm256_loadu_pd(wj + c), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(wi + c + 4), _mm256_loadu_pd(wj + c + 4), acc1);
      }
      for (; c + 4 <= cols; c += 4)
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(wi + c), _mm256_loadu_pd(wj + c), acc0);
      double acc = hsum256(_mm256_add_pd(acc0, acc1));
      for (; c < cols; ++c) acc += wi[c] * wj[c];
      out[static_cast<size_t>(i) * rows + j] = acc;
      out[static_cast<size_t>(j) * rows + i] = acc;
    }
  }
}

bool lu_logdet_avx2(double* a, int n, double* log_abs_det, int* sign) {
  double ld = 0.0;
  int s = 1;
  for (int k = 0; k < n; ++k) {
    double* rowk = a + static_cast<size_t>(k) * n;
    int piv = k;
    double amax = std::fabs(rowk[k]);
    for (int i = k + 1; i < n; ++i) {
      const double v = std::fabs(a[static_cast<size_t>(i) * n + k]);
      if (v > amax) {
        amax = v;
        piv = i;
      }
    }
    if (amax == 0.0) return false;
    if (piv != k) {
      double* rowp = a + static_cast<size_t>(piv) * n;
      std::swap_ranges(rowk, rowk + n, rowp);
      s = -s;
    }
    const double akk = rowk[k];
    ld += std::log(std::fabs(akk));
    if (akk < 0.0) s = -s;
    const double inv = 1.0 / akk;
    for (int i = k + 1; i < n; ++i) {
      double* rowi = a + static_cast<size_t>(i) * n;
      const double f = rowi[k] * inv;
      rowi[k] = f;
      const __m256d fv = _mm256_set1_pd(f);
      int j = k + 1;
      for (; j + 4 <= n; j += 4) {
        __m256d r = _mm256_loadu_pd(rowi + j);
        r = _mm256_fnmadd_pd(fv, _mm256_loadu_pd(rowk + j), r);
        _mm256_storeu_pd(rowi + j, r);
      }
      for (; j < n; ++j) rowi[j] -= f * rowk[j];
    }
  }
  *log_abs_det = ld;
  *sign = s;
  return true;
}

}  // namespace

Kernels avx2_kernels() { return {"avx2", gram_wwt_avx2, lu_logdet_avx2}; }

}  // namespace casec::simd

#endif  // x86_64
