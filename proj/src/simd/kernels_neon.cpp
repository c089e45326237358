// Copyright (c) 2026 The casec authors
// SPDX-License-Identifier: Apache-2.0

// NEON variants (aarch64). Same structure as the AVX2 file, 2-wide doubles.

#if defined(__aarch64__)

#include <arm_neon.h>

#include <algorithm>
#include <cmath>

#include "casec/simd/kernels.hpp"

namespace casec::simd {

namespace {

void gram_wwt_neon(const double* w, int rows, int cols, double* out) {
  for (int i = 0; i < rows; ++i) {
    const double* wi = w + static_cast<size_t>(i) * cols;
    for (int j = 0; j <= i; ++j) {
      const double* wj = w + static_cast<size_t>(j) * cols;
      float64x2_t acc0 = vdupq_n_f64(0.0);
      float64x2_t acc1 = vdupq_n_f64(0.0);
      int c = 0;
      for (; c + 4 <= cols; c += 4) {
        acc0 = vfmaq_f64(acc0, vld1q_f64(wi + c), vld1q_f64(wj + c));
        acc1 = vfmaq_f64(acc1, vld1q_f64(wi + c + 2), vld1q_f64(wj + c + 2));
      }
      double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
      for (; c < cols; ++c) acc += wi[c] * wj[c];
      out[static_cast<size_t>(i) * rows + j] = acc;
      out[static_cast<size_t>(j) * rows + i] = acc;
    }
  }
}

bool lu_logdet_neon(double* a, int n, double* log_abs_det, int* sign) {
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
      const float64x2_t fv = vdupq_n_f64(f);
      int j = k + 1;
      for (; j + 2 <= n; j += 2) {
        float64x2_t r = vld1q_f64(rowi + j);
        r = vfmsq_f64(r, fv, vld1q_f64(rowk + j));
        vst1q_f64(rowi + j, r);
      }
      for (; j < n; ++j) rowi[j] -= f * rowk[j];
    }
  }
  *log_abs_det = ld;
  *sign = s;
  return true;
}

}  // namespace

Kernels neon_kernels() { return {"neon", gram_wwt_neon, lu_logdet_neon}; }

}  // namespace casec::simd

#endif  // __aarch64__
