// Copyright (c) 2026 The casec authors
// SPDX-License-Identifier: Apache-2.0

// Reference kernels. These define the semantics the vector variants must
// reproduce (up to floating-point reassociation); keep them simple.

#include <algorithm>
#include <cmath>

#include "casec/simd/kernels.hpp"

namespace casec::simd {

namespace {

void gram_wwt_scalar(const double* w, int rows, int cols, double* out) {
  for (int i = 0; i < rows; ++i) {
    const double* wi = w + static_cast<size_t>(i) * cols;
    for (int j = 0; j <= i; ++j) {
      const double* wj = w + static_cast<size_t>(j) * cols;
      double acc = 0.0;
      for (int c = 0; c < cols; ++c) acc += wi[c] * wj[c];
      out[static_cast<size_t>(i) * rows + j] = acc;
      out[static_cast<size_t>(j) * rows + i] = acc;
    }
  }
}

bool lu_logdet_scalar(double* a, int n, double* log_abs_det, int* sign) {
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
      for (int j = k + 1; j < n; ++j) rowi[j] -= f * rowk[j];
    }
  }
  *log_abs_det = ld;
  *sign = s;
  return true;
}

}  // namespace

Kernels scalar_kernels() { return {"scalar", gram_wwt_scalar, lu_logdet_scalar}; }

}  // namespace casec::simd
