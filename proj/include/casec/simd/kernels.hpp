// Copyright (c) 2026 The casec authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

namespace casec::simd {

/// out = W W^T for a row-major rows x cols matrix W; out is rows x rows,
/// fully filled (symmetric).
using GramWWTFn = void (*)(const double* w, int rows, int cols, double* out);

/// In-place partial-pivot LU of the n x n row-major matrix a. On success
/// stores ln|det| and the determinant sign (+1/-1) and returns true;
/// returns false on an exactly zero pivot.
using LuLogDetFn = bool (*)(double* a, int n, double* log_abs_det, int* sign);

struct Kernels {
  const char* name;
  GramWWTFn gram_wwt;
  LuLogDetFn lu_logdet;
};

Kernels scalar_kernels();

/// Best instruction set supported by this CPU, resolved once per process.
/// The environment variable CASEC_SIMD (scalar | avx2 | neon) overrides the
/// choice; an unsupported request falls back to scalar.
const Kernels& active_kernels();

/// Every variant this build supports on this CPU (for equivalence tests).
std::vector<Kernels> supported_kernels();

}  // namespace casec::simd
