// Copyright (c) 2026 The casec authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdlib>
#include <cstring>

#include "casec/simd/kernels.hpp"

namespace casec::simd {

#if defined(__x86_64__) || defined(_M_X64)
Kernels avx2_kernels();  // kernels_avx2.cpp
#endif
#if defined(__aarch64__)
Kernels neon_kernels();  // kernels_neon.cpp
#endif

namespace {

bool cpu_has_avx2_fma() {
#if (defined(__x86_64__) || defined(_M_X64)) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Kernels detect() {
  const char* req = std::getenv("CASEC_SIMD");
  if (req != nullptr) {
    if (std::strcmp(req, "scalar") == 0) return scalar_kernels();
#if defined(__x86_64__) || defined(_M_X64)
    if (std::strcmp(req, "avx2") == 0 && cpu_has_avx2_fma()) return avx2_kernels();
#endif
#if defined(__aarch64__)
    if (std::strcmp(req, "neon") == 0) return neon_kernels();
#endif
    return scalar_kernels();
  }
#if defined(__x86_64__) || defined(_M_X64)
  if (cpu_has_avx2_fma()) return avx2_kernels();
#endif
#if defined(__aarch64__)
  return neon_kernels();
#else
  return scalar_kernels();
#endif
}

}  // namespace

const Kernels& active_kernels() {
  static const Kernels k = detect();
  return k;
}

std::vector<Kernels> supported_kernels() {
  std::vector<Kernels> out{scalar_kernels()};
#if defined(__x86_64__) || defined(_M_X64)
  if (cpu_has_avx2_fma()) out.push_back(avx2_kernels());
#endif
#if defined(__aarch64__)
  out.push_back(neon_kernels());
#endif
  return out;
}

}  // namespace casec::simd
