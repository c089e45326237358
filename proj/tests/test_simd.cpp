// Copyright (c) 2026 The casec authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "casec/simd/kernels.hpp"

using namespace casec::simd;

namespace {

std::vector<double> random_matrix(int rows, int cols, double scale, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(0.0, scale);
  std::vector<double> m(static_cast<size_t>(rows) * cols);
  for (double& v : m) v = u(rng);
  return m;
}

}  // namespace

TEST_CASE("every supported variant reproduces the scalar gram kernel") {
  const Kernels ref = scalar_kernels();
  for (const Kernels& k : supported_kernels()) {
    INFO("variant: ", k.name);
    for (auto [rows, cols] : {std::pair{1, 1}, {3, 7}, {17, 33}, {33, 129}, {64, 64}}) {
      const auto w = random_matrix(rows, cols, 0.2, 1234u + rows);
      std::vector<double> a(static_cast<size_t>(rows) * rows), b(a.size());
      ref.gram_wwt(w.data(), rows, cols, a.data());
      k.gram_wwt(w.data(), rows, cols, b.data());
      for (size_t i = 0; i < a.size(); ++i)
        CHECK(std::fabs(a[i] - b[i]) <= 1e-13 * std::max(1.0, std::fabs(a[i])));
    }
  }
}

TEST_CASE("every supported variant reproduces the scalar LU log-determinant") {
  const Kernels ref = scalar_kernels();
  for (const Kernels& k : supported_kernels()) {
    INFO("variant: ", k.name);
    for (int n : {1, 2, 5, 16, 45, 97}) {
      // diagonally dominant, well conditioned
      auto m = random_matrix(n, n, 1.0 / n, 77u + n);
      for (int i = 0; i < n; ++i) m[static_cast<size_t>(i) * n + i] += 1.5;
      auto m2 = m;
      double la = 0, lb = 0;
      int sa = 0, sb = 0;
      REQUIRE(ref.lu_logdet(m.data(), n, &la, &sa));
      REQUIRE(k.lu_logdet(m2.data(), n, &lb, &sb));
      CHECK(sa == sb);
      CHECK(std::fabs(la - lb) <= 1e-12 * std::max(1.0, std::fabs(la)));
    }
  }
}

TEST_CASE("LU handles permutation sign and singularity") {
  for (const Kernels& k : supported_kernels()) {
    INFO("variant: ", k.name);
    // row swap needed; det = -1 -> sign -1, log|det| = 0
    std::vector<double> m{0.0, 1.0, 1.0, 0.0};
    double l = 0;
    int s = 0;
    REQUIRE(k.lu_logdet(m.data(), 2, &l, &s));
    CHECK(s == -1);
    CHECK(std::fabs(l) < 1e-15);

    std::vector<double> z(9, 1.0);  // rank 1 -> exact zero pivot
    CHECK_FALSE(k.lu_logdet(z.data(), 3, &l, &s));
  }
}

TEST_CASE("the active kernel set is one of the supported ones") {
  const Kernels& active = active_kernels();
  bool found = false;
  for (const Kernels& k : supported_kernels())
    if (std::string(k.name) == active.name) found = true;
  CHECK(found);
}
