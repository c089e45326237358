// Copyright (c) 2026 The casec authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "casec/errors.hpp"
#include "casec/specfun.hpp"

using namespace casec;

namespace {

// Independent oracle: ascending series I_n(x) = (x/2)^n sum_k (x^2/4)^k / (k! (n+k)!),
// scaled by e^-x. All terms positive, so no cancellation; long double carries
// enough headroom for the x <= 30 range used in tests.
double i_scaled_series(int n, double x) {
  long double q = 0.25L * (long double)x * x;
  long double term = 1.0L;
  for (int j = 1; j <= n; ++j) term *= 0.5L * (long double)x / j;
  long double acc = term;
  for (int k = 1; k < 400; ++k) {
    term *= q / ((long double)k * (k + n));
    acc += term;
    if (term < 1e-25L * acc) break;
  }
  return (double)(acc * std::exp(-(long double)x));
}

// Independent oracle: K_0(x) = int_0^inf exp(-x cosh t) dt, evaluated as the
// e^x-scaled integrand exp(-x (cosh t - 1)) on a fine Simpson grid.
double k0_scaled_quadrature(double x) {
  const double tmax = std::acosh(1.0 + 745.0 / x);
  const int steps = 40000;  // even
  const double h = tmax / steps;
  auto f = [x](double t) { return std::exp(-x * (std::cosh(t) - 1.0)); };
  double acc = f(0.0) + f(tmax);
  for (int i = 1; i < steps; ++i) acc += f(i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

// mpmath (50-digit) reference values {n, x, e^-x I_n(x), e^x K_n(x)}.
struct GoldenRow {
  int n;
  double x, i, k;
};
const std::vector<GoldenRow> kGolden = {
    {0, 1e-6, 0.99999900000075000, 13.931456005075459},
    {0, 0.001, 0.99900074958351556, 7.0307160023782515},
    {0, 0.1, 0.90710092578230110, 2.6823261022628944},
    {0, 1, 0.46575960759364044, 1.1444630798068950},
    {0, 2, 0.30850832255367104, 0.84156821507077142},
    {0, 10, 0.12783333716342861, 0.39163193443659867},
    {0, 100, 0.039944379299096683, 0.12517562165912658},
    {0, 1000, 0.012617240455891257, 0.039628321600754217},
    {0, 10000, 0.0039894726746047321, 0.012532984717699285},
    {1, 1e-6, 4.9999950000031250e-7, 1000000.9999932843},
    {1, 0.5, 0.15642080318487170, 2.7310097082117857},
    {1, 2, 0.21526928924893766, 1.0334768470686886},
    {1, 50, 0.055993123892895400, 0.17856655855881557},
    {2, 1.5, 0.075381092492924110, 2.6157645513649672},
    {3, 1, 0.0081553077728142938, 19.303233695596904},
    {5, 0.01, 2.5782655181358727e-14, 3878568400500.1999},
    {5, 3, 0.0045409031389258206, 18.835686316330943},
    {10, 10, 0.00099388192221399772, 35.556339158140535},
    {20, 1, 1.4593174056818686e-25, 1.7109869854051397e+23},
    {50, 30, 1.3652871959938371e-17, 628051444834943.34},
    {50, 100, 1.7938050431597961e-7, 24931.003327340054},
    {120, 80, 1.4032304953521863e-36, 2.4706279250172647e+33},
    {200, 150, 2.5534213606724004e-54, 7.8326157321732251e+50},
    {200, 1000, 2.7505752805628150e-11, 17825012.355638192},
    {500, 400, 1.2082029662673788e-125, 6.4630582849283187e+121},
    {1000, 900, 3.0724057196139353e-225, 1.2096288276895242e+221},
};

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

}  // namespace

TEST_CASE("scaled I against independent power series") {
  CHECK(rel(bessel_i_scaled(0, 1.0), 0.46575960759364044) < 1e-13);
  for (int n : {0, 1, 2, 5, 17}) {
    for (double x : {1e-4, 0.3, 1.0, 4.5, 22.0}) {
      CAPTURE(n);
      CAPTURE(x);
      CHECK(rel(bessel_i_scaled(n, x), i_scaled_series(n, x)) < 1e-13);
    }
  }
}

TEST_CASE("scaled K0 against integral-representation oracle") {
  for (double x : {0.05, 0.9, 1.0, 2.5, 14.0, 90.0}) {
    CAPTURE(x);
    CHECK(rel(bessel_k_scaled(0, x), k0_scaled_quadrature(x)) < 1e-11);
  }
}

TEST_CASE("mpmath golden table") {
  for (const auto& g : kGolden) {
    CAPTURE(g.n);
    CAPTURE(g.x);
    CHECK(rel(bessel_i_scaled(g.n, g.x), g.i) < 1e-13);
    CHECK(rel(bessel_k_scaled(g.n, g.x), g.k) < 1e-13);
  }
}

TEST_CASE("negative orders fold bit-identically") {
  for (double x : {0.2, 3.0, 77.0}) {
    CHECK(bessel_i_scaled(-3, x) == bessel_i_scaled(3, x));
    CHECK(bessel_k_scaled(-2, x) == bessel_k_scaled(2, x));
    CHECK(bessel_i_prime_scaled(-4, x) == bessel_i_prime_scaled(4, x));
    CHECK(bessel_k_prime_scaled(-4, x) == bessel_k_prime_scaled(4, x));
  }
}

TEST_CASE("Wronskian x (I_n K_{n+1} + I_{n+1} K_n) = 1 on the full grid") {
  for (double x : {0.01, 0.05, 0.2, 1.0, 3.3, 10.0, 33.0, 100.0}) {
    auto i = bessel_i_scaled_array(51, x);
    auto k = bessel_k_scaled_array(51, x);
    for (int n = 0; n <= 50; ++n) {
      const double w = x * (i[n] * k[n + 1] + i[n + 1] * k[n]).to_double();
      CAPTURE(n);
      CAPTURE(x);
      CHECK(std::fabs(w - 1.0) < 1e-11);
    }
  }
}

TEST_CASE("three-term recurrence residual") {
  for (double x : {0.01, 0.4, 2.0, 9.0, 100.0}) {
    auto i = bessel_i_scaled_array(52, x);
    auto k = bessel_k_scaled_array(52, x);
    for (int n = 1; n <= 50; ++n) {
      const double in1 = i[n - 1].to_double();
      const double res_i = in1 - i[n + 1].to_double() - (2.0 * n / x) * i[n].to_double();
      CHECK(std::fabs(res_i) < 1e-11 * std::max(in1, 1e-300));
      // K grows with n; compare on the scaled level to avoid overflow
      const ScaledReal res_k = k[n + 1] + -(k[n - 1] + ScaledReal::from(2.0 * n / x) * k[n]);
      CHECK(std::fabs((res_k / k[n + 1]).to_double()) < 1e-11);
    }
  }
}

TEST_CASE("derivative identities and signs") {
  for (double x : {0.3, 1.0, 6.0}) {
    CHECK(bessel_i_prime_scaled(0, x) == bessel_i_scaled(1, x));
    CHECK(bessel_k_prime_scaled(0, x) == -bessel_k_scaled(1, x));
    CHECK(bessel_k_prime_scaled(3, x) < 0.0);
    CHECK(bessel_i_prime_scaled(3, x) > 0.0);
  }
  // golden: e^-2 (I_0(2) + I_2(2))/2
  CHECK(rel(bessel_i_prime_scaled(1, 2.0), 0.20087367792920221) < 1e-13);
  // golden: -e^1.5 (K_1(1.5) + K_3(1.5))/2
  CHECK(rel(bessel_k_prime_scaled(2, 1.5), -4.7308519420391759) < 1e-13);

  // finite-difference consistency at n=2, x=3
  const double h = 1e-5;
  const double fd = (bessel_i_scaled(2, 3.0 + h) * std::exp(3.0 + h) -
                     bessel_i_scaled(2, 3.0 - h) * std::exp(3.0 - h)) /
                    (2.0 * h) * std::exp(-3.0);
  CHECK(rel(bessel_i_prime_scaled(2, 3.0), fd) < 1e-8);
}

TEST_CASE("small-argument limit of I_1") {
  CHECK(bessel_i_scaled(1, 1e-8) == doctest::Approx(0.5e-8).epsilon(1e-6));
  CHECK(bessel_i_scaled(1, 1e-12) > 0.0);
}

TEST_CASE("wide-exponent arrays stay finite to n=2000, x=1e4") {
  for (double x : {1e-6, 1.0, 1e4}) {
    auto i = bessel_i_scaled_array(2000, x);
    auto k = bessel_k_scaled_array(2000, x);
    for (int n = 0; n <= 2000; n += 50) {
      CAPTURE(n);
      CAPTURE(x);
      CHECK(std::isfinite(i[n].frac));
      CHECK(i[n].frac > 0.0);
      CHECK(std::isfinite(k[n].frac));
      CHECK(k[n].frac > 0.0);
      const double prod = (i[n] * k[n]).to_double();  // I_n K_n, exponentials cancel
      CHECK(std::isfinite(prod));
      CHECK(prod > 0.0);
    }
  }
  // I_n(x) K_n(x) ~ 1/(2 sqrt(n^2 + x^2)) for large order
  auto i = bessel_i_scaled_array(2000, 1.0);
  auto k = bessel_k_scaled_array(2000, 1.0);
  CHECK(rel((i[2000] * k[2000]).to_double(), 1.0 / 4000.0) < 1e-2);
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(bessel_i_scaled(0, 0.0), Error);
  CHECK_THROWS_AS(bessel_k_scaled(2, -1.0), Error);
  CHECK_THROWS_AS(bessel_i_scaled(1, std::nan("")), Error);
  CHECK_THROWS_AS(bessel_i_scaled(kMaxBesselOrder + 1, 1.0), Error);
  try {
    bessel_k_scaled(0, -3.0);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.name() == "BesselDomain");
    CHECK(e.kind() == ErrorKind::InvalidInput);
  }
}
