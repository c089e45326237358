// Copyright (c) 2026 The casec authors
// SPDX-License-Identifier: Apache-2.0

#include "casec/specfun.hpp"

#include <cmath>
#include <cstdlib>

#include "casec/errors.hpp"

namespace casec {

namespace {

constexpr double kEulerGamma = 0.57721566490153286061;

void check_argument(const char* who, int n, double x) {
  if (!std::isfinite(x) || x <= 0.0)
    throw_invalid("BesselDomain", std::string(who) + ": argument must be positive and finite");
  if (std::abs(n) > kMaxBesselOrder)
    throw_invalid("BesselDomain", std::string(who) + ": order beyond supported maximum");
}

// Downward-recurrence start order: high enough above max(n_max, x) that the
// admixed growing solution is damped below double precision by the time the
// recurrence reaches the requested orders.
int miller_start(int n_max, double x) {
  const double k = std::max(static_cast<double>(n_max), x);
  return static_cast<int>(std::ceil(k + 6.0 * std::sqrt(k + 1.0))) + 20;
}

// K_0 and K_1 scaled by e^x, for x < 2: ascending series for K_0
// (A&S 9.6.13), then K_1 from the Wronskian I_0 K_1 + I_1 K_0 = 1/x,
// which loses no precision on this range (I_1 K_0 < 1/(2x) there).
void k01_seed_series(double x, double* k0e, double* k1e) {
  const double q = 0.25 * x * x;
  const double lg = std::log(0.5 * x) + kEulerGamma;
  double t = 1.0, i0 = 1.0, h = 0.0, s0 = 0.0;
  double u = 0.5 * x, i1 = u;
  for (int k = 1; k < 80; ++k) {
    const double dk = k;
    t *= q / (dk * dk);
    h += 1.0 / dk;
    i0 += t;
    s0 += t * h;
    u *= q / (dk * (dk + 1.0));
    i1 += u;
    if (t < 1e-18 * i0) break;
  }
  const double k0 = -lg * i0 + s0;
  const double k1 = (1.0 / x - i1 * k0) / i0;
  const double ex = std::exp(x);
  *k0e = k0 * ex;
  *k1e = k1 * ex;
}

// K_0 and K_1 scaled by e^x via Steed's continued fraction (CF2), for x >= 2.
void k01_seed_cf2(double x, double* k0e, double* k1e) {
  constexpr double kEps = 1e-16;
  constexpr int kMaxIt = 10000;
  const double a1 = 0.25;  // 1/4 - mu^2 at mu = 0
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d, delh = d;
  double q1 = 0.0, q2 = 1.0;
  double q = a1, c = a1, a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 2; i <= kMaxIt; ++i) {
    a -= 2.0 * (i - 1);
    c = -a * c / i;
    double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    double dels = q * delh;
    s += dels;
    if (std::fabs(dels / s) < kEps) break;
  }
  h = a1 * h;
  const double k0 = std::sqrt(M_PI / (2.0 * x)) / s;  // e^x K_0(x)
  *k0e = k0;
  *k1e = k0 * (x + 0.5 - h) / x;
}

}  // namespace

std::vector<ScaledReal> bessel_i_scaled_array(int n_max, double x) {
  check_argument("bessel_i_scaled_array", n_max, x);
  const int m0 = miller_start(n_max, x);
  std::vector<ScaledReal> out(static_cast<size_t>(n_max) + 1);

  // Raw downward recurrence in doubles; rescale by 2^-512 whenever the
  // iterate grows past 2^512, tracking the epoch of each stored value.
  constexpr double kBig = 0x1p512;
  constexpr std::int64_t kShift = 512;
  std::vector<double> raw(static_cast<size_t>(n_max) + 1, 0.0);
  std::vector<std::int32_t> epoch(static_cast<size_t>(n_max) + 1, 0);
  std::int32_t epochs = 0;

  double fkp1 = 0.0, fk = 1.0;
  ScaledReal norm;  // f_0 + 2 sum_{k>=1} f_k  ( = c * e^x )
  if (m0 <= n_max) {
    raw[m0] = fk;
    epoch[m0] = epochs;
  }
  for (int k = m0; k >= 1; --k) {
    double fkm1 = fkp1 + (2.0 * k / x) * fk;
    norm += ScaledReal::from(2.0 * fk, kShift * epochs);
    if (k - 1 <= n_max) {
      raw[k - 1] = fkm1;
      epoch[k - 1] = epochs;
    }
    fkp1 = fk;
    fk = fkm1;
    if (std::fabs(fk) > kBig) {
      fk *= 0x1p-512;
      fkp1 *= 0x1p-512;
      ++epochs;
      // values already stored keep their epoch tag
    }
  }
  norm += ScaledReal::from(fk, kShift * epochs);

  for (int n = 0; n <= n_max; ++n)
    out[n] = ScaledReal::from(raw[n], kShift * static_cast<std::int64_t>(epoch[n])) / norm;
  return out;
}

std::vector<ScaledReal> bessel_k_scaled_array(int n_max, double x) {
  check_argument("bessel_k_scaled_array", n_max, x);
  double k0e = 0.0, k1e = 0.0;
  if (x < 2.0)
    k01_seed_series(x, &k0e, &k1e);
  else
    k01_seed_cf2(x, &k0e, &k1e);

  std::vector<ScaledReal> out(static_cast<size_t>(n_max) + 1);
  out[0] = ScaledReal::from(k0e);
  if (n_max >= 1) out[1] = ScaledReal::from(k1e);

  // Upward recurrence (dominant solution, stable), rescaled in doubles.
  constexpr double kBig = 0x1p512;
  constexpr std::int64_t kShift = 512;
  double km1 = k0e, kk = k1e;
  std::int64_t ep = 0;
  for (int n = 1; n < n_max; ++n) {
    double kp1 = km1 + (2.0 * n / x) * kk;
    km1 = kk;
    kk = kp1;
    if (kk > kBig) {
      kk *= 0x1p-512;
      km1 *= 0x1p-512;
      ep += kShift;
    }
    out[n + 1] = ScaledReal::from(kk, ep);
  }
  return out;
}

ScaledReal bessel_i_prime_at(std::span<const ScaledReal> i, int n) {
  if (n == 0) return i[1];
  ScaledReal s = i[n - 1] + i[n + 1];
  s.exp2 -= 1;
  return s;
}

ScaledReal bessel_k_prime_mag_at(std::span<const ScaledReal> k, int n) {
  if (n == 0) return k[1];
  ScaledReal s = k[n - 1] + k[n + 1];
  s.exp2 -= 1;
  return s;
}

double bessel_i_scaled(int n, double x) {
  check_argument("bessel_i_scaled", n, x);
  return bessel_i_scaled_array(std::abs(n), x).back().to_double();
}

double bessel_k_scaled(int n, double x) {
  check_argument("bessel_k_scaled", n, x);
  return bessel_k_scaled_array(std::abs(n), x).back().to_double();
}

double bessel_i_prime_scaled(int n, double x) {
  check_argument("bessel_i_prime_scaled", n, x);
  const int m = std::abs(n);
  auto i = bessel_i_scaled_array(m + 1, x);
  return bessel_i_prime_at(i, m).to_double();
}

double bessel_k_prime_scaled(int n, double x) {
  check_argument("bessel_k_prime_scaled", n, x);
  const int m = std::abs(n);
  auto k = bessel_k_scaled_array(m + 1, x);
  return -bessel_k_prime_mag_at(k, m).to_double();
}

ScaledBessel scaled_bessel(int n, double x) {
  check_argument("scaled_bessel", n, x);
  const int m = std::abs(n);
  ScaledBessel out;
  out.order = m;
  out.argument = x;
  out.i_scaled = bessel_i_scaled_array(m, x).back();
  out.k_scaled = bessel_k_scaled_array(m, x).back();
  return out;
}

}  // namespace casec
