// Copyright (c) 2026 The casec authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace casec {

/// Floating-point value with a wide power-of-two exponent: value = frac * 2^exp2.
/// frac is either 0 or has magnitude in [0.5, 1), so products of modified Bessel
/// functions with |log value| up to ~1e18 stay representable. Used for all kernel
/// assembly so that exponential under/overflow is impossible; conversion to plain
/// double happens only for final, order-1 quantities.
struct ScaledReal {
  double frac = 0.0;
  std::int64_t exp2 = 0;

  static ScaledReal from(double v) {
    ScaledReal r;
    if (v == 0.0) return r;
    int e = 0;
    r.frac = std::frexp(v, &e);
    r.exp2 = e;
    return r;
  }

  static ScaledReal from(double v, std::int64_t extra_exp2) {
    ScaledReal r = from(v);
    if (r.frac != 0.0) r.exp2 += extra_exp2;
    return r;
  }

  /// exp(x) for arbitrary |x|, without overflow. x is reduced against a
  /// hi/lo split of ln 2 so the result keeps full double precision.
  static ScaledReal from_exp(double x) {
    // bit-split of ln 2 (fdlibm constants)
    constexpr double kLn2Hi = 6.93147180369123816490e-01;
    constexpr double kLn2Lo = 1.90821492927058770002e-10;
    double k = std::nearbyint(x / (kLn2Hi + kLn2Lo));
    double r = (x - k * kLn2Hi) - k * kLn2Lo;
    return from(std::exp(r), static_cast<std::int64_t>(k));
  }

  bool is_zero() const { return frac == 0.0; }

  double to_double() const {
    if (frac == 0.0) return 0.0;
    // ldexp saturates to 0 / +-inf outside the double range
    int e = static_cast<int>(std::min<std::int64_t>(std::max<std::int64_t>(exp2, -5000), 5000));
    return std::ldexp(frac, e);
  }

  /// ln |value|; requires frac != 0.
  double log() const { return std::log(std::fabs(frac)) + static_cast<double>(exp2) * 6.93147180559945286e-01; }

  friend ScaledReal operator*(ScaledReal a, ScaledReal b) {
    ScaledReal r;
    r.frac = a.frac * b.frac;  // in +-[0.25, 1)
    if (r.frac == 0.0) return r;
    r.exp2 = a.exp2 + b.exp2;
    if (std::fabs(r.frac) < 0.5) {
      r.frac *= 2.0;
      r.exp2 -= 1;
    }
    return r;
  }

  friend ScaledReal operator/(ScaledReal a, ScaledReal b) {
    ScaledReal r;
    r.frac = a.frac / b.frac;  // in +-(0.5, 2)
    if (r.frac == 0.0) return r;
    r.exp2 = a.exp2 - b.exp2;
    if (std::fabs(r.frac) >= 1.0) {
      r.frac *= 0.5;
      r.exp2 += 1;
    }
    return r;
  }

  ScaledReal& operator+=(ScaledReal b) {
    if (b.frac == 0.0) return *this;
    if (frac == 0.0) {
      *this = b;
      return *this;
    }
    std::int64_t d = b.exp2 - exp2;
    if (d < -120) return *this;  // addend below one ulp
    if (d > 120) {
      *this = b;
      return *this;
    }
    double f = frac + std::ldexp(b.frac, static_cast<int>(d));
    std::int64_t e = exp2;
    *this = from(f);
    if (frac != 0.0) exp2 += e;
    return *this;
  }

  friend ScaledReal operator+(ScaledReal a, ScaledReal b) {
    a += b;
    return a;
  }

  ScaledReal operator-() const {
    ScaledReal r = *this;
    r.frac = -r.frac;
    return r;
  }

  friend ScaledReal sqrt(ScaledReal a) {
    if (a.frac == 0.0) return a;
    double f = a.frac;
    std::int64_t e = a.exp2;
    if (e & 1) {
      f *= 2.0;  // [1, 2)
      e -= 1;
    }
    ScaledReal r = from(std::sqrt(f));
    r.exp2 += e / 2;
    return r;
  }
};

}  // namespace casec
