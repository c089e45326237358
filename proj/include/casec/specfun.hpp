// Copyright (c) 2026 The casec authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "casec/scaled_real.hpp"

namespace casec {

/// Largest Bessel order accepted by the evaluation routines.
inline constexpr int kMaxBesselOrder = 100000;

/// Exponentially scaled modified Bessel pair at integer order.
/// Negative orders fold exactly onto |n| (I_{-n} = I_n, K_{-n} = K_n).
struct ScaledBessel {
  int order = 0;
  double argument = 0.0;
  ScaledReal i_scaled;  // e^{-x} I_n(x)
  ScaledReal k_scaled;  // e^{+x} K_n(x)

  double i() const { return i_scaled.to_double(); }
  double k() const { return k_scaled.to_double(); }
  /// I_n(x) K_n(x); the exponential factors cancel, so this is finite for
  /// every admissible (n, x) even when the scaled factors are not
  /// representable as plain doubles.
  double ik_product() const { return (i_scaled * k_scaled).to_double(); }
};

/// e^{-x} I_n(x) for n = 0..n_max, by Miller downward recurrence with the
/// e^x = I_0 + 2 sum_k I_k normalization.
std::vector<ScaledReal> bessel_i_scaled_array(int n_max, double x);

/// e^{+x} K_n(x) for n = 0..n_max, by stable upward recurrence off K_0, K_1
/// seeds (Temme-style series for x < 2, Steed continued fraction above).
std::vector<ScaledReal> bessel_k_scaled_array(int n_max, double x);

/// e^{-x} I'_n(x) from an i-array: (i[n-1] + i[n+1]) / 2, and i[1] at n = 0.
/// Requires n + 1 < i.size().
ScaledReal bessel_i_prime_at(std::span<const ScaledReal> i, int n);

/// |e^{+x} K'_n(x)| from a k-array: (k[n-1] + k[n+1]) / 2, and k[1] at n = 0.
/// K'_n itself is always negative.
ScaledReal bessel_k_prime_mag_at(std::span<const ScaledReal> k, int n);

// Scalar entry points (plain doubles; saturate only where the mathematical
// value itself leaves the double range).
double bessel_i_scaled(int n, double x);
double bessel_k_scaled(int n, double x);
double bessel_i_prime_scaled(int n, double x);
double bessel_k_prime_scaled(int n, double x);  // < 0

ScaledBessel scaled_bessel(int n, double x);

}  // namespace casec
