// Copyright (c) 2026 The casec authors
// SPDX-License-Identifier: Apache-2.0

#include "casec/geometry.hpp"

#include <cmath>
#include <numbers>

#include "casec/energy.hpp"
#include "casec/errors.hpp"
#include "casec/specfun.hpp"

namespace casec {

namespace {
constexpr double kPi4 = 97.409091034002437236;  // pi^4
}

Geometry validate(const Geometry& g) {
  if (!std::isfinite(g.alpha) || g.alpha <= 1.0)
    throw_invalid("InvalidRadiusRatio", "alpha = b/a must be > 1");
  if (!std::isfinite(g.delta) || g.delta < 0.0)
    throw_invalid("InvalidEccentricity", "delta = eps/a must be >= 0");
  // the 1e-12 margin keeps float-literal inputs like (1.1, 0.1) on the
  // touching side despite alpha - 1 rounding slightly above delta
  if (g.delta >= (g.alpha - 1.0) * (1.0 - 1e-12))
    throw_invalid("GeometryOverlap", "need delta < alpha - 1 (cylinders must not touch)");
  if (g.radius_a && !(*g.radius_a > 0.0))
    throw_invalid("InvalidPhysicalScale", "radius_a must be positive");
  if (g.length && !(*g.length > 0.0))
    throw_invalid("InvalidPhysicalScale", "length must be positive");
  return g;
}

CylinderPlaneGeometry validate(const CylinderPlaneGeometry& g) {
  if (!std::isfinite(g.h_over_a) || g.h_over_a <= 1.0)
    throw_invalid("InvalidRadiusRatio", "h_over_a must be > 1 (cylinder clear of the plane)");
  return g;
}

double pfa_eccentric_delta_e(const Geometry& g_in, Channel channel) {
  const Geometry g = validate(g_in);
  const double em = -(kPi4 / 30.0) * g.delta * g.delta / std::pow(g.alpha - 1.0, 5);
  return channel == Channel::EM ? em : 0.5 * em;
}

double pfa_concentric_energy(const Geometry& g_in) {
  const Geometry g = validate(g_in);
  return -(kPi4 / 90.0) / std::pow(g.alpha - 1.0, 3);
}

double asymptotic_ratio_constant() {
  static const double c = [] {
    NumericsPolicy policy;
    policy.rel_tol = 1e-8;
    policy.quad_order = 24;
    auto f = [](double b) {
      if (b <= 0.0) return 0.0;
      const auto i = bessel_i_scaled_array(1, b);
      const auto k = bessel_k_scaled_array(1, b);
      // K_n/I_n = e^{-2b} kbar_n/ibar_n
      const double ratios = (k[0] / i[0]).to_double() + (k[1] / i[1]).to_double();
      return b * b * b * std::exp(-2.0 * b) * ratios;
    };
    return integrate(f, policy, 2.0).value;
  }();
  return c;
}

double asymptotic_delta_e(const Geometry& g_in) {
  if (g_in.alpha == 1.0)
    throw_invalid("AsymptoticUndefined", "log(alpha) vanishes at alpha = 1");
  const Geometry g = validate(g_in);
  const double a4 = g.alpha * g.alpha * g.alpha * g.alpha;
  return -asymptotic_ratio_constant() * g.delta * g.delta / (2.0 * a4 * std::log(g.alpha));
}

double to_physical(EnergyUnit reduced, const Geometry& g_in) {
  const Geometry g = validate(g_in);
  if (!g.radius_a || !g.length)
    throw_invalid("MissingPhysicalScale", "joule output needs both radius_a and length");
  const double a = *g.radius_a;
  return reduced.reduced * kHBarC * *g.length / (4.0 * std::numbers::pi * a * a);
}

}  // namespace casec
