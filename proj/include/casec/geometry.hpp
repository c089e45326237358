// Copyright (c) 2026 The casec authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>

namespace casec {

/// CODATA hbar*c in J*m.
inline constexpr double kHBarC = 3.16152677e-26;

/// Dimensionless eccentric-cylinder configuration: inner radius a, outer
/// radius b = alpha*a, axis offset eps = delta*a. Optional physical scales
/// (meters) enable conversion of reduced energies to joules.
struct Geometry {
  double alpha = 0.0;  // b/a, must be > 1
  double delta = 0.0;  // eps/a, in [0, alpha-1)
  std::optional<double> radius_a;  // a in meters
  std::optional<double> length;    // L in meters
};

/// Cylinder in front of a plane, axis-to-plane distance H in units of a.
struct CylinderPlaneGeometry {
  double h_over_a = 0.0;  // must be > 1
};

/// Energy in reduced units E0 = hbar c L / (4 pi a^2).
struct EnergyUnit {
  double reduced = 0.0;
};

enum class Channel { TM, TE, EM };

/// Returns the geometry unchanged if all invariants hold, else throws
/// InvalidRadiusRatio / InvalidEccentricity / GeometryOverlap.
Geometry validate(const Geometry& g);
CylinderPlaneGeometry validate(const CylinderPlaneGeometry& g);

/// Leading-order proximity-force energy difference between the eccentric and
/// concentric configurations, in units of E0:
///   EM: -(pi^4/30) delta^2 / (alpha-1)^5, TM = TE = EM/2.
/// Meaningful for alpha -> 1 and delta << 1.
double pfa_eccentric_delta_e(const Geometry& g, Channel channel);

/// Proximity-force concentric energy -(pi^4/90)/(alpha-1)^3 in units of E0.
double pfa_concentric_energy(const Geometry& g);

/// Large-radius-ratio energy difference -C delta^2 / (2 alpha^4 ln alpha) in
/// units of E0, valid for ln alpha >> 1. C is evaluated once by quadrature
/// (see asymptotic_ratio_constant) rather than hard-coded.
double asymptotic_delta_e(const Geometry& g);

/// C = int_0^inf db b^3 [K_0(b)/I_0(b) + K_1(b)/I_1(b)]  (~ 3.3348),
/// computed on first use and cached.
double asymptotic_ratio_constant();

/// Reduced -> joules; requires both radius_a and length.
double to_physical(EnergyUnit reduced, const Geometry& g);

}  // namespace casec
