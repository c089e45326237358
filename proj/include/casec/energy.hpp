// Copyright (c) 2026 The casec authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "casec/geometry.hpp"
#include "casec/kernel.hpp"

namespace casec {

/// Truncation and quadrature controls shared by all energy evaluations.
struct NumericsPolicy {
  double rel_tol = 1e-6;        // target relative accuracy of the energy
  int initial_order_cut = 0;    // 0 = auto: ceil(8 + 4/(alpha-1))
  int max_order_cut = 1024;     // escalation cap
  double beta_max_factor = 30.0;  // integration cutoff beta_max = factor/decay_scale
  int max_panels = 4000;
  int quad_order = 16;          // Gauss-Legendre nodes per panel
};

void validate(const NumericsPolicy& p);

struct EnergyDiagnostics {
  int order_cut = 0;
  int inner_cut = 0;
  int panels = 0;
  std::vector<std::string> flags;
};

/// TE, TM and EM = TE + TM energies in units of E0 = hbar c L / (4 pi a^2).
/// em == tm + te by construction.
struct PolarizedEnergy {
  double tm = 0.0;
  double te = 0.0;
  double em = 0.0;
  double err_estimate = 0.0;
  EnergyDiagnostics diagnostics;
};

struct QuadratureResult {
  double value = 0.0;
  double err = 0.0;
  int panels = 0;
};

/// Integral of f over (0, inf) for integrands decaying like exp(-decay_scale*beta):
/// adaptive bisection of Gauss-Legendre panels on (0, beta_max], beta_max =
/// beta_max_factor/decay_scale, with the tail beyond beta_max estimated from
/// the last panel and decay_scale and charged to err. The rule is open: f is
/// never evaluated at 0. Throws QuadratureNotConverged when max_panels is
/// reached with err > rel_tol*|value|.
QuadratureResult integrate(const std::function<double(double)>& f, const NumericsPolicy& policy,
                           double decay_scale);

/// Exact interaction energy of eccentric cylinders (delta may be 0):
/// E/E0 = int_0^inf db b [ln det(I-A^TM) + ln det(I-A^TE)], with the
/// truncation order escalated until the energy is stable to rel_tol.
PolarizedEnergy exact_energy(const Geometry& g, const NumericsPolicy& policy);

/// Concentric (delta = 0) energy through the diagonal factors:
/// E/E0 = int db b sum_n ln(1 - D^cc_n). Oracle path for exact_energy.
PolarizedEnergy concentric_energy(double alpha, const NumericsPolicy& policy);

/// Small-eccentricity energy difference per unit delta^2:
/// dE/E0/delta^2 = -sum_n int db b^3 [1/(1-D^cc_n)] [D_n + N_n/(1-D^cc_{n+1})]
/// (primed functions for TE), n-sum truncated adaptively.
PolarizedEnergy perturbative_delta_e(double alpha, const NumericsPolicy& policy);

/// Cylinder-plane interaction energy in the same reduced units.
PolarizedEnergy cylinder_plane_energy(const CylinderPlaneGeometry& g, const NumericsPolicy& policy);

}  // namespace casec
