// Copyright (c) 2026 The casec authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "casec/geometry.hpp"

namespace casec {

enum class Polarization { TM, TE };

/// Truncated mode matrix for one polarization at one dimensionless imaginary
/// frequency beta. Entries are stored after the determinant-preserving
/// similarity transform by diag(sqrt(t_n)) (t_n the row prefactor), which
/// symmetrizes the matrix and keeps every entry order-1; diagonal entries and
/// det(I - A) are unchanged by the transform.
struct ModeMatrix {
  Polarization pol = Polarization::TM;
  double beta = 0.0;
  int order_cut = 0;   // N: row/col indices n, p in [-N, N]
  int inner_cut = 0;   // M: inner sum |m| <= M (eccentric case)
  bool inner_insufficient = false;  // last |m|-shell weight >= 1e-14
  std::vector<double> a;            // (2N+1)^2 row-major

  int dim() const { return 2 * order_cut + 1; }
  double entry(int n, int p) const {
    return a[static_cast<size_t>(n + order_cut) * dim() + (p + order_cut)];
  }
};

/// A^pol_np for eccentric cylinders at imaginary frequency beta:
///   A^TM_np = I_n(b)/K_n(b) sum_m K_m(ab)/I_m(ab) I_{m-n}(bd) I_{m-p}(bd)
/// and the primed analogue for TE (inner I factors stay unprimed). Assembled
/// from exponentially scaled Bessel arrays with all scaling exponents
/// combined analytically; requires inner_cut >= order_cut.
ModeMatrix build_eccentric(Polarization pol, const Geometry& g, double beta, int order_cut,
                           int inner_cut);

/// Cylinder-plane limit matrix:
///   A^TM_np = I_n(b)/K_n(b) K_{n+p}(2 b H/a),  A^TE_np = -I'_n/K'_n K_{n+p}(2 b H/a).
/// (K'_n < 0, so TE entries come out positive.)
ModeMatrix build_cylinder_plane(Polarization pol, const CylinderPlaneGeometry& g, double beta,
                                int order_cut);

/// ln det(I - A) via partial-pivot LU, summing logs of pivot magnitudes with
/// the sign tracked through the permutation parity. det <= 0 signals a
/// truncation or input problem and throws NonPositiveDeterminant. For valid
/// inputs det is in (0, 1] and the result is <= 0.
double log_det_i_minus_a(const ModeMatrix& m);

/// Diagonal concentric factors D^cc_n(beta) = I_n(b) K_n(ab) / (K_n(b) I_n(ab))
/// for n = 0..n_max (primed functions for TE). Each value lies in (0, 1).
std::vector<double> concentric_diagonal(Polarization pol, double alpha, double beta, int n_max);

enum class SumKind { Unprimed, Primed };

/// Relative deviation of the displaced-wave sum from its large-x limit:
///   | sum_{|m|<=inner_cut} K_m(x+h)/I_m(x+h) I_{n-m}(x) I_{p-m}(x) -+ K_{n+p}(2h) | / K_{n+p}(2h)
/// (primed ratio K'_m/I'_m for SumKind::Primed, whose limit is -K_{n+p}(2h)).
double addition_theorem_residual(double x, double h, int n, int p, int inner_cut, SumKind kind);

}  // namespace casec
