// Copyright (c) 2026 The casec authors
// SPDX-License-Identifier: Apache-2.0

#include "casec/kernel.hpp"

#include <cmath>
#include <string>

#include "casec/errors.hpp"
#include "casec/simd/kernels.hpp"
#include "casec/specfun.hpp"

namespace casec {

namespace {

void check_beta(double beta) {
  if (!std::isfinite(beta) || beta <= 0.0)
    throw_invalid("BesselDomain", "beta must be positive and finite");
}

// Row prefactor ratios t_n at argument beta, as positive scaled values:
// TM: I_n/K_n; TE: |I'_n/K'_n| (K'_n < 0, the sign cancels against the
// equally negative column ratio).
std::vector<ScaledReal> row_ratios(Polarization pol, double beta, int n_max) {
  std::vector<ScaledReal> out(static_cast<size_t>(n_max) + 1);
  if (pol == Polarization::TM) {
    auto i = bessel_i_scaled_array(n_max, beta);
    auto k = bessel_k_scaled_array(n_max, beta);
    for (int n = 0; n <= n_max; ++n) out[n] = i[n] / k[n];
  } else {
    auto i = bessel_i_scaled_array(n_max + 1, beta);
    auto k = bessel_k_scaled_array(n_max + 1, beta);
    for (int n = 0; n <= n_max; ++n)
      out[n] = bessel_i_prime_at(i, n) / bessel_k_prime_mag_at(k, n);
  }
  return out;
}

// Column ratios at the outer argument: TM: K_m/I_m; TE: |K'_m/I'_m|.
std::vector<ScaledReal> col_ratios(Polarization pol, double x, int m_max) {
  std::vector<ScaledReal> out(static_cast<size_t>(m_max) + 1);
  if (pol == Polarization::TM) {
    auto i = bessel_i_scaled_array(m_max, x);
    auto k = bessel_k_scaled_array(m_max, x);
    for (int m = 0; m <= m_max; ++m) out[m] = k[m] / i[m];
  } else {
    auto i = bessel_i_scaled_array(m_max + 1, x);
    auto k = bessel_k_scaled_array(m_max + 1, x);
    for (int m = 0; m <= m_max; ++m)
      out[m] = bessel_k_prime_mag_at(k, m) / bessel_i_prime_at(i, m);
  }
  return out;
}

void check_entries_finite(const ModeMatrix& m) {
  for (double v : m.a)
    if (!std::isfinite(v))
      throw_not_converged("KernelOverflow",
                          "non-finite mode-matrix entry at beta=" + std::to_string(m.beta));
}

}  // namespace

ModeMatrix build_eccentric(Polarization pol, const Geometry& g_in, double beta, int order_cut,
                           int inner_cut) {
  const Geometry g = validate(g_in);
  check_beta(beta);
  if (order_cut < 0 || inner_cut < order_cut)
    throw_invalid("BadTruncation", "need inner_cut >= order_cut >= 0");

  const int n_cut = order_cut, m_cut = inner_cut;
  const int dim = 2 * n_cut + 1, mdim = 2 * m_cut + 1;
  ModeMatrix mm;
  mm.pol = pol;
  mm.beta = beta;
  mm.order_cut = n_cut;
  mm.inner_cut = m_cut;

  const auto p_row = row_ratios(pol, beta, n_cut);
  const auto c_col = col_ratios(pol, g.alpha * beta, m_cut);

  // Every entry is t_n * sum_m c_m I_{m-n}(bd) I_{m-p}(bd) times the global
  // exponential left over after scaling: e^{2b} from t, e^{-2ab} from c and
  // e^{2bd} from the two I factors, i.e. exp(-2b(alpha-1-delta)). At delta=0
  // the I factors degenerate to Kronecker deltas and carry no exponential.
  const double gap_exponent =
      g.delta > 0.0 ? -2.0 * beta * (g.alpha - 1.0 - g.delta) : -2.0 * beta * (g.alpha - 1.0);
  const ScaledReal gap = ScaledReal::from_exp(gap_exponent);

  std::vector<ScaledReal> row_f(static_cast<size_t>(n_cut) + 1);
  for (int n = 0; n <= n_cut; ++n) row_f[n] = sqrt(gap * p_row[n]);
  std::vector<ScaledReal> col_f(static_cast<size_t>(m_cut) + 1);
  for (int m = 0; m <= m_cut; ++m) col_f[m] = sqrt(c_col[m]);

  // W[n][m] = sqrt(gap t_n) sqrt(c_m) I_{m-n}(bd); then A~ = W W^T. Each W
  // entry is one term of the positive sum A~_nn < 1, hence itself < 1.
  std::vector<double> w(static_cast<size_t>(dim) * mdim, 0.0);
  if (g.delta > 0.0) {
    const auto v = bessel_i_scaled_array(n_cut + m_cut, beta * g.delta);
    for (int n = -n_cut; n <= n_cut; ++n) {
      double* wr = w.data() + static_cast<size_t>(n + n_cut) * mdim;
      for (int m = -m_cut; m <= m_cut; ++m)
        wr[m + m_cut] = (row_f[std::abs(n)] * col_f[std::abs(m)] * v[std::abs(m - n)]).to_double();
    }
  } else {
    for (int n = -n_cut; n <= n_cut; ++n)
      w[static_cast<size_t>(n + n_cut) * mdim + (n + m_cut)] =
          (row_f[std::abs(n)] * col_f[std::abs(n)]).to_double();
  }

  // Last |m|-shell weight relative to the diagonal sum, per row.
  for (int i = 0; i < dim && !mm.inner_insufficient; ++i) {
    const double* wr = w.data() + static_cast<size_t>(i) * mdim;
    double row2 = 0.0;
    for (int j = 0; j < mdim; ++j) row2 += wr[j] * wr[j];
    const double tail2 = wr[0] * wr[0] + wr[mdim - 1] * wr[mdim - 1];
    if (row2 > 0.0 && tail2 >= 1e-14 * row2) mm.inner_insufficient = true;
  }

  mm.a.resize(static_cast<size_t>(dim) * dim);
  simd::active_kernels().gram_wwt(w.data(), dim, mdim, mm.a.data());
  check_entries_finite(mm);
  return mm;
}

ModeMatrix build_cylinder_plane(Polarization pol, const CylinderPlaneGeometry& g_in, double beta,
                                int order_cut) {
  const CylinderPlaneGeometry g = validate(g_in);
  check_beta(beta);
  if (order_cut < 0) throw_invalid("BadTruncation", "need order_cut >= 0");

  const int n_cut = order_cut, dim = 2 * n_cut + 1;
  ModeMatrix mm;
  mm.pol = pol;
  mm.beta = beta;
  mm.order_cut = n_cut;
  mm.inner_cut = n_cut;

  const auto p_row = row_ratios(pol, beta, n_cut);
  const auto k2h = bessel_k_scaled_array(2 * n_cut, 2.0 * beta * g.h_over_a);
  // t_n carries e^{2b}, K_{n+p}(2bH/a) carries e^{-2bH/a}
  const ScaledReal gap = ScaledReal::from_exp(-2.0 * beta * (g.h_over_a - 1.0));

  std::vector<ScaledReal> row_f(static_cast<size_t>(n_cut) + 1);
  for (int n = 0; n <= n_cut; ++n) row_f[n] = sqrt(gap * p_row[n]);

  mm.a.resize(static_cast<size_t>(dim) * dim);
  for (int n = -n_cut; n <= n_cut; ++n)
    for (int p = -n_cut; p <= n_cut; ++p)
      mm.a[static_cast<size_t>(n + n_cut) * dim + (p + n_cut)] =
          (row_f[std::abs(n)] * row_f[std::abs(p)] * k2h[std::abs(n + p)]).to_double();
  check_entries_finite(mm);
  return mm;
}

double log_det_i_minus_a(const ModeMatrix& m) {
  const int n = m.dim();
  std::vector<double> b(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      b[static_cast<size_t>(i) * n + j] =
          (i == j ? 1.0 : 0.0) - m.a[static_cast<size_t>(i) * n + j];

  double log_abs = 0.0;
  int sign = 0;
  const bool ok = simd::active_kernels().lu_logdet(b.data(), n, &log_abs, &sign);
  if (!ok || sign < 0)
    throw_not_converged("NonPositiveDeterminant",
                        "det(I-A) <= 0 at beta=" + std::to_string(m.beta) +
                            ", order_cut=" + std::to_string(m.order_cut) +
                            (m.pol == Polarization::TM ? " (TM)" : " (TE)"));
  return log_abs;
}

std::vector<double> concentric_diagonal(Polarization pol, double alpha, double beta, int n_max) {
  if (!(alpha > 1.0) || !std::isfinite(alpha))
    throw_invalid("InvalidRadiusRatio", "alpha must be > 1");
  check_beta(beta);
  const auto p_row = row_ratios(pol, beta, n_max);
  const auto c_col = col_ratios(pol, alpha * beta, n_max);
  const ScaledReal gap = ScaledReal::from_exp(-2.0 * beta * (alpha - 1.0));
  std::vector<double> d(static_cast<size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) d[n] = (gap * p_row[n] * c_col[n]).to_double();
  return d;
}

double addition_theorem_residual(double x, double h, int n, int p, int inner_cut, SumKind kind) {
  if (!(x > 0.0) || !(h > 0.0) || !std::isfinite(x) || !std::isfinite(h))
    throw_invalid("BesselDomain", "addition_theorem_residual: x and h must be positive");
  if (inner_cut < 0) throw_invalid("BadTruncation", "inner_cut must be >= 0");

  const Polarization pol = kind == SumKind::Unprimed ? Polarization::TM : Polarization::TE;
  const auto c = col_ratios(pol, x + h, inner_cut);
  const auto iv = bessel_i_scaled_array(inner_cut + std::max(std::abs(n), std::abs(p)), x);
  const auto k2h = bessel_k_scaled_array(std::abs(n + p), 2.0 * h);

  // Terms carry e^{-2(x+h)} e^{2x} = e^{-2h}; the target K_{n+p}(2h) carries
  // the same factor through its e^{+2h} scaling, so both sides are compared
  // on the e^{+2h}-scaled level and the factor drops out.
  ScaledReal acc;
  for (int m = -inner_cut; m <= inner_cut; ++m)
    acc += c[std::abs(m)] * iv[std::abs(m - n)] * iv[std::abs(m - p)];
  // The primed sum approximates -K_{n+p}(2h); accumulating with |K'/I'|
  // flips it positive, so both kinds compare against +K.
  const ScaledReal target = k2h[std::abs(n + p)];
  return std::fabs(((acc + -target) / target).to_double());
}

}  // namespace casec
