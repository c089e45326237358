// Copyright (c) 2026 The casec authors
// SPDX-License-Identifier: Apache-2.0

#include "casec/energy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "casec/errors.hpp"
#include "casec/specfun.hpp"

namespace casec {

namespace {

struct GaussLegendre {
  std::vector<double> node;    // on (-1, 1), ascending
  std::vector<double> weight;
};

// Nodes by Newton iteration on P_q; weights 2/((1-x^2) P'_q(x)^2).
GaussLegendre gauss_legendre(int q) {
  GaussLegendre r;
  r.node.resize(q);
  r.weight.resize(q);
  const int half = (q + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (q + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= q; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * x * p2 - (j - 1.0) * p3) / j;
      }
      dp = q * (x * p1 - p2) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    r.node[i] = -x;
    r.node[q - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.weight[i] = w;
    r.weight[q - 1 - i] = w;
  }
  return r;
}

struct Panel {
  double a = 0.0, b = 0.0;
  double value = 0.0;
  double err = 0.0;
};

double eval_panel(const std::function<double(double)>& f, const GaussLegendre& gl, double a,
                  double b) {
  const double mid = 0.5 * (a + b), hw = 0.5 * (b - a);
  double acc = 0.0;
  for (size_t i = 0; i < gl.node.size(); ++i) acc += gl.weight[i] * f(mid + hw * gl.node[i]);
  return acc * hw;
}

// max-heap ordering with a deterministic tie-break on the left endpoint
bool panel_less(const Panel& x, const Panel& y) {
  if (x.err != y.err) return x.err < y.err;
  return x.a > y.a;
}

}  // namespace

void validate(const NumericsPolicy& p) {
  if (!(p.rel_tol > 0.0) || p.rel_tol > 1e-2)
    throw_invalid("InvalidPolicy", "rel_tol must lie in (0, 1e-2]");
  if (p.initial_order_cut < 0 || p.max_order_cut < std::max(p.initial_order_cut, 1))
    throw_invalid("InvalidPolicy", "need max_order_cut >= initial_order_cut >= 0");
  if (!(p.beta_max_factor > 0.0) || !std::isfinite(p.beta_max_factor))
    throw_invalid("InvalidPolicy", "beta_max_factor must be positive");
  if (p.max_panels < 4) throw_invalid("InvalidPolicy", "max_panels must be >= 4");
  if (p.quad_order < 2 || p.quad_order > 64)
    throw_invalid("InvalidPolicy", "quad_order must lie in [2, 64]");
}

QuadratureResult integrate(const std::function<double(double)>& f, const NumericsPolicy& policy,
                           double decay_scale) {
  validate(policy);
  if (!(decay_scale > 0.0) || !std::isfinite(decay_scale))
    throw_invalid("InvalidPolicy", "decay_scale must be positive");
  const double bmax = policy.beta_max_factor / decay_scale;
  const GaussLegendre gl = gauss_legendre(policy.quad_order);

  std::vector<Panel> heap;
  heap.reserve(256);
  auto push_split = [&](const Panel& parent) {
    const double mid = 0.5 * (parent.a + parent.b);
    Panel l{parent.a, mid, eval_panel(f, gl, parent.a, mid), 0.0};
    Panel r{mid, parent.b, eval_panel(f, gl, mid, parent.b), 0.0};
    const double e = std::fabs(parent.value - l.value - r.value);
    l.err = r.err = 0.5 * e;
    heap.push_back(l);
    std::push_heap(heap.begin(), heap.end(), panel_less);
    heap.push_back(r);
    std::push_heap(heap.begin(), heap.end(), panel_less);
  };

  Panel root{0.0, bmax, eval_panel(f, gl, 0.0, bmax), 0.0};
  push_split(root);

  auto totals = [&heap, decay_scale, bmax] {
    double v = 0.0, e = 0.0, tail = 0.0;
    for (const Panel& p : heap) {
      v += p.value;
      e += p.err;
      if (p.b == bmax) {
        const double r = std::exp(-decay_scale * (p.b - p.a));
        tail = std::fabs(p.value) * r / (1.0 - r);
      }
    }
    return std::pair<double, double>(v, e + tail);
  };

  while (true) {
    auto [value, err] = totals();
    if (err <= policy.rel_tol * std::fabs(value)) break;
    if (static_cast<int>(heap.size()) >= policy.max_panels) {
      char msg[128];
      std::snprintf(msg, sizeof msg, "err %.3e > rel_tol*|value| (%.3e) with %zu panels", err,
                    policy.rel_tol * std::fabs(value), heap.size());
      throw_not_converged("QuadratureNotConverged", msg);
    }
    std::pop_heap(heap.begin(), heap.end(), panel_less);
    const Panel worst = heap.back();
    heap.pop_back();
    push_split(worst);
  }

  // deterministic final summation in position order
  std::sort(heap.begin(), heap.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  QuadratureResult out;
  for (const Panel& p : heap) {
    out.value += p.value;
    out.err += p.err;
  }
  const Panel& last = heap.back();
  const double r = std::exp(-decay_scale * (last.b - last.a));
  out.err += std::fabs(last.value) * r / (1.0 - r);
  out.panels = static_cast<int>(heap.size());
  return out;
}

namespace {

int auto_order_cut(const NumericsPolicy& policy, double inverse_scale) {
  if (policy.initial_order_cut > 0) return policy.initial_order_cut;
  return static_cast<int>(std::ceil(8.0 + 4.0 / inverse_scale));
}

void add_flag(EnergyDiagnostics& d, const std::string& f) {
  if (std::find(d.flags.begin(), d.flags.end(), f) == d.flags.end()) d.flags.push_back(f);
}

// Escalates the truncation order (doubling) until both polarizations are
// stable to rel_tol/2, integrating beta * ln det(I - A(beta)) per order.
// initial_order_cut == max_order_cut requests a single fixed-order pass
// (order scans); such results carry a "fixed_order" flag instead of a
// truncation-convergence guarantee.
template <typename MatrixAt>
PolarizedEnergy determinant_energy(const NumericsPolicy& policy, double decay_scale, int n_start,
                                   const MatrixAt& matrix_at) {
  const bool fixed_order =
      policy.initial_order_cut > 0 && policy.initial_order_cut == policy.max_order_cut;
  PolarizedEnergy pe;
  bool have_prev = false;
  double prev_tm = 0.0, prev_te = 0.0;
  for (int n = n_start; n <= policy.max_order_cut; n *= 2) {
    QuadratureResult qr[2];
    for (Polarization pol : {Polarization::TM, Polarization::TE}) {
      auto f = [&](double beta) {
        if (beta <= 0.0) return 0.0;
        const ModeMatrix m = matrix_at(pol, beta, n, pe.diagnostics);
        return beta * log_det_i_minus_a(m);
      };
      qr[pol == Polarization::TE] = integrate(f, policy, decay_scale);
    }
    pe.tm = qr[0].value;
    pe.te = qr[1].value;
    pe.em = pe.tm + pe.te;
    pe.err_estimate = qr[0].err + qr[1].err;
    pe.diagnostics.order_cut = n;
    pe.diagnostics.panels = std::max(qr[0].panels, qr[1].panels);
    if (fixed_order) {
      add_flag(pe.diagnostics, "fixed_order");
      return pe;
    }
    if (have_prev) {
      const double dtm = std::fabs(pe.tm - prev_tm), dte = std::fabs(pe.te - prev_te);
      if (dtm <= 0.5 * policy.rel_tol * std::fabs(pe.tm) &&
          dte <= 0.5 * policy.rel_tol * std::fabs(pe.te)) {
        pe.err_estimate += dtm + dte;
        return pe;
      }
    }
    prev_tm = pe.tm;
    prev_te = pe.te;
    have_prev = true;
  }
  throw_not_converged("TruncationLimitExceeded",
                      "order cut " + std::to_string(policy.max_order_cut) +
                          " reached without energy convergence");
}

}  // namespace

PolarizedEnergy exact_energy(const Geometry& g_in, const NumericsPolicy& policy) {
  const Geometry g = validate(g_in);
  validate(policy);
  // Integrand decays with the surface gap: exp(-2 beta (alpha-1-delta)).
  const double decay = 2.0 * (g.alpha - 1.0 - g.delta);
  const int n0 = auto_order_cut(policy, g.alpha - 1.0);

  auto matrix_at = [&g](Polarization pol, double beta, int n, EnergyDiagnostics& diag) {
    const int base = n + std::max(8, static_cast<int>(std::ceil(3.0 * beta * g.delta)));
    ModeMatrix m;
    for (int grow = 1; grow <= 8; grow *= 2) {
      m = build_eccentric(pol, g, beta, n, base * grow);
      if (!m.inner_insufficient) break;
    }
    if (m.inner_insufficient) add_flag(diag, "inner_insufficient");
    diag.inner_cut = std::max(diag.inner_cut, m.inner_cut);
    return m;
  };
  return determinant_energy(policy, decay, n0, matrix_at);
}

PolarizedEnergy cylinder_plane_energy(const CylinderPlaneGeometry& g_in,
                                      const NumericsPolicy& policy) {
  const CylinderPlaneGeometry g = validate(g_in);
  validate(policy);
  const double decay = 2.0 * (g.h_over_a - 1.0);
  const int n0 = auto_order_cut(policy, g.h_over_a - 1.0);

  auto matrix_at = [&g](Polarization pol, double beta, int n, EnergyDiagnostics& diag) {
    ModeMatrix m = build_cylinder_plane(pol, g, beta, n);
    diag.inner_cut = std::max(diag.inner_cut, m.inner_cut);
    return m;
  };
  return determinant_energy(policy, decay, n0, matrix_at);
}

PolarizedEnergy concentric_energy(double alpha, const NumericsPolicy& policy) {
  if (!(alpha > 1.0) || !std::isfinite(alpha))
    throw_invalid("InvalidRadiusRatio", "alpha must be > 1");
  validate(policy);
  const double decay = 2.0 * (alpha - 1.0);

  PolarizedEnergy pe;
  QuadratureResult qr[2];
  for (Polarization pol : {Polarization::TM, Polarization::TE}) {
    auto f = [&](double beta) {
      if (beta <= 0.0) return 0.0;
      int n_max = std::max(16, static_cast<int>(std::ceil(21.0 / std::log(alpha))));
      while (true) {
        const auto d = concentric_diagonal(pol, alpha, beta, n_max);
        double acc = std::log1p(-d[0]);
        int quiet = 0;
        for (int n = 1; n <= n_max; ++n) {
          const double t = 2.0 * std::log1p(-d[n]);
          acc += t;
          quiet = std::fabs(t) < 1e-17 * std::fabs(acc) ? quiet + 1 : 0;
          if (quiet >= 2) {
            pe.diagnostics.order_cut = std::max(pe.diagnostics.order_cut, n);
            return beta * acc;
          }
        }
        n_max *= 2;
        if (n_max > (1 << 22))
          throw_not_converged("TruncationLimitExceeded", "concentric n-sum did not settle");
      }
    };
    qr[pol == Polarization::TE] = integrate(f, policy, decay);
  }
  pe.tm = qr[0].value;
  pe.te = qr[1].value;
  pe.em = pe.tm + pe.te;
  pe.err_estimate = qr[0].err + qr[1].err;
  pe.diagnostics.panels = std::max(qr[0].panels, qr[1].panels);
  return pe;
}

PolarizedEnergy perturbative_delta_e(double alpha, const NumericsPolicy& policy) {
  if (!(alpha > 1.0) || !std::isfinite(alpha))
    throw_invalid("InvalidRadiusRatio", "alpha must be > 1");
  validate(policy);
  const double decay = 2.0 * (alpha - 1.0);

  PolarizedEnergy pe;
  QuadratureResult qr[2];
  for (Polarization pol : {Polarization::TM, Polarization::TE}) {
    auto f = [&](double beta) -> double {
      if (beta <= 0.0) return 0.0;
      const ScaledReal g2 = ScaledReal::from_exp(-2.0 * beta * (alpha - 1.0));
      const ScaledReal g4 = g2 * g2;
      int n_max = std::max(24, static_cast<int>(std::ceil(16.0 / std::log(alpha))));
      while (true) {
        // p_n at beta, c_n at alpha*beta, orders 0..n_max+2
        std::vector<ScaledReal> p, c;
        if (pol == Polarization::TM) {
          const auto ib = bessel_i_scaled_array(n_max + 2, beta);
          const auto kb = bessel_k_scaled_array(n_max + 2, beta);
          const auto ia = bessel_i_scaled_array(n_max + 2, alpha * beta);
          const auto ka = bessel_k_scaled_array(n_max + 2, alpha * beta);
          p.resize(n_max + 3);
          c.resize(n_max + 3);
          for (int n = 0; n <= n_max + 2; ++n) {
            p[n] = ib[n] / kb[n];
            c[n] = ka[n] / ia[n];
          }
        } else {
          const auto ib = bessel_i_scaled_array(n_max + 3, beta);
          const auto kb = bessel_k_scaled_array(n_max + 3, beta);
          const auto ia = bessel_i_scaled_array(n_max + 3, alpha * beta);
          const auto ka = bessel_k_scaled_array(n_max + 3, alpha * beta);
          p.resize(n_max + 3);
          c.resize(n_max + 3);
          for (int n = 0; n <= n_max + 2; ++n) {
            p[n] = bessel_i_prime_at(ib, n) / bessel_k_prime_mag_at(kb, n);
            c[n] = bessel_k_prime_mag_at(ka, n) / bessel_i_prime_at(ia, n);
          }
        }
        auto dcc = [&](int n) { return (g2 * p[n] * c[n]).to_double(); };
        auto d_coef = [&](int n) {
          const ScaledReal cm1 = n >= 1 ? c[n - 1] : c[1];
          return 0.5 * dcc(n) + 0.25 * (g2 * p[n] * (cm1 + c[n + 1])).to_double();
        };
        auto n_coef = [&](int n) {
          const ScaledReal s = c[n] + c[n + 1];
          return 0.25 * (g4 * p[n] * p[n + 1] * s * s).to_double();
        };
        auto term = [&](int n) {
          if (n >= 0) return (d_coef(n) + n_coef(n) / (1.0 - dcc(n + 1))) / (1.0 - dcc(n));
          const int q = -n;
          return (d_coef(q) + n_coef(q - 1) / (1.0 - dcc(q - 1))) / (1.0 - dcc(q));
        };
        double acc = term(0);
        double shells[3] = {0.0, 0.0, 0.0};
        for (int k = 1; k <= n_max; ++k) {
          const double s = term(k) + term(-k);
          acc += s;
          shells[k % 3] = std::fabs(s);
          if (k >= 4 && shells[0] + shells[1] + shells[2] < 0.1 * policy.rel_tol * std::fabs(acc)) {
            pe.diagnostics.order_cut = std::max(pe.diagnostics.order_cut, k);
            return beta * beta * beta * acc;
          }
        }
        n_max *= 2;
        if (n_max > (1 << 22))
          throw_not_converged("TruncationLimitExceeded", "perturbative n-sum did not settle");
      }
    };
    qr[pol == Polarization::TE] = integrate(f, policy, decay);
  }
  pe.tm = -qr[0].value;
  pe.te = -qr[1].value;
  pe.em = pe.tm + pe.te;
  pe.err_estimate = qr[0].err + qr[1].err;
  pe.diagnostics.panels = std::max(qr[0].panels, qr[1].panels);
  return pe;
}

}  // namespace casec
