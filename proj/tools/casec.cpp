// Copyright (c) 2026 The casec authors
// SPDX-License-Identifier: Apache-2.0

// casec — Casimir interaction of eccentric cylinders.
//
// Subcommands:
//   energy    single-point evaluation (exact / perturbative / pfa /
//             asymptotic / concentric), human-readable or line JSON
//   figure    parameter sweeps (CSV on stdout): 2 = perturbative/PFA ratio
//             vs alpha, 3 = |dE| vs alpha at fixed deltas, 4 = dE vs delta
//             at fixed alphas
//   converge  truncation-order and quadrature refinement scans (CSV)
//
// Energies are reduced by E0 = hbar c L / (4 pi a^2); pass --radius-a and
// --length to also get joules. stdout carries data only; diagnostics and
// metadata go to stderr. Exit codes: 0 ok, 2 invalid input,
// 3 non-convergence, 4 partial sweep failure.

#include <fmt/core.h>

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <numbers>
#include <string>
#include <vector>

#include "casec/energy.hpp"
#include "casec/errors.hpp"
#include "casec/geometry.hpp"
#include "casec/sweep.hpp"
#include "casec/version.hpp"

using json = nlohmann::json;
using namespace casec;

namespace {

struct PolicyFlags {
  double tol = 1e-6;
  int max_modes = 1024;
  int initial_modes = 0;
  int quad_order = 16;
  int max_panels = 4000;
  double beta_max_factor = 30.0;

  NumericsPolicy policy() const {
    NumericsPolicy p;
    p.rel_tol = tol;
    p.max_order_cut = max_modes;
    p.initial_order_cut = initial_modes;
    p.quad_order = quad_order;
    p.max_panels = max_panels;
    p.beta_max_factor = beta_max_factor;
    return p;
  }
};

void add_policy_flags(CLI::App* cmd, PolicyFlags& f) {
  cmd->add_option("--tol", f.tol, "target relative accuracy")->capture_default_str();
  cmd->add_option("--max-modes", f.max_modes, "cap on the truncation order")
      ->capture_default_str();
  cmd->add_option("--initial-modes", f.initial_modes,
                  "starting truncation order (0 = auto, = max for a fixed-order run)")
      ->capture_default_str();
  cmd->add_option("--quad-order", f.quad_order, "Gauss-Legendre nodes per panel")
      ->capture_default_str();
  cmd->add_option("--max-panels", f.max_panels, "adaptive quadrature panel cap")
      ->capture_default_str();
  cmd->add_option("--beta-max-factor", f.beta_max_factor,
                  "integration cutoff scale (beta_max = factor / decay)")
      ->capture_default_str();
}

std::string join_flags(const std::vector<std::string>& flags) {
  std::string out;
  for (const auto& f : flags) {
    if (!out.empty()) out += ';';
    out += f;
  }
  return out;
}

// One evaluated record: all channels that the method defines.
struct Record {
  double alpha = 0.0, delta = 0.0;
  std::string method;
  std::optional<double> tm, te;
  double em = 0.0;
  double err = 0.0;
  EnergyDiagnostics diag;
};

Record evaluate_point(const std::string& method, const Geometry& g, const NumericsPolicy& policy) {
  Record r;
  r.alpha = g.alpha;
  r.delta = g.delta;
  r.method = method;
  if (method == "exact") {
    const auto e = exact_energy(g, policy);
    r.tm = e.tm;
    r.te = e.te;
    r.em = e.em;
    r.err = e.err_estimate;
    r.diag = e.diagnostics;
  } else if (method == "concentric") {
    if (g.delta != 0.0)
      throw_invalid("InvalidEccentricity", "method 'concentric' requires delta = 0");
    const auto e = concentric_energy(g.alpha, policy);
    r.tm = e.tm;
    r.te = e.te;
    r.em = e.em;
    r.err = e.err_estimate;
    r.diag = e.diagnostics;
  } else if (method == "perturbative") {
    const auto e = perturbative_delta_e(g.alpha, policy);
    const double d2 = g.delta * g.delta;
    r.tm = e.tm * d2;
    r.te = e.te * d2;
    r.em = e.em * d2;
    r.err = e.err_estimate * d2;
    r.diag = e.diagnostics;
  } else if (method == "pfa") {
    if (g.delta == 0.0) {
      r.em = pfa_concentric_energy(g);
    } else {
      r.tm = pfa_eccentric_delta_e(g, Channel::TM);
      r.te = pfa_eccentric_delta_e(g, Channel::TE);
      r.em = pfa_eccentric_delta_e(g, Channel::EM);
    }
  } else if (method == "asymptotic") {
    r.em = asymptotic_delta_e(g);
  } else {
    throw_invalid("InvalidMethod", "unknown method '" + method + "'");
  }
  return r;
}

int cmd_energy(const Geometry& g, const std::string& method, const std::string& pol,
               const NumericsPolicy& policy, bool as_json) {
  const Record r = evaluate_point(method, g, policy);
  const bool physical = g.radius_a && g.length;

  if (as_json) {
    json j;
    j["alpha"] = r.alpha;
    j["delta"] = r.delta;
    j["method"] = r.method;
    j["pol"] = pol;
    if (r.tm) j["tm"] = *r.tm;
    if (r.te) j["te"] = *r.te;
    j["em"] = r.em;
    j["err"] = r.err;
    j["order_cut"] = r.diag.order_cut;
    j["inner_cut"] = r.diag.inner_cut;
    j["panels"] = r.diag.panels;
    j["flags"] = r.diag.flags;
    j["unit"] = "E0";
    if (physical) {
      json ph;
      if (r.tm) ph["tm"] = to_physical(EnergyUnit{*r.tm}, g);
      if (r.te) ph["te"] = to_physical(EnergyUnit{*r.te}, g);
      ph["em"] = to_physical(EnergyUnit{r.em}, g);
      j["joules"] = ph;
    }
    fmt::print("{}\n", j.dump());
    return 0;
  }

  fmt::print("alpha={} delta={} method={} pol={}\n", format_double(r.alpha),
             format_double(r.delta), r.method, pol);
  std::string line;
  if (r.tm) line += fmt::format("tm={} ", format_double(*r.tm));
  if (r.te) line += fmt::format("te={} ", format_double(*r.te));
  fmt::print("{}em={} err={}  [E0 = hbar c L/(4 pi a^2)]\n", line, format_double(r.em),
             format_double(r.err));
  fmt::print("order_cut={} inner_cut={} panels={} flags={}\n", r.diag.order_cut, r.diag.inner_cut,
             r.diag.panels, r.diag.flags.empty() ? "-" : join_flags(r.diag.flags));
  if (physical)
    fmt::print("em = {} J  (a={} m, L={} m)\n", format_double(to_physical(EnergyUnit{r.em}, g)),
               format_double(*g.radius_a), format_double(*g.length));
  return 0;
}

std::vector<double> log_spaced_alphas(double amin, double amax, int points) {
  if (!(amin > 1.0) || !(amax > amin) || points < 2)
    throw_invalid("InvalidGrid", "need 1 < alpha-min < alpha-max and points >= 2");
  std::vector<double> out(points);
  const double l0 = std::log(amin - 1.0), l1 = std::log(amax - 1.0);
  for (int i = 0; i < points; ++i) out[i] = 1.0 + std::exp(l0 + (l1 - l0) * i / (points - 1));
  return out;
}

void append_pol_rows(SweepResult& sweep, const Record& r, const std::string& pol_select,
                     bool absolute) {
  auto add = [&](const std::string& pol, std::optional<double> v) {
    if (!v) return;
    SweepRow row;
    row.alpha = r.alpha;
    row.delta = r.delta;
    row.method = r.method;
    row.pol = pol;
    row.energy = absolute ? std::fabs(*v) : *v;
    row.err = r.err;
    row.order_cut = r.diag.order_cut;
    row.inner_cut = r.diag.inner_cut;
    row.panels = r.diag.panels;
    row.flag = join_flags(r.diag.flags);
    sweep.rows.push_back(std::move(row));
  };
  if (pol_select == "tm" || pol_select == "all") add("tm", r.tm);
  if (pol_select == "te" || pol_select == "all") add("te", r.te);
  if (pol_select == "em" || pol_select == "all") add("em", r.em);
}

void append_failed_row(SweepResult& sweep, double alpha, double delta, const std::string& method,
                       const std::string& pol, const std::string& error_name) {
  SweepRow row;
  row.alpha = alpha;
  row.delta = delta;
  row.method = method;
  row.pol = pol;
  row.flag = error_name;
  sweep.rows.push_back(std::move(row));
  sweep.any_failed = true;
}

std::string now_rfc3339() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&t));
  return buf;
}

int emit_sweep(SweepResult& sweep) {
  sweep.tool_version = kVersion;
  sweep.timestamp = now_rfc3339();
  write_csv(std::cout, sweep);
  std::cerr << "casec " << sweep.tool_version << " at " << sweep.timestamp
            << "; policy: " << describe(sweep.policy) << "; rows: " << sweep.rows.size() << "\n";
  return sweep.any_failed ? 4 : 0;
}

// Figure 2: ratio of the perturbative energy difference to its
// proximity-force limit, per polarization, on a log-spaced alpha grid.
int cmd_figure2(double amin, double amax, int points, const NumericsPolicy& policy, int threads) {
  const auto alphas = log_spaced_alphas(amin, amax, points);
  SweepResult sweep;
  sweep.policy = policy;
  std::vector<SweepResult> parts(alphas.size());
  parallel_for_ordered(static_cast<int>(alphas.size()), threads, [&](int i) {
    const double a = alphas[i];
    try {
      const auto e = perturbative_delta_e(a, policy);
      const double pfa_em = -(std::pow(std::numbers::pi, 4) / 30.0) / std::pow(a - 1.0, 5);
      Record r;
      r.alpha = a;
      r.method = "pert-pfa-ratio";
      r.tm = e.tm / (0.5 * pfa_em);
      r.te = e.te / (0.5 * pfa_em);
      r.em = e.em / pfa_em;
      r.err = e.err_estimate / std::fabs(pfa_em);
      r.diag = e.diagnostics;
      append_pol_rows(parts[i], r, "all", false);
    } catch (const Error& err) {
      append_failed_row(parts[i], a, 0.0, "pert-pfa-ratio", "all", err.name());
    }
  });
  for (auto& p : parts) {
    sweep.any_failed |= p.any_failed;
    for (auto& row : p.rows) sweep.rows.push_back(std::move(row));
  }
  return emit_sweep(sweep);
}

// Figures 3 and 4: exact energy difference dE = E(delta) - E(0). Figure 3
// sweeps alpha at fixed deltas emitting |dE|; figure 4 sweeps delta at fixed
// alphas emitting dE (0 at delta = 0).
int cmd_figure34(bool absolute, const std::vector<double>& alphas,
                 const std::vector<std::vector<double>>& deltas_per_alpha,
                 const std::string& pol_select, const NumericsPolicy& policy, int threads) {
  const std::string method = absolute ? "abs-delta-exact" : "delta-exact";
  SweepResult sweep;
  sweep.policy = policy;
  std::vector<SweepResult> parts(alphas.size());
  parallel_for_ordered(static_cast<int>(alphas.size()), threads, [&](int i) {
    const double a = alphas[i];
    PolarizedEnergy base;
    try {
      base = exact_energy(Geometry{a, 0.0, {}, {}}, policy);
    } catch (const Error& err) {
      for (const double d : deltas_per_alpha[i])
        append_failed_row(parts[i], a, d, method, pol_select, err.name());
      return;
    }
    for (const double d : deltas_per_alpha[i]) {
      try {
        Record r;
        r.alpha = a;
        r.delta = d;
        r.method = method;
        if (d == 0.0) {
          r.tm = 0.0;
          r.te = 0.0;
          r.em = 0.0;
          r.err = 2.0 * base.err_estimate;
          r.diag = base.diagnostics;
        } else {
          const auto e = exact_energy(Geometry{a, d, {}, {}}, policy);
          r.tm = e.tm - base.tm;
          r.te = e.te - base.te;
          r.em = e.em - base.em;
          r.err = e.err_estimate + base.err_estimate;
          r.diag = e.diagnostics;
          r.diag.order_cut = std::max(r.diag.order_cut, base.diagnostics.order_cut);
          r.diag.panels = std::max(r.diag.panels, base.diagnostics.panels);
        }
        append_pol_rows(parts[i], r, pol_select, absolute);
      } catch (const Error& err) {
        append_failed_row(parts[i], a, d, method, pol_select, err.name());
      }
    }
  });
  for (auto& p : parts) {
    sweep.any_failed |= p.any_failed;
    for (auto& row : p.rows) sweep.rows.push_back(std::move(row));
  }
  return emit_sweep(sweep);
}

int cmd_converge(double alpha, double delta, int n_start, int n_steps,
                 const NumericsPolicy& base_policy, int threads) {
  const Geometry g = validate(Geometry{alpha, delta, {}, {}});
  if (n_start <= 0) n_start = static_cast<int>(std::ceil(8.0 + 4.0 / (alpha - 1.0)));

  SweepResult sweep;
  sweep.policy = base_policy;

  // stage 1: energy vs truncation order at fixed quadrature settings
  std::vector<int> orders;
  for (int k = 0, n = n_start; k < n_steps; ++k, n *= 2) orders.push_back(n);
  std::vector<SweepResult> parts(orders.size());
  parallel_for_ordered(static_cast<int>(orders.size()), threads, [&](int i) {
    NumericsPolicy p = base_policy;
    p.initial_order_cut = p.max_order_cut = orders[i];
    try {
      Record r = evaluate_point("exact", g, p);
      for (auto& f : r.diag.flags)
        if (f == "fixed_order") f = "order-scan";
      append_pol_rows(parts[i], r, "all", false);
    } catch (const Error& err) {
      append_failed_row(parts[i], alpha, delta, "exact", "all", err.name());
    }
  });
  for (auto& p : parts) {
    sweep.any_failed |= p.any_failed;
    for (auto& row : p.rows) sweep.rows.push_back(std::move(row));
  }

  // stage 2: energy vs quadrature tolerance at the final order
  for (double t = 1e-3; t >= base_policy.rel_tol * 0.99; t *= 1e-1) {
    NumericsPolicy p = base_policy;
    p.rel_tol = t;
    p.initial_order_cut = p.max_order_cut = orders.back();
    try {
      Record r = evaluate_point("exact", g, p);
      for (auto& f : r.diag.flags)
        if (f == "fixed_order") f = "quad-scan";
      append_pol_rows(sweep, r, "all", false);
    } catch (const Error& err) {
      append_failed_row(sweep, alpha, delta, "exact", "all", err.name());
    }
  }
  return emit_sweep(sweep);
}

// Flat key=value config support: --config FILE supplies defaults for any
// long option of the invoked subcommand that is absent from the command line.
std::vector<std::string> with_config_defaults(std::vector<std::string> args) {
  std::string path;
  for (size_t i = 0; i < args.size();) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + i, args.begin() + i + 2);
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + i);
    } else {
      ++i;
    }
  }
  if (path.empty()) return args;
  std::ifstream f(path);
  if (!f) throw_invalid("ConfigFileMissing", "cannot read config file '" + path + "'");

  auto trim = [](std::string s) {
    const char* ws = " \t\r";
    const size_t b = s.find_first_not_of(ws);
    if (b == std::string::npos) return std::string();
    const size_t e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
  };
  std::string line;
  while (std::getline(f, line)) {
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const size_t eq = line.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) continue;
    const std::string flag = "--" + key;
    bool given = false;
    for (const auto& a : args)
      if (a == flag || a.rfind(flag + "=", 0) == 0) given = true;
    if (given) continue;
    args.push_back(flag);
    std::istringstream vs(value);  // list-valued keys hold whitespace-separated entries
    std::string tok;
    while (vs >> tok) args.push_back(tok);
  }
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"casec: Casimir interaction energy of perfectly conducting eccentric cylinders"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  // energy
  auto* energy = app.add_subcommand("energy", "evaluate one configuration");
  std::string cfg_dummy;
  energy->add_option("--config", cfg_dummy, "flat key=value defaults; flags override the file");
  double alpha = 0.0, delta = 0.0;
  std::string method = "exact", pol = "em";
  bool as_json = false;
  double radius_a = 0.0, length = 0.0;
  PolicyFlags epolicy;
  energy->add_option("--alpha", alpha, "radius ratio b/a (> 1)")->required();
  energy->add_option("--delta", delta, "reduced eccentricity eps/a")->capture_default_str();
  energy
      ->add_option("--method", method,
                   "exact | perturbative | pfa | asymptotic | concentric "
                   "(perturbative/pfa/asymptotic give dE vs the concentric case for delta > 0)")
      ->check(CLI::IsMember({"exact", "perturbative", "pfa", "asymptotic", "concentric"}))
      ->capture_default_str();
  energy->add_option("--pol", pol, "headline polarization")
      ->check(CLI::IsMember({"tm", "te", "em"}))
      ->capture_default_str();
  energy->add_option("--radius-a", radius_a, "inner radius in meters (for joules)");
  energy->add_option("--length", length, "cylinder length in meters (for joules)");
  energy->add_flag("--json", as_json, "emit one JSON line instead of text");
  add_policy_flags(energy, epolicy);

  // figure
  auto* figure = app.add_subcommand("figure", "emit sweep data as CSV on stdout");
  figure->add_option("--config", cfg_dummy, "flat key=value defaults; flags override the file");
  int fig_id = 0;
  int threads = 0, points = 13;
  double amin = 0.0, amax = 0.0;
  std::vector<double> delta_list, alpha_list;
  int frac_points = 9;
  double frac_max = 0.4;
  std::string fig_pol = "em";
  PolicyFlags fpolicy;
  figure->add_option("--id", fig_id, "2: pert/PFA ratio vs alpha; 3: |dE|(alpha); 4: dE(delta)")
      ->required()
      ->check(CLI::IsMember({2, 3, 4}));
  figure->add_option("--threads", threads, "worker threads (0 = all cores)")
      ->capture_default_str();
  figure->add_option("--alpha-min", amin, "sweep start (default 1.01 / 1.3)");
  figure->add_option("--alpha-max", amax, "sweep end (default 4 / 5)");
  figure->add_option("--points", points, "alpha grid size (figure 3 default: 9)")
      ->capture_default_str();
  figure->add_option("--delta-list", delta_list, "figure 3 delta values (default 0.05 0.1 0.2)");
  figure->add_option("--alpha-list", alpha_list, "figure 4 alpha values (default 1.5 2 3)");
  figure->add_option("--frac-points", frac_points, "figure 4: points on delta = f (alpha-1)")
      ->capture_default_str();
  figure->add_option("--frac-max", frac_max, "figure 4: max f in delta = f (alpha-1)")
      ->capture_default_str();
  figure->add_option("--pol", fig_pol, "figures 3/4 polarization rows")
      ->check(CLI::IsMember({"tm", "te", "em", "all"}))
      ->capture_default_str();
  add_policy_flags(figure, fpolicy);

  // converge
  auto* converge = app.add_subcommand("converge", "truncation/quadrature scans as CSV");
  converge->add_option("--config", cfg_dummy, "flat key=value defaults; flags override the file");
  double calpha = 0.0, cdelta = 0.0;
  int n_start = 0, n_steps = 5, cthreads = 0;
  PolicyFlags cpolicy;
  converge->add_option("--alpha", calpha, "radius ratio b/a")->required();
  converge->add_option("--delta", cdelta, "reduced eccentricity")->capture_default_str();
  converge->add_option("--n-start", n_start, "first truncation order (0 = auto)")
      ->capture_default_str();
  converge->add_option("--n-steps", n_steps, "number of order doublings")->capture_default_str();
  converge->add_option("--threads", cthreads, "worker threads (0 = all cores)")
      ->capture_default_str();
  add_policy_flags(converge, cpolicy);

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    args = with_config_defaults(args);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::vector<const char*> cargv{argv[0]};
  for (const auto& a : args) cargv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (energy->parsed()) {
      Geometry g{alpha, delta, {}, {}};
      if (radius_a > 0.0) g.radius_a = radius_a;
      if (length > 0.0) g.length = length;
      return cmd_energy(validate(g), method, pol, epolicy.policy(), as_json);
    }
    if (figure->parsed()) {
      const NumericsPolicy p = fpolicy.policy();
      if (fig_id == 2)
        return cmd_figure2(amin > 0 ? amin : 1.01, amax > 0 ? amax : 4.0, points, p, threads);
      if (fig_id == 3) {
        if (delta_list.empty()) delta_list = {0.05, 0.1, 0.2};
        const auto alphas = log_spaced_alphas(amin > 0 ? amin : 1.3, amax > 0 ? amax : 5.0,
                                              points == 13 ? 9 : points);
        const std::vector<std::vector<double>> deltas(alphas.size(), delta_list);
        return cmd_figure34(true, alphas, deltas, fig_pol, p, threads);
      }
      if (alpha_list.empty()) alpha_list = {1.5, 2.0, 3.0};
      std::vector<std::vector<double>> deltas;
      for (const double a : alpha_list) {
        std::vector<double> ds(frac_points);
        for (int i = 0; i < frac_points; ++i) ds[i] = frac_max * (a - 1.0) * i / (frac_points - 1);
        deltas.push_back(std::move(ds));
      }
      return cmd_figure34(false, alpha_list, deltas, fig_pol, p, threads);
    }
    return cmd_converge(calpha, cdelta, n_start, n_steps, cpolicy.policy(), cthreads);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::InvalidInput ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
