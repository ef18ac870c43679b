// Acceptance gate: eleven end-to-end checks over the classifier, the
// exponent machinery and the solver stack, one [PASS]/[FAIL] line each.
// Exits with the number of failing checks (0 = all green).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "arclab/certificates.hpp"
#include "arclab/driver.hpp"
#include "arclab/model.hpp"
#include "arclab/monitors.hpp"
#include "arclab/regime.hpp"
#include "arclab/solver.hpp"
#include "oracles.hpp"

namespace {

using namespace arclab;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

// ---------------------------------------------------------------------------
// shared helpers

ModelParams plain(int n, double m1, double m2, double m3, double alpha,
                  double gamma) {
  ModelParams p;
  p.n = n;
  p.m1 = m1;
  p.m2 = m2;
  p.m3 = m3;
  p.alpha = alpha;
  p.gamma = gamma;
  return p;
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

double conj_of(double x) { return x / (x - 1.0); }

// ---------------------------------------------------------------------------
// 1. every threshold constant vs the independent enumeration, bit for bit

std::string crit_threshold_oracle() {
  refimpl::Rng rng{0x1dea5eedc0ffee01ull};
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const double m2 = rng.uniform(0.2, 3.0);
    const double m3 = rng.uniform(0.2, 3.0);
    const double a = rng.uniform(0.02, 1.0);
    const double g = rng.uniform(0.02, 1.0);
    const double beta = rng.uniform(1.05, 3.5);
    const int n = rng.pick_int(2, 6);
    for (ThresholdId id : refimpl::kAllIds) {
      std::optional<double> ob;
      if (refimpl::needs_beta(id)) ob = beta;
      const double got = compute_threshold({id, false}, m2, m3, a, g, ob, n);
      const double want =
          refimpl::oracle_threshold(id, false, m2, m3, a, g, beta, n);
      if (!(got == want)) {
        std::ostringstream os;
        os << threshold_id_label(id) << " mismatch at m2=" << num(m2)
           << " m3=" << num(m3) << " alpha=" << num(a) << " gamma=" << num(g)
           << " beta=" << num(beta) << " n=" << n << ": got " << num(got)
           << " want " << num(want);
        return os.str();
      }
      ++checked;
    }
  }
  if (checked != 200 * 14) return "comparison count off: " + std::to_string(checked);
  return "";
}

// ---------------------------------------------------------------------------
// 2. pinned spot values plus the three worked verdict examples

std::string crit_spot_values() {
  struct Spot {
    ThresholdId id;
    std::optional<double> beta;
    double want;
    const char* label;
  };
  const Spot spots[] = {
      {ThresholdId::A, std::nullopt, 2.0 / 3.0, "A(1,1,n=3)"},
      {ThresholdId::F, std::nullopt, 1.5, "F(1,1,1,1,n=3)"},
      {ThresholdId::Ap, 2.0, 0.0, "A'(1,1,beta=2,n=3)"},
  };
  for (const Spot& s : spots) {
    const double got =
        compute_threshold({s.id, false}, 1.0, 1.0, 1.0, 1.0, s.beta, 3);
    const double ref = refimpl::oracle_threshold(s.id, false, 1.0, 1.0, 1.0,
                                                 1.0, s.beta ? *s.beta : 0.0, 3);
    if (!(got == ref))
      return std::string(s.label) + " disagrees with the enumerator: got " +
             num(got) + " vs " + num(ref);
    if (std::fabs(got - s.want) > 1e-15)
      return std::string(s.label) + " = " + num(got) + ", expected " +
             num(s.want);
  }

  // bounded low-exponent instance
  {
    RegimeVerdict v = verdict(plain(3, 0.7, 1.0, 1.0, 0.3, 0.3));
    if (v.case_id != "A1") return "example 1: case " + v.case_id + ", expected A1";
    if (v.decision != Decision::Bounded) return "example 1: not bounded";
    if (!v.threshold_value || std::fabs(*v.threshold_value - 2.0 / 3.0) > 1e-15)
      return "example 1: threshold off";
    if (!v.side_conditions.empty()) return "example 1: unexpected side conditions";
  }
  // fully linear instance: above no branch, smallness condition attached
  {
    RegimeVerdict v = verdict(plain(3, 1.0, 1.0, 1.0, 1.0, 1.0));
    if (v.case_id != "A6") return "example 2: case " + v.case_id + ", expected A6";
    if (v.decision != Decision::Uncovered) return "example 2: not uncovered";
    if (!v.threshold_value || std::fabs(*v.threshold_value - 1.5) > 1e-15)
      return "example 2: threshold off";
    if (v.side_conditions.size() != 1 ||
        v.side_conditions[0].id != "linear-smallness-both")
      return "example 2: missing linear-smallness-both side condition";
    if (v.side_conditions[0].constant_unspecified)
      return "example 2: smallness constants should be explicit";
  }
  // huge diffusion exponent beats every candidate
  {
    RegimeVerdict v = verdict(plain(2, 10.0, 1.0, 1.0, 0.5, 0.5));
    if (v.decision != Decision::Bounded) return "example 3: not bounded";
    if (v.case_id != "A1") return "example 3: case " + v.case_id + ", expected A1";
    if (!v.threshold_value || std::fabs(*v.threshold_value - 0.5) > 1e-15)
      return "example 3: threshold off";
  }
  return "";
}

// ---------------------------------------------------------------------------
// 3. transposed constants equal the plain constants with swapped arguments

std::string crit_transpose() {
  const ThresholdId ids[] = {ThresholdId::G, ThresholdId::H, ThresholdId::I,
                             ThresholdId::J, ThresholdId::K, ThresholdId::Cp};
  refimpl::Rng rng{0x7ab1e5eed5a1ad00ull};
  for (int trial = 0; trial < 500; ++trial) {
    const double m2 = rng.uniform(0.2, 3.0);
    const double m3 = rng.uniform(0.2, 3.0);
    const double a = rng.uniform(0.02, 1.0);
    const double g = rng.uniform(0.02, 1.0);
    const double beta = rng.uniform(1.05, 3.5);
    const int n = rng.pick_int(2, 6);
    for (ThresholdId id : ids) {
      std::optional<double> ob;
      if (refimpl::needs_beta(id)) ob = beta;
      const double t_swapped =
          compute_threshold({id, true}, m2, m3, a, g, ob, n);
      const double t_direct =
          compute_threshold({id, false}, m3, m2, g, a, ob, n);
      if (!(t_swapped == t_direct)) {
        std::ostringstream os;
        os << threshold_id_label(id) << "^t differs at m2=" << num(m2)
           << " m3=" << num(m3) << " alpha=" << num(a) << " gamma=" << num(g)
           << " n=" << n << ": " << num(t_swapped) << " vs " << num(t_direct);
        return os.str();
      }
    }
  }
  return "";
}

// ---------------------------------------------------------------------------
// 4. certificate search succeeds on sampled bounded instances

// Rebuilds the search's terminal ladder rung (p = 2^20, omega = 0.501) and
// asks the production checkers whether it passes for the given m1.  The
// feasibility of this rung is monotone in m1, so a bisection on it locates
// the effective lower edge of the searchable region.
bool limit_rung_passes(ModelParams p, double m1) {
  p.m1 = m1;
  const double omega = 0.501;
  const double pp = 1048576.0;
  const double inv_n = 1.0 / p.n;
  const bool a_small = p.alpha <= inv_n;
  const bool g_small = p.gamma <= inv_n;
  ExponentChoice c;
  c.p = pp;
  if (a_small && g_small) {
    c.s = pp;
  } else {
    double cap = std::numeric_limits<double>::infinity();
    if (!a_small) cap = std::min(cap, p.n / (p.n * p.alpha - 1.0));
    if (!g_small) cap = std::min(cap, p.n / (p.n * p.gamma - 1.0));
    c.s = 0.999 * cap;
  }
  c.q = a_small ? pp : pp / 2.0;
  c.r = g_small ? pp : pp / 2.0;
  c.theta_p = std::max(c.s, static_cast<double>(p.n)) * omega;
  c.theta = conj_of(c.theta_p);
  c.theta_t_p = c.theta_p;
  c.theta_t = c.theta;
  c.mu_y = std::max(1.0 / (2.0 * p.alpha), p.n / 2.0) * 1.001;
  c.mu_y_p = conj_of(c.mu_y);
  c.mu_t = std::max(1.0 / (2.0 * p.gamma), p.n / 2.0) * 1.001;
  c.mu_t_p = conj_of(c.mu_t);
  if (!check_choice(c, p).empty()) return false;
  try {
    return check_certificate(compute_exponent_set(p, c)).pass();
  } catch (const std::domain_error&) {
    return false;
  }
}

std::string crit_certificate_search() {
  refimpl::Rng rng{0xcafef00dd15ea5e5ull};
  for (int k = 0; k < 20; ++k) {
    ModelParams inst = plain(2 + (k % 4), 1.0, rng.uniform(0.8, 1.6),
                             rng.uniform(0.8, 1.6), rng.uniform(0.08, 1.0),
                             rng.uniform(0.08, 1.0));
    const RegimeVerdict v = verdict(inst);
    if (!v.threshold_value)
      return "instance " + std::to_string(k) + ": no threshold (case " +
             v.case_id + ")";
    // The searchable edge can sit slightly above the theoretical threshold
    // because the ladder shares one s across both signals; sample above both.
    if (!limit_rung_passes(inst, 8.0))
      return "instance " + std::to_string(k) +
             ": terminal rung rejects even m1=8";
    double lo = -2.0, hi = 8.0;
    if (limit_rung_passes(inst, lo)) {
      hi = lo;
    } else {
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        (limit_rung_passes(inst, mid) ? hi : lo) = mid;
      }
    }
    inst.m1 = std::max(*v.threshold_value, hi) + 0.05 + 0.2 * rng.u01();
    if (verdict(inst).decision != Decision::Bounded)
      return "instance " + std::to_string(k) + ": sampled m1 not bounded";

    const SearchOutcome so = search_certificate(inst);
    std::ostringstream tag;
    tag << "instance " << k << " (n=" << inst.n << " m1=" << num(inst.m1)
        << " m2=" << num(inst.m2) << " m3=" << num(inst.m3)
        << " alpha=" << num(inst.alpha) << " gamma=" << num(inst.gamma) << ")";
    if (!so.feasible()) {
      std::string detail = tag.str() + ": search infeasible;";
      for (const ConstraintViolation& cv : so.last_rung_failures)
        detail += " " + cv.constraint;
      return detail;
    }
    if (!check_certificate(*so.certificate).pass())
      return tag.str() + ": returned certificate fails check_certificate";
    if (!check_choice(so.certificate->choice, inst).empty())
      return tag.str() + ": returned choice violates structural constraints";
  }

  // the counter-instance sits below every branch and must come back infeasible
  const SearchOutcome bad = search_certificate(plain(3, 0.5, 1.0, 1.0, 0.3, 0.3));
  if (bad.feasible()) return "counter-instance unexpectedly feasible";
  if (bad.ladder_p_last != 1048576.0 || bad.ladder_omega_last != 0.501)
    return "counter-instance report did not reach the terminal rung";
  if (bad.last_rung_failures.empty())
    return "counter-instance report lists no failing constraints";
  return "";
}

// ---------------------------------------------------------------------------
// 5. absorption bounds: product bound and power-sum bound

std::string crit_absorption_bounds() {
  const double d0 = young_product_bound(0.25, 0.25, 1.0);
  if (std::fabs(d0 - 0.125) > 0.00125)
    return "young_product_bound(0.25,0.25,1) = " + num(d0) + ", expected 0.125 +-1%";

  refimpl::Rng rng{0xab5c15510baba5edull};
  for (int trial = 0; trial < 50; ++trial) {
    const double d1 = rng.uniform(0.05, 0.7);
    const double d2 = rng.uniform(0.05, std::min(0.9 - d1, 0.7));
    const double eps = rng.uniform(0.05, 3.0);
    const double d = young_product_bound(d1, d2, eps);
    if (!(d >= 0.0) || !std::isfinite(d))
      return "product bound not a finite nonnegative number";
    for (int i = 0; i < 100; ++i) {
      for (int j = 0; j < 100; ++j) {
        const double a = i * 1.007;
        const double b = j * 0.983;
        const double lhs = std::pow(a, d1) * std::pow(b, d2);
        const double rhs = eps * (a + b) + d;
        if (lhs > rhs + 1e-9 + 1e-12 * rhs) {
          std::ostringstream os;
          os << "product inequality fails at d1=" << num(d1) << " d2=" << num(d2)
             << " eps=" << num(eps) << " a=" << num(a) << " b=" << num(b)
             << ": lhs=" << num(lhs) << " rhs=" << num(rhs);
          return os.str();
        }
      }
    }
  }

  {
    const PowerSumBound b = power_sum_lower_bound(1.0, 1.0, 1.0);
    if (b.d6 != 1.0 || b.d_hat != 1.0 || b.d_tilde != 3.0)
      return "power_sum_lower_bound(1,1,1) constants off";
  }
  {
    const PowerSumBound b = power_sum_lower_bound(2.0, 2.0, 2.0);
    if (b.d6 != 2.0 || std::fabs(b.d_hat - 1.0 / 3.0) > 1e-15 || b.d_tilde != 3.0)
      return "power_sum_lower_bound(2,2,2) constants off";
  }
  for (int trial = 0; trial < 50; ++trial) {
    const double d3 = rng.uniform(0.5, 3.0);
    const double d4 = rng.uniform(0.5, 3.0);
    const double d5 = rng.uniform(0.5, 3.0);
    const PowerSumBound b = power_sum_lower_bound(d3, d4, d5);
    for (int i = 0; i < 10000; ++i) {
      const double a = rng.uniform(0.0, 100.0);
      const double bb = rng.uniform(0.0, 100.0);
      const double c = rng.uniform(0.0, 100.0);
      const double lhs = std::pow(a, d3) + std::pow(bb, d4) + std::pow(c, d5);
      const double rhs = b.d_hat * std::pow(a + bb + c, b.d6) - b.d_tilde;
      if (lhs < rhs - 1e-9 - 1e-12 * std::fabs(rhs)) {
        std::ostringstream os;
        os << "power-sum inequality fails at d=(" << num(d3) << "," << num(d4)
           << "," << num(d5) << ") point=(" << num(a) << "," << num(bb) << ","
           << num(c) << "): lhs=" << num(lhs) << " rhs=" << num(rhs);
        return os.str();
      }
    }
  }
  return "";
}

// ---------------------------------------------------------------------------
// 6+7 share one 2D run: conservative fluxes and absorbed signals

const RunResult& conserved_2d_run() {
  static const RunResult cached = [] {
    Grid g;
    g.dim = 2;
    g.cells = {64, 64};
    g.lengths = {1.0, 1.0};
    ProfileSpec u0;
    u0.kind = ProfileSpec::Kind::Gaussian;
    u0.center = {0.3, 0.4};
    u0.width = 0.15;
    u0.amplitude = 2.0;
    u0.offset = 0.5;
    ProfileSpec v0;
    v0.kind = ProfileSpec::Kind::Gaussian;
    v0.center = {0.7, 0.3};
    v0.width = 0.2;
    v0.amplitude = 1.0;
    ProfileSpec w0;
    w0.kind = ProfileSpec::Kind::Gaussian;
    w0.center = {0.4, 0.7};
    w0.width = 0.2;
    w0.amplitude = 1.0;
    ModelParams p; // n=2, all exponents 1, chi=xi=K1=K2=1, no source
    StepControl ctl;
    ctl.t_end = 1e18; // never reached: the step budget is the stop rule
    ctl.max_steps = 10000;
    MonitorConfig mc;
    mc.stride = 100;
    return run(init_state(g, u0, v0, w0), p, ctl, mc);
  }();
  return cached;
}

std::string crit_mass_conservation() {
  const RunResult& rr = conserved_2d_run();
  if (rr.report.steps_taken != 10000)
    return "expected 10000 steps, took " + std::to_string(rr.report.steps_taken);
  if (rr.report.signal != BlowupSignal::None)
    return std::string("unexpected signal: ") + blowup_signal_label(rr.report.signal);
  if (rr.state.clamp_events != 0)
    return std::to_string(rr.state.clamp_events) + " clamp events";
  const double mass0 = rr.report.rows.front().mass;
  double worst = 0.0;
  for (const MonitorRow& row : rr.report.rows)
    worst = std::max(worst, std::fabs(row.mass - mass0) / mass0);
  if (worst > 1e-10)
    return "relative mass drift " + num(worst) + " exceeds 1e-10";
  return "";
}

std::string crit_sup_monotone() {
  const RunResult& rr = conserved_2d_run();
  const std::vector<MonitorRow>& rows = rr.report.rows;
  if (rows.size() < 3) return "too few recorded rows";
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].sup_v > rows[i - 1].sup_v)
      return "sup_v increased between t=" + num(rows[i - 1].t) + " and t=" +
             num(rows[i].t);
    if (rows[i].sup_w > rows[i - 1].sup_w)
      return "sup_w increased between t=" + num(rows[i - 1].t) + " and t=" +
             num(rows[i].t);
  }
  if (!rr.report.violations.empty())
    return std::to_string(rr.report.violations.size()) + " bound violations";
  return "";
}

// ---------------------------------------------------------------------------
// 8. spatially homogeneous state: v decays like exp(-f(2) t)

std::string crit_homogeneous_decay() {
  Grid g;
  g.dim = 1;
  g.cells = {16, 1};
  g.lengths = {1.0, 1.0};
  ProfileSpec u0;
  u0.kind = ProfileSpec::Kind::Constant;
  u0.value = 2.0;
  ProfileSpec v0;
  v0.kind = ProfileSpec::Kind::Constant;
  v0.value = 1.0;
  ProfileSpec w0;
  w0.kind = ProfileSpec::Kind::Constant;
  w0.value = 0.0;
  ModelParams p; // alpha = K1 = 1 so f(u) = u and f(2) = 2
  StepControl ctl;
  ctl.dt_max = 1e-4;
  ctl.t_end = 0.5;
  MonitorConfig mc;
  mc.stride = 1000;
  const RunResult rr = run(init_state(g, u0, v0, w0), p, ctl, mc);

  if (rr.report.signal != BlowupSignal::None)
    return std::string("unexpected signal: ") + blowup_signal_label(rr.report.signal);
  if (std::fabs(rr.state.t - 0.5) > 1e-9)
    return "run ended at t=" + num(rr.state.t) + " instead of 0.5";
  const auto [umin, umax] = std::minmax_element(rr.state.u.begin(), rr.state.u.end());
  if (*umin != 2.0 || *umax != 2.0) return "u drifted off the constant state";
  const auto [vmin, vmax] = std::minmax_element(rr.state.v.begin(), rr.state.v.end());
  if (*vmin != *vmax) return "v lost spatial uniformity";
  const double want = std::exp(-1.0);
  if (std::fabs(*vmin - want) > 1e-3)
    return "v = " + num(*vmin) + ", expected exp(-1) = " + num(want) +
           " within 1e-3";
  return "";
}

// ---------------------------------------------------------------------------
// 9. heat-limit convergence orders (chi = xi = K1 = K2 = 0)

std::vector<double> heat_solution(int nx, double dt, std::int64_t nsteps) {
  Grid g;
  g.dim = 1;
  g.cells = {nx, 1};
  g.lengths = {1.0, 1.0};
  ProfileSpec u0;
  u0.kind = ProfileSpec::Kind::Cosine;
  u0.mode = 1;
  u0.amplitude = 0.5;
  u0.offset = 1.0;
  ProfileSpec zero;
  zero.kind = ProfileSpec::Kind::Constant;
  zero.value = 0.0;
  SimState s = init_state(g, u0, zero, zero);
  ModelParams p;
  p.chi = 0.0;
  p.xi = 0.0;
  p.K1 = 0.0;
  p.K2 = 0.0;
  const StepControl ctl;
  for (std::int64_t k = 0; k < nsteps; ++k) s = step_with_dt(s, p, ctl, dt);
  return s.u;
}

double l2_error_vs_exact(const std::vector<double>& u, int nx, double T) {
  const double pi = std::acos(-1.0);
  const double h = 1.0 / nx;
  const double decay = std::exp(-pi * pi * T);
  double acc = 0.0;
  for (int i = 0; i < nx; ++i) {
    const double x = (i + 0.5) * h;
    const double diff = u[i] - (1.0 + 0.5 * decay * std::cos(pi * x));
    acc += diff * diff * h;
  }
  return std::sqrt(acc);
}

double l2_diff(const std::vector<double>& a, const std::vector<double>& b,
               int nx) {
  double acc = 0.0;
  for (int i = 0; i < nx; ++i) {
    const double d = a[i] - b[i];
    acc += d * d / nx;
  }
  return std::sqrt(acc);
}

std::string crit_convergence_orders() {
  const double T = 0.01;
  // spatial sweep at a dt far below the stability limit of the finest grid
  const double dt_space = 1e-6;
  const std::int64_t nsteps = static_cast<std::int64_t>(T / dt_space + 0.5);
  double errs[3];
  const int grids[3] = {16, 32, 64};
  for (int k = 0; k < 3; ++k)
    errs[k] = l2_error_vs_exact(heat_solution(grids[k], dt_space, nsteps),
                                grids[k], T);
  const double o1 = std::log2(errs[0] / errs[1]);
  const double o2 = std::log2(errs[1] / errs[2]);
  if (std::fabs(o1 - 2.0) > 0.4 || std::fabs(o2 - 2.0) > 0.4)
    return "spatial orders " + num(o1) + ", " + num(o2) + " not within 2 +- 0.4";

  // temporal sweep on the finest grid against a much finer reference step
  const int nx = 64;
  const std::vector<double> ref =
      heat_solution(nx, 1e-7, static_cast<std::int64_t>(T / 1e-7 + 0.5));
  const double dts[3] = {4e-5, 2e-5, 1e-5};
  double terrs[3];
  for (int k = 0; k < 3; ++k) {
    const std::vector<double> u =
        heat_solution(nx, dts[k], static_cast<std::int64_t>(T / dts[k] + 0.5));
    terrs[k] = l2_diff(u, ref, nx);
  }
  const double t1 = std::log2(terrs[0] / terrs[1]);
  const double t2 = std::log2(terrs[1] / terrs[2]);
  if (std::fabs(t1 - 1.0) > 0.2 || std::fabs(t2 - 1.0) > 0.2)
    return "temporal orders " + num(t1) + ", " + num(t2) + " not within 1 +- 0.2";
  return "";
}

// ---------------------------------------------------------------------------
// 10. long run of a bounded-verdict instance, then the same with chi x50

RunResult aggregation_run(double chi) {
  Grid g;
  g.dim = 2;
  g.cells = {64, 64};
  g.lengths = {1.0, 1.0};
  ProfileSpec u0;
  u0.kind = ProfileSpec::Kind::Gaussian;
  u0.center = {0.5, 0.5};
  u0.width = 0.15;
  u0.amplitude = 1.5;
  u0.offset = 0.2;
  ProfileSpec v0;
  v0.kind = ProfileSpec::Kind::Gaussian;
  v0.center = {0.35, 0.6};
  v0.width = 0.2;
  v0.amplitude = 0.5;
  ProfileSpec w0;
  w0.kind = ProfileSpec::Kind::Gaussian;
  w0.center = {0.6, 0.35};
  w0.width = 0.2;
  w0.amplitude = 0.5;
  ModelParams p = plain(2, 1.0, 1.0, 1.0, 0.4, 0.4); // threshold A = 0.5
  p.chi = chi;
  p.K1 = 2.0;
  p.K2 = 2.0;
  StepControl ctl;
  ctl.t_end = 5.0;
  MonitorConfig mc;
  mc.stride = 200;
  return run(init_state(g, u0, v0, w0), p, ctl, mc);
}

std::string crit_regime_consistency() {
  {
    const RegimeVerdict v = verdict(plain(2, 1.0, 1.0, 1.0, 0.4, 0.4));
    if (v.decision != Decision::Bounded || !v.threshold_value ||
        std::fabs(*v.threshold_value - 0.5) > 1e-15)
      return "instance is not the expected bounded case";
  }
  const RunResult base = aggregation_run(1.0);
  const RunResult pushed = aggregation_run(50.0);
  std::printf("        baseline: %s after %lld steps; chi x50: %s after %lld steps\n",
              run_class_label(base.report.classification),
              static_cast<long long>(base.report.steps_taken),
              run_class_label(pushed.report.classification),
              static_cast<long long>(pushed.report.steps_taken));
  if (base.report.classification != RunClass::BoundedConsistent)
    return std::string("baseline run classified ") +
           run_class_label(base.report.classification);
  if (!base.report.violations.empty())
    return "baseline run raised " +
           std::to_string(base.report.violations.size()) + " bound violations";
  if (pushed.report.classification == RunClass::Inconclusive)
    return "chi x50 run classified inconclusive";
  return "";
}

// ---------------------------------------------------------------------------
// 11. the CLI writes byte-identical outputs on identical invocations

std::optional<std::string> read_bytes(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  if (!f) return std::nullopt;
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

std::vector<std::string> sorted_names(const fs::path& dir) {
  std::vector<std::string> names;
  for (const auto& e : fs::directory_iterator(dir))
    names.push_back(e.path().filename().string());
  std::sort(names.begin(), names.end());
  return names;
}

std::string crit_cli_determinism() {
  const fs::path cli = ARCLAB_CLI_PATH;
  if (!fs::exists(cli)) return "cli binary missing at " + cli.string();
  const auto stamp = Clock::now().time_since_epoch().count();
  const fs::path base =
      fs::temp_directory_path() /
      ("arclab-accept-" + std::to_string(static_cast<long long>(stamp)));
  fs::create_directories(base);
  const fs::path cfg = base / "run.json";
  {
    std::ofstream f(cfg);
    f << R"({
  "model": {"n": 2, "m1": 1.0, "m2": 1.0, "m3": 1.0, "alpha": 0.5, "gamma": 0.5},
  "grid": {"dim": 1, "cells": [32], "lengths": [1.0]},
  "initial": {
    "u0": {"type": "gaussian", "center": [0.4], "width": 0.1, "amplitude": 1.0, "offset": 0.3},
    "v0": {"type": "gaussian", "center": [0.6], "width": 0.15, "amplitude": 0.8},
    "w0": {"type": "constant", "value": 0.5}
  },
  "step": {"t_end": 0.05},
  "monitor": {"stride": 5},
  "output": {"snapshot_times": [0.02, 0.05]}
}
)";
  }
  auto invoke = [&](const fs::path& out, const fs::path& log) {
    const std::string cmd = "\"" + cli.string() + "\" simulate --config \"" +
                            cfg.string() + "\" --out \"" + out.string() +
                            "\" > \"" + log.string() + "\" 2>&1";
    return std::system(cmd.c_str());
  };
  const fs::path out_a = base / "a", out_b = base / "b";
  const fs::path log_a = base / "a.log", log_b = base / "b.log";
  if (invoke(out_a, log_a) != 0)
    return "first invocation failed; log: " +
           read_bytes(log_a).value_or("<unreadable>").substr(0, 400);
  if (invoke(out_b, log_b) != 0)
    return "second invocation failed; log: " +
           read_bytes(log_b).value_or("<unreadable>").substr(0, 400);

  const std::vector<std::string> names = sorted_names(out_a);
  if (names != sorted_names(out_b)) return "output file sets differ";
  if (std::find(names.begin(), names.end(), "monitors.csv") == names.end() ||
      std::find(names.begin(), names.end(), "summary.json") == names.end() ||
      names.size() < 4)
    return "expected monitors.csv, summary.json and two snapshots; got " +
           std::to_string(names.size()) + " files";
  for (const std::string& name : names) {
    const auto a = read_bytes(out_a / name), b = read_bytes(out_b / name);
    if (!a || !b) return "unreadable output file " + name;
    if (*a != *b) return "file " + name + " differs between runs";
    if (a->empty()) return "file " + name + " is empty";
  }
  const auto la = read_bytes(log_a), lb = read_bytes(log_b);
  if (!la || !lb || *la != *lb) return "stdout differs between runs";
  fs::remove_all(base);
  return "";
}

} // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget_s; // 0 = untimed
    std::function<std::string()> body;
  };
  const Criterion criteria[] = {
      {"threshold constants match independent enumeration", 1.0,
       crit_threshold_oracle},
      {"threshold spot values and verdict examples", 1.0, crit_spot_values},
      {"transpose identity under swapped arguments", 0.0, crit_transpose},
      {"certificate search on sampled bounded instances", 30.0,
       crit_certificate_search},
      {"product and power-sum absorption bounds", 10.0, crit_absorption_bounds},
      {"2d mass conservation over 10^4 steps", 0.0, crit_mass_conservation},
      {"signal sup-norms non-increasing, no violations", 0.0, crit_sup_monotone},
      {"homogeneous consumption decay matches exp(-1)", 0.0,
       crit_homogeneous_decay},
      {"heat-limit convergence orders", 60.0, crit_convergence_orders},
      {"bounded-regime long-run classification", 300.0, crit_regime_consistency},
      {"cli simulate reruns are byte-identical", 0.0, crit_cli_determinism},
  };

  int failures = 0;
  int index = 0;
  for (const Criterion& c : criteria) {
    ++index;
    const auto t0 = Clock::now();
    std::string err;
    try {
      err = c.body();
    } catch (const std::exception& e) {
      err = std::string("exception: ") + e.what();
    } catch (...) {
      err = "unknown exception";
    }
    const double secs =
        std::chrono::duration<double>(Clock::now() - t0).count();
    if (err.empty() && c.budget_s > 0.0 && secs > c.budget_s) {
      std::ostringstream os;
      os << "time budget exceeded: " << secs << " s (limit " << c.budget_s
         << " s)";
      err = os.str();
    }
    if (err.empty()) {
      std::printf("[PASS] %2d. %-52s (%.2f s)\n", index, c.name, secs);
    } else {
      std::printf("[FAIL] %2d. %-52s (%.2f s) -- %s\n", index, c.name, secs,
                  err.c_str());
      ++failures;
    }
    std::fflush(stdout);
  }
  std::printf("%d of 11 acceptance checks passed\n", 11 - failures);
  return failures;
}
