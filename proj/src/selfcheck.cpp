#include "arclab/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <vector>

#include "arclab/certificates.hpp"
#include "arclab/driver.hpp"
#include "arclab/regime.hpp"

namespace arclab {

namespace {

// Literal re-enumerations of a few threshold branch lists, written out
// independently of the table-driven evaluator.
double ref_A(double m2, double m3, int ni) {
  const double n = ni;
  const double S = (n - 2.0) / n;
  const double b1 = std::max({2.0 * m2 - 1.0, 2.0 * m3 - 1.0, S});
  const double b2 = std::max({m2 - 1.0 / n, m3 - 1.0 / n, S});
  const double b3 = std::max({2.0 * m2 - 1.0, m3 - 1.0 / n, S});
  const double b4 = std::max({m2 - 1.0 / n, 2.0 * m3 - 1.0, S});
  const double b5 = std::max(m2 - 1.0 / n, m3 - 1.0 / n);
  return std::min({b1, b2, b3, b4, b5});
}

double ref_G(double m2, double m3, double a, double g, int ni) {
  const double n = ni;
  const double S = (n - 2.0) / n;
  const double b1 = std::max(m2 - 1.0 / n, m3 - 2.0 / n + g);
  const double b2 = std::max({2.0 * m2 - 1.0, 2.0 * m3, S});
  const double b3 = std::max({m2 - 1.0 / n, 2.0 * m3, S});
  const double b4 = std::max({2.0 * m2 - 1.0, m3 - 2.0 / n + g, S});
  const double b5 = std::max({m2 - 1.0 / n, m3 - 2.0 / n + g, S});
  (void)a;
  return std::min({b1, b2, b3, b4, b5});
}

double ref_Ap(double m2, double m3, double beta, int ni) {
  const double n = ni;
  const double S = (n - 2.0) / n;
  const double L2 = 2.0 * m2 - 1.0, L3 = 2.0 * m3 - 1.0;
  const double N2 = m2 - 1.0 / n, N3 = m3 - 1.0 / n;
  const double B2 = 2.0 * m2 - beta, B3 = 2.0 * m3 - beta;
  return std::min({std::max({L2, L3, S}), std::max({N2, N3, S}),
                   std::max({L2, N3, S}), std::max({N2, L3, S}),
                   std::max({B2, B3, S}), std::max(B2, B3),
                   std::max({N2, B3, S}), std::max({L2, B3, S}),
                   std::max({B2, L3, S}), std::max({B2, N3, S})});
}

struct Checker {
  std::ostream& out;
  bool all_ok = true;
  void report(const char* name, bool ok, const std::string& detail = "") {
    if (ok) {
      out << "[ ok ] " << name << "\n";
    } else {
      all_ok = false;
      out << "[FAIL] " << name;
      if (!detail.empty()) out << " (" << detail << ")";
      out << "\n";
    }
  }
};

std::string num_pair(double got, double want) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "got %.17g, want %.17g", got, want);
  return buf;
}

} // namespace

bool run_selfcheck(std::ostream& out) {
  Checker ck{out};

  // Threshold branch enumeration against independent literals.
  {
    bool ok = true;
    std::string detail;
    const double m2s[] = {0.5, 1.0, 1.25, 2.0};
    const double m3s[] = {0.5, 1.0, 1.75};
    for (int n = 2; n <= 5 && ok; ++n) {
      for (double m2 : m2s) {
        for (double m3 : m3s) {
          const double got =
              compute_threshold({ThresholdId::A, false}, m2, m3, 1.0, 1.0,
                                std::nullopt, n);
          const double want = ref_A(m2, m3, n);
          if (got != want) {
            ok = false;
            detail = "A(" + std::to_string(m2) + "," + std::to_string(m3) +
                     ",n=" + std::to_string(n) + "): " + num_pair(got, want);
            break;
          }
          const double gt = compute_threshold({ThresholdId::G, true}, m2, m3,
                                              0.5, 0.4, std::nullopt, n);
          const double wt = ref_G(m3, m2, 0.4, 0.5, n);
          if (gt != wt) {
            ok = false;
            detail = "G^t: " + num_pair(gt, wt);
            break;
          }
          const double ga = compute_threshold({ThresholdId::Ap, false}, m2,
                                              m3, 0.25, 0.25, 2.5, n);
          const double wa = ref_Ap(m2, m3, 2.5, n);
          if (ga != wa) {
            ok = false;
            detail = "A': " + num_pair(ga, wa);
            break;
          }
        }
        if (!ok) break;
      }
    }
    ck.report("threshold-enumeration", ok, detail);
  }

  // Threshold spot values.
  {
    const double tA3 =
        compute_threshold({ThresholdId::A, false}, 1, 1, 1, 1, std::nullopt, 3);
    const double tA2 =
        compute_threshold({ThresholdId::A, false}, 1, 1, 1, 1, std::nullopt, 2);
    const double tF3 =
        compute_threshold({ThresholdId::F, false}, 1, 1, 1, 1, std::nullopt, 3);
    const double tAp =
        compute_threshold({ThresholdId::Ap, false}, 1, 1, 0.25, 0.25, 2.0, 3);
    bool ok = std::fabs(tA3 - 2.0 / 3.0) <= 1e-15 &&
              std::fabs(tA2 - 0.5) <= 1e-15 &&
              std::fabs(tF3 - 1.5) <= 1e-15 && std::fabs(tAp) <= 1e-15;
    ck.report("threshold-spot-values", ok,
              ok ? "" : num_pair(tA3, 2.0 / 3.0) + "; " + num_pair(tA2, 0.5) +
                        "; " + num_pair(tF3, 1.5) + "; " + num_pair(tAp, 0.0));
  }

  // Product absorption bound: symmetric quarter powers have the closed form
  // d = 1/8 at eps = 1, and the inequality must hold on a coarse grid.
  {
    const double d = young_product_bound(0.25, 0.25, 1.0);
    bool ok = std::fabs(d - 0.125) <= 1e-12;
    std::string detail = ok ? "" : num_pair(d, 0.125);
    if (ok) {
      const double ds[][3] = {{0.25, 0.25, 1.0}, {0.3, 0.5, 0.7}, {0.6, 0.3, 2.0}};
      for (const auto& t : ds) {
        const double dd = young_product_bound(t[0], t[1], t[2]);
        for (double a = 0.0; a <= 20.0 && ok; a += 0.5) {
          for (double b = 0.0; b <= 20.0; b += 0.5) {
            const double lhs = std::pow(a, t[0]) * std::pow(b, t[1]);
            if (lhs > t[2] * (a + b) + dd + 1e-9) {
              ok = false;
              detail = "inequality violated at a=" + std::to_string(a) +
                       ", b=" + std::to_string(b);
              break;
            }
          }
        }
        if (!ok) break;
      }
    }
    ck.report("product-absorption-bound", ok, detail);
  }

  // Power-sum lower bound constants and inequality.
  {
    const PowerSumBound b = power_sum_lower_bound(2.0, 2.0, 2.0);
    bool ok = std::fabs(b.d_hat - 1.0 / 3.0) <= 1e-12 && b.d_tilde == 3.0 &&
              b.d6 == 2.0;
    std::string detail = ok ? "" : num_pair(b.d_hat, 1.0 / 3.0);
    if (ok) {
      const PowerSumBound b2 = power_sum_lower_bound(0.5, 1.0, 2.0);
      for (double a = 0.0; a <= 30.0 && ok; a += 1.5) {
        for (double c = 0.0; c <= 30.0; c += 1.5) {
          const double lhs = std::pow(a, 0.5) + std::pow(c, 1.0) +
                             std::pow(a + 0.5, 2.0);
          const double rhs =
              b2.d_hat * std::pow(a + c + a + 0.5, b2.d6) - b2.d_tilde;
          if (lhs < rhs - 1e-9) {
            ok = false;
            detail = "inequality violated";
            break;
          }
        }
      }
    }
    ck.report("power-sum-lower-bound", ok, detail);
  }

  // Mass conservation on a short drift-diffusion run without source.
  {
    Grid g;
    g.dim = 1;
    g.cells = {64, 1};
    g.lengths = {1.0, 1.0};
    ProfileSpec u0;
    u0.kind = ProfileSpec::Kind::Gaussian;
    u0.center = {0.4, 0.0};
    u0.width = 0.1;
    u0.amplitude = 1.0;
    u0.offset = 0.2;
    ProfileSpec v0 = u0;
    v0.center = {0.6, 0.0};
    ProfileSpec w0 = u0;
    w0.center = {0.5, 0.0};
    SimState s = init_state(g, u0, v0, w0);
    ModelParams p; // linear sensitivities, unit signal dynamics
    p.n = 2;
    StepControl ctl;
    ctl.t_end = 0.05;
    MonitorConfig mc;
    mc.stride = 25;
    RunResult rr = run(s, p, ctl, mc);
    const double m0 = rr.report.rows.front().mass;
    const double m1 = rr.report.rows.back().mass;
    const bool ok = rr.report.signal == BlowupSignal::None &&
                    std::fabs(m1 - m0) <= 1e-12 * std::fabs(m0);
    ck.report("mass-conservation", ok, ok ? "" : num_pair(m1, m0));
  }

  // Homogeneous signal decay against the exact exponential.
  {
    Grid g;
    g.dim = 1;
    g.cells = {16, 1};
    g.lengths = {1.0, 1.0};
    ProfileSpec u0;
    u0.value = 2.0;
    ProfileSpec v0;
    v0.value = 1.0;
    ProfileSpec w0;
    w0.value = 1.0;
    SimState s = init_state(g, u0, v0, w0);
    ModelParams p;
    p.n = 2;
    StepControl ctl;
    ctl.t_end = 0.5;
    ctl.dt_max = 1e-4;
    MonitorConfig mc;
    mc.stride = 1000;
    RunResult rr = run(s, p, ctl, mc);
    const double want = std::exp(-1.0);
    const double got = rr.report.rows.back().sup_v;
    const bool ok = std::fabs(got - want) <= 1e-3;
    ck.report("homogeneous-signal-decay", ok, ok ? "" : num_pair(got, want));
  }

  out << (ck.all_ok ? "selfcheck: all checks passed\n"
                    : "selfcheck: FAILURES above\n");
  return ck.all_ok;
}

} // namespace arclab
