#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arclab/model.hpp"

namespace arclab {

// Admissible integrability orders s for the signal gradient bound tied to a
// consumption exponent e: [1, inf) when e <= 1/n, [1, n/(n*e-1)) when
// e in (1/n, 1].  Outside (0,1] the range is undefined (domain error).
struct SRange {
  double lo = 1.0;
  double hi = 0.0;     // meaningful only when !unbounded (exclusive)
  bool unbounded = false;
};

SRange admissible_s_range(double exponent, int n);

// Free exponents of the interpolation-inequality ledger.  theta/theta_p,
// theta_t/theta_t_p, mu_y/mu_y_p and mu_t/mu_t_p are conjugate pairs
// (1/x + 1/x' = 1); the _t pairs and r belong to the repulsion signal.
struct ExponentChoice {
  double s = 1.0;
  double p = 1.0;
  double q = 1.0;
  double r = 1.0;
  double theta = 2.0, theta_p = 2.0;
  double theta_t = 2.0, theta_t_p = 2.0;
  double mu_y = 2.0, mu_y_p = 2.0;
  double mu_t = 2.0, mu_t_p = 2.0;
};

struct ConstraintViolation {
  std::string constraint; // e.g. "a1", "sum_bg2t", "q-lower-bound"
  double value = 0.0;
  double margin = 0.0;    // distance past the violated bound (positive)
};

// Structural requirements on a choice: all orders >= 1, conjugacy to 1e-12,
// q and r above max{(n-2)/n * theta', s/(2 mu') + 1}, and p above the
// seven-term lower bound that keeps every interpolation weight meaningful.
std::vector<ConstraintViolation> check_choice(const ExponentChoice& c,
                                              const ModelParams& p);

// Interpolation weights and absorption exponents derived from a choice.
// The four sums are the exponent totals that must stay below 1 for the
// absorption step to close.
struct ExponentCertificate {
  ExponentChoice choice;
  double a1 = 0, a2 = 0, a3 = 0, a4 = 0;     // attraction-side weights
  double a1t = 0, a2t = 0, a3t = 0, a4t = 0; // repulsion-side weights
  double kappa1 = 0, kappa2 = 0, kappa3 = 0; // absorption exponents
  double sum_bg1 = 0, sum_bg2 = 0;
  double sum_bg1t = 0, sum_bg2t = 0;
};

// Evaluates the weight formulas verbatim.  Throws std::domain_error naming
// the offending formula if a denominator vanishes.
ExponentCertificate compute_exponent_set(const ModelParams& p,
                                         const ExponentChoice& c);

struct CertificateCheck {
  std::vector<ConstraintViolation> violations;
  bool pass() const { return violations.empty(); }
};

// Strict membership of every weight, kappa and sum in (0,1).
CertificateCheck check_certificate(const ExponentCertificate& cert);

struct SearchOutcome {
  std::optional<ExponentCertificate> certificate;
  // Populated when infeasible: the constraints still failing at the largest
  // ladder rung, with their margins.
  double ladder_p_last = 0.0;
  double ladder_omega_last = 0.0;
  std::vector<ConstraintViolation> last_rung_failures;
  bool feasible() const { return certificate.has_value(); }
};

// Deterministic ladder search for a passing certificate: p in {8,16,...,2^20},
// omega in {0.75,0.6,0.55,0.51,0.501}; s follows p when both consumption
// exponents are <= 1/n and otherwise sits at 99.9% of the shared upper bound
// min n/(n*e-1); q (resp. r) is p when the exponent is <= 1/n and p/2
// otherwise; theta' = theta_t' = max(s,n)*omega; mu pairs sit just above
// max{1/(2e), n/2} * (1+1e-3).  Returns the lexicographically first passing
// rung, or an infeasibility report for the last rung.
SearchOutcome search_certificate(const ModelParams& p);

// Smallest d with a^d1 b^d2 <= eps(a+b) + d for all a,b >= 0 (d1+d2 < 1),
// obtained by solving the interior stationarity conditions numerically and
// validated on a deterministic grid.
double young_product_bound(double d1, double d2, double eps);

// Constants (d6, d_hat, d_tilde) with
//   a^d3 + b^d4 + c^d5 >= d_hat (a+b+c)^d6 - d_tilde   for all a,b,c >= 0,
// d6 = min exponent, d_hat = min{1, 3^(1-d6)}, d_tilde = 3, validated on a
// deterministic sample.
struct PowerSumBound {
  double d6 = 0, d_hat = 0, d_tilde = 0;
};

PowerSumBound power_sum_lower_bound(double d3, double d4, double d5);

} // namespace arclab
