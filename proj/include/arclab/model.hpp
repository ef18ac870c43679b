#pragma once

#include <string>
#include <vector>

namespace arclab {

// Coefficients of the three-field aggregation model
//
//   u_t = div( (u+1)^{m1-1} grad u
//              - chi u (u+1)^{m2-1} grad v
//              + xi  u (u+1)^{m3-1} grad w ) + h(u)
//   v_t = lap v - f(u) v
//   w_t = lap w - g(u) w
//
// with f(u) = K1 u^alpha, g(u) = K2 u^gamma and, when `logistic` is set,
// h(u) = k u - mu u^beta (h = 0 otherwise).  The dimension n is a theory
// parameter for the regime classifier and the exponent machinery; it is
// independent of any simulation grid.
struct ModelParams {
  int n = 2;
  double m1 = 1.0;
  double m2 = 1.0;
  double m3 = 1.0;
  double chi = 1.0;
  double xi = 1.0;
  double K1 = 1.0;
  double K2 = 1.0;
  double alpha = 1.0;
  double gamma = 1.0;
  bool logistic = false;
  double k = 0.0;    // read only when logistic
  double mu = 1.0;   // read only when logistic
  double beta = 2.0; // read only when logistic
};

struct ValidationResult {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Checks the admissible parameter ranges (n >= 2, chi, xi, K1, K2, mu > 0,
// alpha, gamma in (0,1], beta > 1).  k, m1, m2, m3 may be any reals.
ValidationResult validate_params(const ModelParams& p);

double eval_f(const ModelParams& p, double s);         // K1 * s^alpha
double eval_g(const ModelParams& p, double s);         // K2 * s^gamma
double eval_h(const ModelParams& p, double s);         // k*s - mu*s^beta or 0
double eval_diffusion(const ModelParams& p, double s); // (s+1)^(m1-1)
double eval_sens_attr(const ModelParams& p, double s); // chi * s * (s+1)^(m2-1)
double eval_sens_rep(const ModelParams& p, double s);  // xi * s * (s+1)^(m3-1)

} // namespace arclab
