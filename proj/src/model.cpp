#include "arclab/model.hpp"

#include <cmath>
#include <stdexcept>

#include "pow_e.hpp"

namespace arclab {

ValidationResult validate_params(const ModelParams& p) {
  ValidationResult r;
  if (p.n < 2) r.violations.push_back("n must be at least 2");
  if (!(p.chi > 0.0)) r.violations.push_back("chi must be positive");
  if (!(p.xi > 0.0)) r.violations.push_back("xi must be positive");
  if (!(p.K1 > 0.0)) r.violations.push_back("K1 must be positive");
  if (!(p.K2 > 0.0)) r.violations.push_back("K2 must be positive");
  if (!(p.alpha > 0.0 && p.alpha <= 1.0))
    r.violations.push_back("alpha must lie in (0,1]");
  if (!(p.gamma > 0.0 && p.gamma <= 1.0))
    r.violations.push_back("gamma must lie in (0,1]");
  if (p.logistic) {
    if (!(p.mu > 0.0)) r.violations.push_back("mu must be positive");
    if (!(p.beta > 1.0)) r.violations.push_back("beta must exceed 1");
  }
  return r;
}

namespace {

void require_nonnegative(double s, const char* what) {
  if (!(s >= 0.0))
    throw std::domain_error(std::string(what) +
                            " is defined for nonnegative arguments only");
}

} // namespace

double eval_f(const ModelParams& p, double s) {
  require_nonnegative(s, "eval_f");
  return p.K1 * pow_e(s, p.alpha);
}

double eval_g(const ModelParams& p, double s) {
  require_nonnegative(s, "eval_g");
  return p.K2 * pow_e(s, p.gamma);
}

double eval_h(const ModelParams& p, double s) {
  require_nonnegative(s, "eval_h");
  if (!p.logistic) return 0.0;
  return p.k * s - p.mu * pow_e(s, p.beta);
}

double eval_diffusion(const ModelParams& p, double s) {
  require_nonnegative(s, "eval_diffusion");
  return pow_e(s + 1.0, p.m1 - 1.0);
}

double eval_sens_attr(const ModelParams& p, double s) {
  require_nonnegative(s, "eval_sens_attr");
  return p.chi * s * pow_e(s + 1.0, p.m2 - 1.0);
}

double eval_sens_rep(const ModelParams& p, double s) {
  require_nonnegative(s, "eval_sens_rep");
  return p.xi * s * pow_e(s + 1.0, p.m3 - 1.0);
}

} // namespace arclab
