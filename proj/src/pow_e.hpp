#pragma once

#include <cmath>

namespace arclab {

// Power dispatch shared by the coefficient evaluators and the solver inner
// loops; the common exponents of the model family avoid the full pow path.
inline double pow_e(double x, double e) {
  if (e == 0.0) return 1.0;
  if (e == 1.0) return x;
  if (e == 2.0) return x * x;
  if (e == 0.5) return std::sqrt(x);
  if (e == 0.25) return std::sqrt(std::sqrt(x));
  if (e == 1.5) return x * std::sqrt(x);
  if (e == 3.0) return x * x * x;
  if (e == 4.0) {
    const double x2 = x * x;
    return x2 * x2;
  }
  return std::pow(x, e);
}

} // namespace arclab
