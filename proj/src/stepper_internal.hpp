#pragma once

// Internals of the explicit finite-volume stepper, shared between the public
// single-step entry points and the time-marching driver so that per-step
// coefficient arrays are computed once and reused for both the stability
// bound and the update.

#include <cstddef>
#include <vector>

#include "arclab/model.hpp"
#include "arclab/solver.hpp"

namespace arclab::detail {

struct Workspace {
  std::size_t n = 0;
  // Per-cell coefficients refreshed at the top of every step.
  std::vector<double> cd;  // (u+1)^{m1-1}
  std::vector<double> ba;  // (u+1)^{m2-1}
  std::vector<double> br;  // (u+1)^{m3-1}
  std::vector<double> fu;  // K1 u^alpha
  std::vector<double> gu;  // K2 u^gamma
  std::vector<double> hu;  // k u - mu u^beta (logistic only)
  // Divergence accumulators and next-state buffers.
  std::vector<double> acc_u, acc_v, acc_w;
  std::vector<double> un, vn, wn;

  void resize(std::size_t cells, bool logistic);
};

// Fill the coefficient arrays from the current state.
void fill_coefficients(const SimState& s, const ModelParams& p, Workspace& ws);

// Stability bound from the already-filled coefficients.  Throws
// TimeStepCollapse when the raw bound falls below ctl.dt_min; the returned
// value is clipped to ctl.dt_max.
double stable_dt_from(const SimState& s, const ModelParams& p,
                      const StepControl& ctl, const Workspace& ws);

// One forward-Euler update of length dt using the filled coefficients.
// Applies negativity clamping per ctl.clamp_tol and throws NegativityBreach /
// NonFinite on hard failures.  Returns the new maximum of u.
double apply_step(SimState& s, const ModelParams& p, const StepControl& ctl,
                  double dt, Workspace& ws);

} // namespace arclab::detail
