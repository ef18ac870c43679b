#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "arclab/model.hpp"
#include "arclab/solver.hpp"

namespace arclab {

// Total-mass ceiling for u.  Both composites of the initial mass m and the
// logistic equilibrium level (k+/mu)^{1/(beta-1)} |Omega| are reported; the
// max-composite is the one enforced, since the comparison argument bounds
// the mass ODE from above by whichever of the two dominates.  Non-logistic
// runs use m for all three.
struct MassBound {
  double initial_mass = 0.0;
  double composite_min = 0.0; // min{m, (k+/mu)^{1/(beta-1)} |Omega|}
  double composite_max = 0.0; // max{m, (k+/mu)^{1/(beta-1)} |Omega|}
  double effective = 0.0;     // enforced bound
};

MassBound compute_mass_bound(double initial_mass, const ModelParams& p,
                             double domain_volume);

struct MonitorConfig {
  double p = 4.0; // exponent of the tracked integral of u^p
  double q = 2.0; // gradient-integral exponent for v (|grad v|^{2q})
  double r = 2.0; // gradient-integral exponent for w
  double u_max = 1e6;
  std::int64_t stride = 10;
  double growth_threshold = 0.01; // relative growth per unit time
};

// Throws std::invalid_argument on out-of-range monitor settings.
void validate_monitor_config(const MonitorConfig& cfg);

// Frozen at run start: the enforced bounds plus quadrature context.
struct MonitorContext {
  MonitorConfig cfg;
  MassBound mass;
  double sup_v0 = 0.0;
  double sup_w0 = 0.0;
};

MonitorContext make_monitor_context(const SimState& initial,
                                    const ModelParams& p,
                                    const MonitorConfig& cfg);

struct MonitorRow {
  double t = 0.0;
  double mass = 0.0;
  double sup_u = 0.0, sup_v = 0.0, sup_w = 0.0;
  double lp_u = 0.0; // integral of u^p
  double y = 0.0;    // integral of (u+1)^p + |grad v|^{2q} + |grad w|^{2r}
  double dt = 0.0;   // step size that produced this state
};

struct BoundViolation {
  std::string bound; // "mass", "sup_v", "sup_w"
  double t = 0.0;
  double excess = 0.0; // relative overshoot past the bound
};

enum class RunClass { BoundedConsistent, BlowupSuspected, Inconclusive };

const char* run_class_label(RunClass c);

enum class BlowupSignal { None, DtCollapse, Negativity, NonFinite, SupExceeded };

const char* blowup_signal_label(BlowupSignal s);

struct MonitorReport {
  MonitorContext ctx;
  std::vector<MonitorRow> rows; // strictly increasing in t
  std::vector<BoundViolation> violations;
  BlowupSignal signal = BlowupSignal::None;
  double signal_time = 0.0;
  RunClass classification = RunClass::Inconclusive;
  std::int64_t steps_taken = 0;
  double final_time = 0.0;
  std::int64_t clamp_events = 0;
};

// Quadrature row for the current state (volume-weighted sums; gradients by
// central differences with reflected boundary ghosts).  Appends the row and
// any bound violations to the report.
MonitorRow record(MonitorReport& report, const SimState& s,
                  const ModelParams& p, double dt_used);

// Pure function of the completed report: blow-up-suspected on any signal,
// bounded-consistent when nothing was violated and the tracked integral of
// u^p grew by less than growth_threshold per unit time over the last
// quarter of the time span, inconclusive otherwise.
RunClass classify_run(const MonitorReport& report);

} // namespace arclab
