#pragma once

#include <vector>

#include "arclab/model.hpp"
#include "arclab/monitors.hpp"
#include "arclab/solver.hpp"

namespace arclab {

struct RunResult {
  SimState state;
  MonitorReport report;
  std::vector<SimState> snapshots; // one per reached snapshot time, in order
};

// Advances the state with stable_dt-sized explicit steps until t_end, a
// blow-up signal, or the step budget, recording a monitor row every
// `stride` steps and after the final step.  Blow-up signals (time-step
// collapse, negativity breach, non-finite values, sup_u past u_max) end the
// run and are classified, never thrown.  Steps land exactly on requested
// snapshot times; times past the end of the run produce no snapshot.
RunResult run(const SimState& initial, const ModelParams& p,
              const StepControl& ctl, const MonitorConfig& mc,
              const std::vector<double>& snapshot_times = {});

} // namespace arclab
