#include "arclab/driver.hpp"

#include <algorithm>

#include "stepper_internal.hpp"

namespace arclab {

RunResult run(const SimState& initial, const ModelParams& p,
              const StepControl& ctl, const MonitorConfig& mc,
              const std::vector<double>& snapshot_times) {
  validate_grid(initial.grid);
  validate_step_control(ctl);

  std::vector<double> snaps = snapshot_times;
  std::sort(snaps.begin(), snaps.end());
  snaps.erase(std::unique(snaps.begin(), snaps.end()), snaps.end());
  std::size_t next_snap = 0;

  RunResult res;
  res.state = initial;
  res.report.ctx = make_monitor_context(initial, p, mc);
  record(res.report, res.state, p, 0.0);

  detail::Workspace ws;
  SimState& s = res.state;
  MonitorReport& rep = res.report;
  std::int64_t steps = 0;
  double last_dt = 0.0;

  auto record_latest = [&]() {
    if (rep.rows.empty() || s.t > rep.rows.back().t)
      record(rep, s, p, last_dt);
  };
  auto take_snapshots = [&]() {
    while (next_snap < snaps.size() && snaps[next_snap] <= s.t) {
      res.snapshots.push_back(s);
      ++next_snap;
    }
  };
  take_snapshots();

  while (s.t < ctl.t_end && steps < ctl.max_steps) {
    detail::fill_coefficients(s, p, ws);
    double dt;
    try {
      dt = detail::stable_dt_from(s, p, ctl, ws);
    } catch (const TimeStepCollapse&) {
      rep.signal = BlowupSignal::DtCollapse;
      rep.signal_time = s.t;
      break;
    }
    // Land exactly on the next snapshot time and on t_end.
    double target = ctl.t_end;
    if (next_snap < snaps.size() && snaps[next_snap] < target)
      target = snaps[next_snap];
    const double remaining = target - s.t;
    bool hits_target = false;
    if (dt >= remaining) {
      if (remaining < ctl.dt_min && target >= ctl.t_end)
        break; // within roundoff of t_end
      dt = remaining;
      hits_target = true;
    }
    try {
      const double max_u = detail::apply_step(s, p, ctl, dt, ws);
      if (max_u > mc.u_max) {
        rep.signal = BlowupSignal::SupExceeded;
        rep.signal_time = s.t;
      }
    } catch (const NegativityBreach&) {
      rep.signal = BlowupSignal::Negativity;
      rep.signal_time = s.t;
      break;
    } catch (const NonFinite&) {
      rep.signal = BlowupSignal::NonFinite;
      rep.signal_time = s.t;
      break;
    }
    if (hits_target) s.t = target;
    ++steps;
    last_dt = dt;
    take_snapshots();
    if (rep.signal != BlowupSignal::None) break;
    if (steps % mc.stride == 0) record_latest();
  }

  record_latest();
  rep.steps_taken = steps;
  rep.final_time = s.t;
  rep.clamp_events = s.clamp_events;
  rep.classification = classify_run(rep);
  return res;
}

} // namespace arclab
