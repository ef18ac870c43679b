#include "arclab/monitors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pow_e.hpp"

namespace arclab {

namespace {

constexpr double kRelTol = 1e-8; // slack on enforced bounds before flagging

// Compensated summation keeps the quadrature honest on long runs.
struct Kahan {
  double s = 0.0, c = 0.0;
  void add(double x) {
    const double y = x - c;
    const double t = s + y;
    c = (t - s) - y;
    s = t;
  }
};

double field_mass(const std::vector<double>& f, double cell_volume) {
  Kahan k;
  for (double x : f) k.add(x);
  return k.s * cell_volume;
}

double field_max(const std::vector<double>& f) {
  double m = 0.0;
  for (double x : f) m = std::max(m, x);
  return m;
}

// Squared central-difference gradient with reflected boundary ghosts.
double grad_sq(const std::vector<double>& f, const Grid& g, int ix, int iy) {
  const int nx = g.nx(), ny = g.ny();
  const int xm = ix > 0 ? ix - 1 : 0;
  const int xp = ix + 1 < nx ? ix + 1 : nx - 1;
  const double gx = (f[static_cast<std::size_t>(xp + nx * iy)] -
                     f[static_cast<std::size_t>(xm + nx * iy)]) /
                    (2.0 * g.hx());
  double g2 = gx * gx;
  if (g.dim == 2) {
    const int ym = iy > 0 ? iy - 1 : 0;
    const int yp = iy + 1 < ny ? iy + 1 : ny - 1;
    const double gy = (f[static_cast<std::size_t>(ix + nx * yp)] -
                       f[static_cast<std::size_t>(ix + nx * ym)]) /
                      (2.0 * g.hy());
    g2 += gy * gy;
  }
  return g2;
}

} // namespace

void validate_monitor_config(const MonitorConfig& cfg) {
  std::string msg;
  auto fail = [&](const char* m) {
    if (!msg.empty()) msg += "; ";
    msg += m;
  };
  if (!(cfg.p > 1.0)) fail("monitor p must exceed 1");
  if (!(cfg.q >= 1.0)) fail("monitor q must be at least 1");
  if (!(cfg.r >= 1.0)) fail("monitor r must be at least 1");
  if (!(cfg.u_max > 0.0)) fail("monitor u_max must be positive");
  if (cfg.stride < 1) fail("monitor stride must be positive");
  if (!(cfg.growth_threshold >= 0.0))
    fail("monitor growth_threshold must be nonnegative");
  if (!msg.empty()) throw std::invalid_argument(msg);
}

MassBound compute_mass_bound(double initial_mass, const ModelParams& p,
                             double domain_volume) {
  MassBound b;
  b.initial_mass = initial_mass;
  if (p.logistic) {
    const double kplus = std::max(p.k, 0.0);
    const double level =
        pow_e(kplus / p.mu, 1.0 / (p.beta - 1.0)) * domain_volume;
    b.composite_min = std::min(initial_mass, level);
    b.composite_max = std::max(initial_mass, level);
  } else {
    b.composite_min = initial_mass;
    b.composite_max = initial_mass;
  }
  b.effective = b.composite_max;
  return b;
}

MonitorContext make_monitor_context(const SimState& initial,
                                    const ModelParams& p,
                                    const MonitorConfig& cfg) {
  validate_monitor_config(cfg);
  MonitorContext ctx;
  ctx.cfg = cfg;
  const double m0 = field_mass(initial.u, initial.grid.cell_volume());
  ctx.mass = compute_mass_bound(m0, p, initial.grid.domain_volume());
  ctx.sup_v0 = field_max(initial.v);
  ctx.sup_w0 = field_max(initial.w);
  return ctx;
}

MonitorRow record(MonitorReport& report, const SimState& s,
                  const ModelParams& p, double dt_used) {
  (void)p;
  const Grid& g = s.grid;
  const int nx = g.nx(), ny = g.ny();
  const double vol = g.cell_volume();
  const MonitorConfig& cfg = report.ctx.cfg;

  MonitorRow row;
  row.t = s.t;
  row.dt = dt_used;
  row.mass = field_mass(s.u, vol);
  row.sup_u = field_max(s.u);
  row.sup_v = field_max(s.v);
  row.sup_w = field_max(s.w);

  Kahan lp, yk;
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      const std::size_t i = static_cast<std::size_t>(ix + nx * iy);
      const double ui = s.u[i];
      lp.add(pow_e(ui, cfg.p));
      yk.add(pow_e(ui + 1.0, cfg.p));
      yk.add(pow_e(grad_sq(s.v, g, ix, iy), cfg.q));
      yk.add(pow_e(grad_sq(s.w, g, ix, iy), cfg.r));
    }
  }
  row.lp_u = lp.s * vol;
  row.y = yk.s * vol;

  const MassBound& mb = report.ctx.mass;
  if (row.mass > mb.effective * (1.0 + kRelTol)) {
    const double excess =
        mb.effective > 0.0 ? row.mass / mb.effective - 1.0 : row.mass;
    report.violations.push_back({"mass", s.t, excess});
  }
  if (row.sup_v > report.ctx.sup_v0 * (1.0 + kRelTol)) {
    const double excess = report.ctx.sup_v0 > 0.0
                              ? row.sup_v / report.ctx.sup_v0 - 1.0
                              : row.sup_v;
    report.violations.push_back({"sup_v", s.t, excess});
  }
  if (row.sup_w > report.ctx.sup_w0 * (1.0 + kRelTol)) {
    const double excess = report.ctx.sup_w0 > 0.0
                              ? row.sup_w / report.ctx.sup_w0 - 1.0
                              : row.sup_w;
    report.violations.push_back({"sup_w", s.t, excess});
  }

  report.rows.push_back(row);
  return row;
}

RunClass classify_run(const MonitorReport& report) {
  if (report.signal != BlowupSignal::None) return RunClass::BlowupSuspected;
  if (!report.violations.empty()) return RunClass::Inconclusive;
  if (report.rows.empty()) return RunClass::BoundedConsistent;

  const double t0 = report.rows.front().t;
  const double t1 = report.rows.back().t;
  if (!(t1 > t0)) return RunClass::BoundedConsistent;
  const double t_lo = t0 + 0.75 * (t1 - t0);

  // First recorded row inside the last quarter of the time span.
  const MonitorRow* lo = nullptr;
  for (const MonitorRow& r : report.rows) {
    if (r.t >= t_lo) {
      lo = &r;
      break;
    }
  }
  if (lo == nullptr) lo = &report.rows.back();
  const MonitorRow& hi = report.rows.back();
  if (!(hi.t > lo->t)) return RunClass::BoundedConsistent;

  const double ref = std::max(lo->lp_u, 1e-300);
  const double rate = (hi.lp_u - lo->lp_u) / (ref * (hi.t - lo->t));
  return rate < report.ctx.cfg.growth_threshold ? RunClass::BoundedConsistent
                                                : RunClass::Inconclusive;
}

const char* run_class_label(RunClass c) {
  switch (c) {
    case RunClass::BoundedConsistent: return "bounded-consistent";
    case RunClass::BlowupSuspected: return "blow-up-suspected";
    case RunClass::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

const char* blowup_signal_label(BlowupSignal s) {
  switch (s) {
    case BlowupSignal::None: return "none";
    case BlowupSignal::DtCollapse: return "dt-collapse";
    case BlowupSignal::Negativity: return "negativity";
    case BlowupSignal::NonFinite: return "non-finite";
    case BlowupSignal::SupExceeded: return "sup-exceeded";
  }
  return "unknown";
}

} // namespace arclab
