#include "arclab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>

#include "pow_e.hpp"
#include "stepper_internal.hpp"

namespace arclab {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string join(const std::vector<std::string>& msgs) {
  std::string out;
  for (std::size_t i = 0; i < msgs.size(); ++i) {
    if (i) out += "; ";
    out += msgs[i];
  }
  return out;
}

std::string cell_msg(const char* what, const char* field, int cell,
                     double value, double t) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%s in %s at cell %d (value %.17g, t %.17g)",
                what, field, cell, value, t);
  return buf;
}

double sample_profile(const ProfileSpec& ps, const Grid& g, double x,
                      double y, const char* field) {
  switch (ps.kind) {
    case ProfileSpec::Kind::Constant:
      return ps.value;
    case ProfileSpec::Kind::Gaussian: {
      if (!(ps.width > 0.0))
        throw std::invalid_argument(std::string("gaussian width must be "
                                                "positive for ") + field);
      double dx = x - ps.center[0];
      double r2 = dx * dx;
      if (g.dim == 2) {
        double dy = y - ps.center[1];
        r2 += dy * dy;
      }
      return ps.offset + ps.amplitude * std::exp(-r2 / (2.0 * ps.width * ps.width));
    }
    case ProfileSpec::Kind::Cosine: {
      double c = std::cos(ps.mode * kPi * x / g.lengths[0]);
      if (g.dim == 2) c *= std::cos(ps.mode * kPi * y / g.lengths[1]);
      return ps.offset + ps.amplitude * c;
    }
  }
  throw std::logic_error("unreachable profile kind");
}

void fill_field(std::vector<double>& out, const ProfileSpec& ps, const Grid& g,
                const char* field) {
  const int nx = g.nx(), ny = g.ny();
  const double hx = g.hx(), hy = g.hy();
  out.resize(static_cast<std::size_t>(g.ncells()));
  for (int iy = 0; iy < ny; ++iy) {
    double y = (iy + 0.5) * hy;
    for (int ix = 0; ix < nx; ++ix) {
      double x = (ix + 0.5) * hx;
      double s = sample_profile(ps, g, x, y, field);
      if (!(s >= 0.0)) {
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "initial %s is negative at cell %d (value %.17g)", field,
                      ix + nx * iy, s);
        throw std::invalid_argument(buf);
      }
      out[static_cast<std::size_t>(ix + nx * iy)] = s;
    }
  }
}

void check_state_sizes(const SimState& s) {
  const std::size_t n = static_cast<std::size_t>(s.grid.ncells());
  if (s.u.size() != n || s.v.size() != n || s.w.size() != n)
    throw std::invalid_argument("state field sizes do not match the grid");
}

} // namespace

void validate_grid(const Grid& g) {
  std::vector<std::string> msgs;
  if (g.dim != 1 && g.dim != 2) msgs.push_back("grid dim must be 1 or 2");
  if (g.cells[0] < 4) msgs.push_back("grid cells[0] must be at least 4");
  if (g.dim == 2 && g.cells[1] < 4)
    msgs.push_back("grid cells[1] must be at least 4");
  if (!(g.lengths[0] > 0.0)) msgs.push_back("grid lengths[0] must be positive");
  if (g.dim == 2 && !(g.lengths[1] > 0.0))
    msgs.push_back("grid lengths[1] must be positive");
  if (!msgs.empty()) throw std::invalid_argument(join(msgs));
}

void validate_step_control(const StepControl& c) {
  std::vector<std::string> msgs;
  if (!(c.cfl_safety > 0.0 && c.cfl_safety <= 1.0))
    msgs.push_back("cfl_safety must lie in (0, 1]");
  if (!(c.dt_min > 0.0)) msgs.push_back("dt_min must be positive");
  if (!(c.dt_max >= c.dt_min)) msgs.push_back("dt_max must be at least dt_min");
  if (!(c.t_end >= 0.0)) msgs.push_back("t_end must be nonnegative");
  if (!(c.clamp_tol >= 0.0)) msgs.push_back("clamp_tol must be nonnegative");
  if (c.max_steps < 1) msgs.push_back("max_steps must be positive");
  if (!msgs.empty()) throw std::invalid_argument(join(msgs));
}

SimState init_state(const Grid& g, const ProfileSpec& u0,
                    const ProfileSpec& v0, const ProfileSpec& w0) {
  validate_grid(g);
  SimState s;
  s.grid = g;
  s.t = 0.0;
  fill_field(s.u, u0, g, "u0");
  fill_field(s.v, v0, g, "v0");
  fill_field(s.w, w0, g, "w0");
  return s;
}

namespace detail {

void Workspace::resize(std::size_t cells, bool logistic) {
  if (n == cells && (!logistic || hu.size() == cells)) return;
  n = cells;
  cd.resize(cells);
  ba.resize(cells);
  br.resize(cells);
  fu.resize(cells);
  gu.resize(cells);
  if (logistic) hu.resize(cells);
  acc_u.resize(cells);
  acc_v.resize(cells);
  acc_w.resize(cells);
  un.resize(cells);
  vn.resize(cells);
  wn.resize(cells);
}

void fill_coefficients(const SimState& s, const ModelParams& p, Workspace& ws) {
  check_state_sizes(s);
  const std::size_t n = s.u.size();
  ws.resize(n, p.logistic);
  const double e1 = p.m1 - 1.0, e2 = p.m2 - 1.0, e3 = p.m3 - 1.0;
  const bool same_fg = (p.alpha == p.gamma);
  for (std::size_t i = 0; i < n; ++i) {
    const double ui = s.u[i];
    const double up1 = ui + 1.0;
    const double d = pow_e(up1, e1);
    ws.cd[i] = d;
    ws.ba[i] = (e2 == e1) ? d : pow_e(up1, e2);
    ws.br[i] = (e3 == e1) ? d : (e3 == e2 ? ws.ba[i] : pow_e(up1, e3));
    const double ua = pow_e(ui, p.alpha);
    ws.fu[i] = p.K1 * ua;
    ws.gu[i] = same_fg ? p.K2 * ua : p.K2 * pow_e(ui, p.gamma);
    if (p.logistic) ws.hu[i] = p.k * ui - p.mu * pow_e(ui, p.beta);
  }
}

double stable_dt_from(const SimState& s, const ModelParams& p,
                      const StepControl& ctl, const Workspace& ws) {
  const Grid& g = s.grid;
  const int nx = g.nx(), ny = g.ny();
  const double inv_hx = 1.0 / g.hx();
  const double inv_hy = 1.0 / g.hy();
  const auto& u = s.u;
  const auto& v = s.v;
  const auto& w = s.w;

  double dmax = 0.0, amax = 0.0;
  auto scan_face = [&](std::size_t c, std::size_t r, double inv_h) {
    dmax = std::max(dmax, 0.5 * (ws.cd[c] + ws.cd[r]));
    const double gv = (v[r] - v[c]) * inv_h;
    const double gw = (w[r] - w[c]) * inv_h;
    const double speed = p.chi * std::max(ws.ba[c], ws.ba[r]) * std::fabs(gv) +
                         p.xi * std::max(ws.br[c], ws.br[r]) * std::fabs(gw);
    amax = std::max(amax, speed);
  };
  for (int iy = 0; iy < ny; ++iy) {
    const std::size_t base = static_cast<std::size_t>(iy) * nx;
    for (int ix = 0; ix + 1 < nx; ++ix) scan_face(base + ix, base + ix + 1, inv_hx);
  }
  if (g.dim == 2) {
    for (int iy = 0; iy + 1 < ny; ++iy) {
      const std::size_t base = static_cast<std::size_t>(iy) * nx;
      for (int ix = 0; ix < nx; ++ix)
        scan_face(base + ix, base + ix + nx, inv_hy);
    }
  }

  double umax = 0.0;
  for (double ui : u) umax = std::max(umax, ui);
  double rmax = std::max(p.K1 * pow_e(umax, p.alpha),
                         p.K2 * pow_e(umax, p.gamma));
  if (p.logistic)
    rmax = std::max(rmax, std::fabs(p.k) + p.mu * p.beta * pow_e(umax, p.beta - 1.0));

  const double inf = std::numeric_limits<double>::infinity();
  const double h = g.h_min();
  const double dim = static_cast<double>(g.dim);
  const double b_diff_u = dmax > 0.0 ? h * h / (2.0 * dim * dmax) : inf;
  const double b_diff_vw = h * h / (2.0 * dim);
  const double b_drift = amax > 0.0 ? h / amax : inf;
  const double b_react = rmax > 0.0 ? 1.0 / rmax : inf;
  const double raw =
      ctl.cfl_safety *
      std::min(std::min(b_diff_u, b_diff_vw), std::min(b_drift, b_react));
  if (raw < ctl.dt_min) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "stable step %.17g fell below dt_min %.17g at t %.17g", raw,
                  ctl.dt_min, s.t);
    throw TimeStepCollapse(buf);
  }
  return std::min(raw, ctl.dt_max);
}

double apply_step(SimState& s, const ModelParams& p, const StepControl& ctl,
                  double dt, Workspace& ws) {
  const Grid& g = s.grid;
  const int nx = g.nx(), ny = g.ny();
  const std::size_t n = s.u.size();
  const double inv_hx = 1.0 / g.hx();
  const double inv_hy = 1.0 / g.hy();
  const double inv_hx2 = inv_hx * inv_hx;
  const double inv_hy2 = inv_hy * inv_hy;
  const auto& u = s.u;
  const auto& v = s.v;
  const auto& w = s.w;

  std::fill(ws.acc_u.begin(), ws.acc_u.end(), 0.0);
  std::fill(ws.acc_v.begin(), ws.acc_v.end(), 0.0);
  std::fill(ws.acc_w.begin(), ws.acc_w.end(), 0.0);

  // Interior faces only: boundary faces carry zero flux.
  auto face = [&](std::size_t c, std::size_t r, double inv_h, double inv_h2) {
    const double grad_u = (u[r] - u[c]) * inv_h;
    double flux = 0.5 * (ws.cd[c] + ws.cd[r]) * grad_u;

    // Drift velocities: attraction up the v gradient, repulsion down the w
    // gradient.  Donor = upstream cell of the drift.
    const double grad_v = (v[r] - v[c]) * inv_h;
    const double vel_a = p.chi * grad_v;
    const double don_a =
        vel_a > 0.0 ? u[c] * ws.ba[c] : (vel_a < 0.0 ? u[r] * ws.ba[r] : 0.0);
    flux -= vel_a * don_a;

    const double grad_w = (w[r] - w[c]) * inv_h;
    const double vel_r = -p.xi * grad_w;
    const double don_r =
        vel_r > 0.0 ? u[c] * ws.br[c] : (vel_r < 0.0 ? u[r] * ws.br[r] : 0.0);
    flux -= vel_r * don_r;

    const double fx = flux * inv_h;
    ws.acc_u[c] += fx;
    ws.acc_u[r] -= fx;

    const double fv = (v[r] - v[c]) * inv_h2;
    ws.acc_v[c] += fv;
    ws.acc_v[r] -= fv;

    const double fw = (w[r] - w[c]) * inv_h2;
    ws.acc_w[c] += fw;
    ws.acc_w[r] -= fw;
  };
  for (int iy = 0; iy < ny; ++iy) {
    const std::size_t base = static_cast<std::size_t>(iy) * nx;
    for (int ix = 0; ix + 1 < nx; ++ix)
      face(base + ix, base + ix + 1, inv_hx, inv_hx2);
  }
  if (g.dim == 2) {
    for (int iy = 0; iy + 1 < ny; ++iy) {
      const std::size_t base = static_cast<std::size_t>(iy) * nx;
      for (int ix = 0; ix < nx; ++ix)
        face(base + ix, base + ix + nx, inv_hy, inv_hy2);
    }
  }

  std::int64_t clamps = 0;
  double max_u = 0.0;
  auto finalize = [&](double val, const char* field, std::size_t i) {
    if (!std::isfinite(val))
      throw NonFinite(cell_msg("non-finite value", field,
                               static_cast<int>(i), val, s.t));
    if (val < 0.0) {
      if (val <= -ctl.clamp_tol)
        throw NegativityBreach(cell_msg("negative value", field,
                                        static_cast<int>(i), val, s.t));
      ++clamps;
      return 0.0;
    }
    return val;
  };
  const bool has_h = p.logistic;
  for (std::size_t i = 0; i < n; ++i) {
    const double rate_u = has_h ? ws.acc_u[i] + ws.hu[i] : ws.acc_u[i];
    const double nu = finalize(u[i] + dt * rate_u, "u", i);
    const double nv = finalize(v[i] + dt * (ws.acc_v[i] - ws.fu[i] * v[i]), "v", i);
    const double nw = finalize(w[i] + dt * (ws.acc_w[i] - ws.gu[i] * w[i]), "w", i);
    ws.un[i] = nu;
    ws.vn[i] = nv;
    ws.wn[i] = nw;
    max_u = std::max(max_u, nu);
  }

  s.u.swap(ws.un);
  s.v.swap(ws.vn);
  s.w.swap(ws.wn);
  s.t += dt;
  s.clamp_events += clamps;
  return max_u;
}

} // namespace detail

double stable_dt(const SimState& s, const ModelParams& p,
                 const StepControl& c) {
  validate_grid(s.grid);
  validate_step_control(c);
  detail::Workspace ws;
  detail::fill_coefficients(s, p, ws);
  return detail::stable_dt_from(s, p, c, ws);
}

SimState step_with_dt(const SimState& s, const ModelParams& p,
                      const StepControl& c, double dt) {
  validate_grid(s.grid);
  validate_step_control(c);
  SimState next = s;
  detail::Workspace ws;
  detail::fill_coefficients(next, p, ws);
  detail::apply_step(next, p, c, dt, ws);
  return next;
}

SimState step(const SimState& s, const ModelParams& p, const StepControl& c) {
  validate_grid(s.grid);
  validate_step_control(c);
  SimState next = s;
  detail::Workspace ws;
  detail::fill_coefficients(next, p, ws);
  const double dt = detail::stable_dt_from(next, p, c, ws);
  detail::apply_step(next, p, c, dt, ws);
  return next;
}

} // namespace arclab
