#include "arclab/serialize.hpp"

#include <cstdio>
#include <string>

#include "arclab/version.hpp"
#include "json.hpp"

namespace arclab {

namespace {

using nlohmann::json;

json violations_json(const std::vector<ConstraintViolation>& vs) {
  json arr = json::array();
  for (const auto& v : vs)
    arr.push_back({{"constraint", v.constraint},
                   {"value", v.value},
                   {"margin", v.margin}});
  return arr;
}

json srange_json(const SRange& r) {
  json j;
  j["lo"] = r.lo;
  j["unbounded"] = r.unbounded;
  if (!r.unbounded) j["hi"] = r.hi;
  return j;
}

json certificate_fragment(const ExponentCertificate& cert,
                          const ModelParams& p) {
  const ExponentChoice& c = cert.choice;
  json j;
  j["choice"] = {{"s", c.s},           {"p", c.p},
                 {"q", c.q},           {"r", c.r},
                 {"theta", c.theta},   {"theta_p", c.theta_p},
                 {"theta_t", c.theta_t}, {"theta_t_p", c.theta_t_p},
                 {"mu_y", c.mu_y},     {"mu_y_p", c.mu_y_p},
                 {"mu_t", c.mu_t},     {"mu_t_p", c.mu_t_p}};
  j["weights"] = {{"a1", cert.a1},   {"a2", cert.a2},   {"a3", cert.a3},
                  {"a4", cert.a4},   {"a1t", cert.a1t}, {"a2t", cert.a2t},
                  {"a3t", cert.a3t}, {"a4t", cert.a4t}};
  j["kappas"] = {{"kappa1", cert.kappa1},
                 {"kappa2", cert.kappa2},
                 {"kappa3", cert.kappa3}};
  j["sums"] = {{"sum_bg1", cert.sum_bg1},
               {"sum_bg2", cert.sum_bg2},
               {"sum_bg1t", cert.sum_bg1t},
               {"sum_bg2t", cert.sum_bg2t}};
  j["s_admissible"] = {{"attraction", srange_json(admissible_s_range(p.alpha, p.n))},
                       {"repulsion", srange_json(admissible_s_range(p.gamma, p.n))}};
  return j;
}

} // namespace

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string verdict_json(const RegimeVerdict& v) {
  json j;
  j["case"] = v.case_id;
  j["decision"] = decision_label(v.decision);
  if (v.threshold_name) j["threshold_name"] = threshold_label(*v.threshold_name);
  if (v.threshold_value) j["threshold_value"] = *v.threshold_value;
  if (v.m1_required) j["m1_required"] = *v.m1_required;
  json sc = json::array();
  for (const auto& s : v.side_conditions)
    sc.push_back({{"id", s.id},
                  {"description", s.description},
                  {"constant_unspecified", s.constant_unspecified}});
  j["side_conditions"] = sc;
  return j.dump();
}

std::string certificate_json(const ExponentCertificate& cert,
                             const ModelParams& p) {
  return certificate_fragment(cert, p).dump();
}

std::string search_outcome_json(const SearchOutcome& out,
                                const ModelParams& p) {
  json j;
  j["feasible"] = out.feasible();
  if (out.feasible()) {
    j["certificate"] = certificate_fragment(*out.certificate, p);
  } else {
    j["ladder_p_last"] = out.ladder_p_last;
    j["ladder_omega_last"] = out.ladder_omega_last;
    j["failures"] = violations_json(out.last_rung_failures);
  }
  return j.dump();
}

std::string report_summary_json(const MonitorReport& report) {
  json j;
  j["classification"] = run_class_label(report.classification);
  j["signal"] = blowup_signal_label(report.signal);
  if (report.signal != BlowupSignal::None) j["signal_time"] = report.signal_time;
  j["steps_taken"] = report.steps_taken;
  j["final_time"] = report.final_time;
  j["clamp_events"] = report.clamp_events;
  j["rows"] = report.rows.size();
  j["bounds"] = {{"mass_initial", report.ctx.mass.initial_mass},
                 {"mass_composite_min", report.ctx.mass.composite_min},
                 {"mass_composite_max", report.ctx.mass.composite_max},
                 {"mass_effective", report.ctx.mass.effective},
                 {"sup_v0", report.ctx.sup_v0},
                 {"sup_w0", report.ctx.sup_w0}};
  j["monitor"] = {{"p", report.ctx.cfg.p},
                  {"q", report.ctx.cfg.q},
                  {"r", report.ctx.cfg.r},
                  {"u_max", report.ctx.cfg.u_max},
                  {"stride", report.ctx.cfg.stride},
                  {"growth_threshold", report.ctx.cfg.growth_threshold}};
  json viol = json::array();
  for (const auto& v : report.violations)
    viol.push_back({{"bound", v.bound}, {"t", v.t}, {"excess", v.excess}});
  j["violations"] = viol;
  if (!report.rows.empty()) {
    const MonitorRow& r = report.rows.back();
    j["final"] = {{"t", r.t},         {"mass", r.mass}, {"sup_u", r.sup_u},
                  {"sup_v", r.sup_v}, {"sup_w", r.sup_w}, {"lp_u", r.lp_u},
                  {"y", r.y}};
  }
  j["note"] = "boundedness is monitored at the configured exponents (p, 2q, "
              "2r) only; a bounded-consistent verdict is evidence at those "
              "exponents, not a statement for every exponent";
  return j.dump();
}

std::string wrap_document(const std::string& command,
                          const std::string& resolved_config_json,
                          const std::string& result_key,
                          const std::string& result_fragment) {
  json j;
  j["command"] = command;
  j["version"] = kVersion;
  j["config"] = json::parse(resolved_config_json);
  j[result_key] = json::parse(result_fragment);
  return j.dump(2) + "\n";
}

std::string atlas_csv(const Atlas& a) {
  std::string out =
      "axis1,axis2,case_id,threshold_name,threshold_value,decision,"
      "side_conditions\n";
  for (const AtlasCell& c : a.cells) {
    out += fmt17(c.axis1_value);
    out += ',';
    out += fmt17(c.axis2_value);
    out += ',';
    out += c.verdict.case_id;
    out += ',';
    if (c.verdict.threshold_name)
      out += threshold_label(*c.verdict.threshold_name);
    out += ',';
    if (c.verdict.threshold_value) out += fmt17(*c.verdict.threshold_value);
    out += ',';
    out += decision_label(c.verdict.decision);
    out += ',';
    for (std::size_t i = 0; i < c.verdict.side_conditions.size(); ++i) {
      if (i) out += ';';
      out += c.verdict.side_conditions[i].id;
      if (c.verdict.side_conditions[i].constant_unspecified)
        out += "(unspecified-constant)";
    }
    out += '\n';
  }
  return out;
}

std::string report_csv(const MonitorReport& report) {
  std::string out = "t,mass,sup_u,sup_v,sup_w,lp_u,y,dt\n";
  for (const MonitorRow& r : report.rows) {
    out += fmt17(r.t);
    out += ',';
    out += fmt17(r.mass);
    out += ',';
    out += fmt17(r.sup_u);
    out += ',';
    out += fmt17(r.sup_v);
    out += ',';
    out += fmt17(r.sup_w);
    out += ',';
    out += fmt17(r.lp_u);
    out += ',';
    out += fmt17(r.y);
    out += ',';
    out += fmt17(r.dt);
    out += '\n';
  }
  return out;
}

std::string snapshot_csv(const SimState& s) {
  const Grid& g = s.grid;
  const int nx = g.nx(), ny = g.ny();
  std::string out = g.dim == 2 ? "ix,iy,x,y,u,v,w\n" : "ix,x,u,v,w\n";
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      const std::size_t i = static_cast<std::size_t>(ix + nx * iy);
      out += std::to_string(ix);
      out += ',';
      if (g.dim == 2) {
        out += std::to_string(iy);
        out += ',';
      }
      out += fmt17((ix + 0.5) * g.hx());
      out += ',';
      if (g.dim == 2) {
        out += fmt17((iy + 0.5) * g.hy());
        out += ',';
      }
      out += fmt17(s.u[i]);
      out += ',';
      out += fmt17(s.v[i]);
      out += ',';
      out += fmt17(s.w[i]);
      out += '\n';
    }
  }
  return out;
}

} // namespace arclab
