#include "arclab/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "json.hpp"

namespace arclab {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

void check_keys(const json& j, const char* where,
                const std::set<std::string>& allowed) {
  for (const auto& item : j.items()) {
    if (!allowed.count(item.key()))
      fail("unknown key \"" + item.key() + "\" in " + where +
           " (strict schema)");
  }
}

const json& need(const json& j, const char* key, const char* where) {
  auto it = j.find(key);
  if (it == j.end())
    fail(std::string("missing key \"") + key + "\" in " + where);
  return *it;
}

double get_num(const json& j, const char* key, const char* where) {
  const json& v = need(j, key, where);
  if (!v.is_number())
    fail(std::string("\"") + key + "\" in " + where + " must be a number");
  return v.get<double>();
}

double get_num_or(const json& j, const char* key, const char* where,
                  double dflt) {
  return j.contains(key) ? get_num(j, key, where) : dflt;
}

std::int64_t get_int(const json& j, const char* key, const char* where) {
  const json& v = need(j, key, where);
  if (!v.is_number_integer())
    fail(std::string("\"") + key + "\" in " + where + " must be an integer");
  return v.get<std::int64_t>();
}

std::int64_t get_int_or(const json& j, const char* key, const char* where,
                        std::int64_t dflt) {
  return j.contains(key) ? get_int(j, key, where) : dflt;
}

bool get_bool_or(const json& j, const char* key, const char* where,
                 bool dflt) {
  if (!j.contains(key)) return dflt;
  const json& v = j.at(key);
  if (!v.is_boolean())
    fail(std::string("\"") + key + "\" in " + where + " must be a boolean");
  return v.get<bool>();
}

std::string get_str(const json& j, const char* key, const char* where) {
  const json& v = need(j, key, where);
  if (!v.is_string())
    fail(std::string("\"") + key + "\" in " + where + " must be a string");
  return v.get<std::string>();
}

ModelParams parse_model(const json& j) {
  check_keys(j, "model", {"n", "m1", "m2", "m3", "chi", "xi", "K1", "K2",
                          "alpha", "gamma", "logistic", "k", "mu", "beta"});
  ModelParams p;
  p.n = static_cast<int>(get_int(j, "n", "model"));
  p.m1 = get_num(j, "m1", "model");
  p.m2 = get_num(j, "m2", "model");
  p.m3 = get_num(j, "m3", "model");
  p.chi = get_num_or(j, "chi", "model", 1.0);
  p.xi = get_num_or(j, "xi", "model", 1.0);
  p.K1 = get_num_or(j, "K1", "model", 1.0);
  p.K2 = get_num_or(j, "K2", "model", 1.0);
  p.alpha = get_num(j, "alpha", "model");
  p.gamma = get_num(j, "gamma", "model");
  p.logistic = get_bool_or(j, "logistic", "model", false);
  p.k = get_num_or(j, "k", "model", 0.0);
  p.mu = get_num_or(j, "mu", "model", 1.0);
  p.beta = get_num_or(j, "beta", "model", 2.0);
  ValidationResult vr = validate_params(p);
  if (!vr.ok()) {
    std::string msg = "model invalid: ";
    for (std::size_t i = 0; i < vr.violations.size(); ++i) {
      if (i) msg += "; ";
      msg += vr.violations[i];
    }
    fail(msg);
  }
  return p;
}

Grid parse_grid(const json& j) {
  check_keys(j, "grid", {"dim", "cells", "lengths"});
  Grid g;
  g.dim = static_cast<int>(get_int(j, "dim", "grid"));
  if (g.dim != 1 && g.dim != 2) fail("grid invalid: grid dim must be 1 or 2");
  const json& cells = need(j, "cells", "grid");
  if (!cells.is_array() || cells.empty() || cells.size() > 2)
    fail("\"cells\" in grid must be an array of 1 or 2 integers");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (!cells[i].is_number_integer())
      fail("\"cells\" in grid must be an array of 1 or 2 integers");
    g.cells[i] = cells[i].get<int>();
  }
  if (cells.size() == 1) g.cells[1] = 1;
  if (j.contains("lengths")) {
    const json& lens = j.at("lengths");
    if (!lens.is_array() || lens.empty() || lens.size() > 2)
      fail("\"lengths\" in grid must be an array of 1 or 2 numbers");
    for (std::size_t i = 0; i < lens.size(); ++i) {
      if (!lens[i].is_number())
        fail("\"lengths\" in grid must be an array of 1 or 2 numbers");
      g.lengths[i] = lens[i].get<double>();
    }
    if (lens.size() == 1) g.lengths[1] = 1.0;
  }
  if (static_cast<std::size_t>(g.dim) != cells.size())
    fail("\"cells\" in grid must list one count per dimension");
  try {
    validate_grid(g);
  } catch (const std::invalid_argument& e) {
    fail(std::string("grid invalid: ") + e.what());
  }
  return g;
}

ProfileSpec parse_profile(const json& j, const char* where) {
  if (!j.is_object()) fail(std::string(where) + " must be an object");
  const std::string type = get_str(j, "type", where);
  ProfileSpec ps;
  if (type == "constant") {
    check_keys(j, where, {"type", "value"});
    ps.kind = ProfileSpec::Kind::Constant;
    ps.value = get_num(j, "value", where);
  } else if (type == "gaussian") {
    check_keys(j, where, {"type", "center", "width", "amplitude", "offset"});
    ps.kind = ProfileSpec::Kind::Gaussian;
    if (j.contains("center")) {
      const json& c = j.at("center");
      if (!c.is_array() || c.empty() || c.size() > 2)
        fail(std::string("\"center\" in ") + where +
             " must be an array of 1 or 2 numbers");
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (!c[i].is_number())
          fail(std::string("\"center\" in ") + where +
               " must be an array of 1 or 2 numbers");
        ps.center[i] = c[i].get<double>();
      }
    }
    ps.width = get_num(j, "width", where);
    ps.amplitude = get_num(j, "amplitude", where);
    ps.offset = get_num_or(j, "offset", where, 0.0);
  } else if (type == "cosine") {
    check_keys(j, where, {"type", "mode", "amplitude", "offset"});
    ps.kind = ProfileSpec::Kind::Cosine;
    ps.mode = static_cast<int>(get_int_or(j, "mode", where, 1));
    ps.amplitude = get_num(j, "amplitude", where);
    ps.offset = get_num_or(j, "offset", where, 0.0);
  } else {
    fail(std::string("\"type\" in ") + where +
         " must be one of constant, gaussian, cosine");
  }
  return ps;
}

StepControl parse_step(const json& j) {
  check_keys(j, "step", {"cfl_safety", "dt_min", "dt_max", "t_end",
                         "clamp_tol", "max_steps"});
  StepControl c;
  c.cfl_safety = get_num_or(j, "cfl_safety", "step", c.cfl_safety);
  c.dt_min = get_num_or(j, "dt_min", "step", c.dt_min);
  c.dt_max = get_num_or(j, "dt_max", "step", c.dt_max);
  c.t_end = get_num_or(j, "t_end", "step", c.t_end);
  c.clamp_tol = get_num_or(j, "clamp_tol", "step", c.clamp_tol);
  c.max_steps = get_int_or(j, "max_steps", "step", c.max_steps);
  try {
    validate_step_control(c);
  } catch (const std::invalid_argument& e) {
    fail(std::string("step invalid: ") + e.what());
  }
  return c;
}

MonitorConfig parse_monitor(const json& j, bool& from_certificate) {
  check_keys(j, "monitor", {"p", "q", "r", "u_max", "stride",
                            "growth_threshold", "from_certificate"});
  MonitorConfig m;
  m.p = get_num_or(j, "p", "monitor", m.p);
  m.q = get_num_or(j, "q", "monitor", m.q);
  m.r = get_num_or(j, "r", "monitor", m.r);
  m.u_max = get_num_or(j, "u_max", "monitor", m.u_max);
  m.stride = get_int_or(j, "stride", "monitor", m.stride);
  m.growth_threshold =
      get_num_or(j, "growth_threshold", "monitor", m.growth_threshold);
  from_certificate = get_bool_or(j, "from_certificate", "monitor", false);
  try {
    validate_monitor_config(m);
  } catch (const std::invalid_argument& e) {
    fail(std::string("monitor invalid: ") + e.what());
  }
  return m;
}

OutputConfig parse_output(const json& j) {
  check_keys(j, "output", {"dir", "snapshot_times"});
  OutputConfig o;
  if (j.contains("dir")) o.dir = get_str(j, "dir", "output");
  if (j.contains("snapshot_times")) {
    const json& st = j.at("snapshot_times");
    if (!st.is_array())
      fail("\"snapshot_times\" in output must be an array of numbers");
    for (const auto& x : st) {
      if (!x.is_number())
        fail("\"snapshot_times\" in output must be an array of numbers");
      const double t = x.get<double>();
      if (!(t >= 0.0)) fail("snapshot times must be nonnegative");
      o.snapshot_times.push_back(t);
    }
  }
  return o;
}

SweepAxis parse_axis(const json& j, const char* where) {
  check_keys(j, where, {"param", "from", "to", "steps"});
  SweepAxis a;
  a.param = get_str(j, "param", where);
  if (a.param.empty()) fail(std::string("\"param\" in ") + where +
                            " must be a nonempty parameter name");
  a.from = get_num(j, "from", where);
  a.to = get_num(j, "to", where);
  a.steps = static_cast<int>(get_int(j, "steps", where));
  if (a.steps < 1) fail(std::string("\"steps\" in ") + where +
                        " must be at least 1");
  return a;
}

SweepConfig parse_sweep(const json& j) {
  check_keys(j, "sweep", {"axis1", "axis2"});
  SweepConfig s;
  s.axis1 = parse_axis(need(j, "axis1", "sweep"), "sweep axis1");
  if (j.contains("axis2")) {
    s.axis2 = parse_axis(j.at("axis2"), "sweep axis2");
  } else {
    s.axis2.param.clear();
    s.axis2.steps = 1;
  }
  return s;
}

json profile_json(const ProfileSpec& ps) {
  json j;
  switch (ps.kind) {
    case ProfileSpec::Kind::Constant:
      j["type"] = "constant";
      j["value"] = ps.value;
      break;
    case ProfileSpec::Kind::Gaussian:
      j["type"] = "gaussian";
      j["center"] = {ps.center[0], ps.center[1]};
      j["width"] = ps.width;
      j["amplitude"] = ps.amplitude;
      j["offset"] = ps.offset;
      break;
    case ProfileSpec::Kind::Cosine:
      j["type"] = "cosine";
      j["mode"] = ps.mode;
      j["amplitude"] = ps.amplitude;
      j["offset"] = ps.offset;
      break;
  }
  return j;
}

json resolved_json(const RunConfig& rc) {
  json j;
  if (rc.model) {
    const ModelParams& p = *rc.model;
    j["model"] = {{"n", p.n},       {"m1", p.m1},     {"m2", p.m2},
                  {"m3", p.m3},     {"chi", p.chi},   {"xi", p.xi},
                  {"K1", p.K1},     {"K2", p.K2},     {"alpha", p.alpha},
                  {"gamma", p.gamma}, {"logistic", p.logistic}, {"k", p.k},
                  {"mu", p.mu},     {"beta", p.beta}};
  }
  if (rc.grid) {
    const Grid& g = *rc.grid;
    json cells = json::array();
    json lens = json::array();
    cells.push_back(g.cells[0]);
    lens.push_back(g.lengths[0]);
    if (g.dim == 2) {
      cells.push_back(g.cells[1]);
      lens.push_back(g.lengths[1]);
    }
    j["grid"] = {{"dim", g.dim}, {"cells", cells}, {"lengths", lens}};
  }
  if (rc.u0) {
    j["initial"] = {{"u0", profile_json(*rc.u0)},
                    {"v0", profile_json(*rc.v0)},
                    {"w0", profile_json(*rc.w0)}};
  }
  j["step"] = {{"cfl_safety", rc.step.cfl_safety},
               {"dt_min", rc.step.dt_min},
               {"dt_max", rc.step.dt_max},
               {"t_end", rc.step.t_end},
               {"clamp_tol", rc.step.clamp_tol},
               {"max_steps", rc.step.max_steps}};
  j["monitor"] = {{"p", rc.monitor.p},
                  {"q", rc.monitor.q},
                  {"r", rc.monitor.r},
                  {"u_max", rc.monitor.u_max},
                  {"stride", rc.monitor.stride},
                  {"growth_threshold", rc.monitor.growth_threshold},
                  {"from_certificate", rc.monitor_from_certificate}};
  j["output"] = {{"dir", rc.output.dir},
                 {"snapshot_times", rc.output.snapshot_times}};
  if (rc.sweep) {
    json sw;
    sw["axis1"] = {{"param", rc.sweep->axis1.param},
                   {"from", rc.sweep->axis1.from},
                   {"to", rc.sweep->axis1.to},
                   {"steps", rc.sweep->axis1.steps}};
    if (!rc.sweep->axis2.param.empty()) {
      sw["axis2"] = {{"param", rc.sweep->axis2.param},
                     {"from", rc.sweep->axis2.from},
                     {"to", rc.sweep->axis2.to},
                     {"steps", rc.sweep->axis2.steps}};
    }
    j["sweep"] = sw;
  }
  return j;
}

} // namespace

RunConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    fail(std::string("config parse error: ") + e.what());
  }
  if (!j.is_object()) fail("config root must be a JSON object");
  check_keys(j, "config root",
             {"model", "grid", "initial", "step", "monitor", "output",
              "sweep"});

  RunConfig rc;
  if (j.contains("model")) rc.model = parse_model(j.at("model"));
  if (j.contains("grid")) rc.grid = parse_grid(j.at("grid"));
  if (j.contains("initial")) {
    const json& ini = j.at("initial");
    check_keys(ini, "initial", {"u0", "v0", "w0"});
    rc.u0 = parse_profile(need(ini, "u0", "initial"), "initial u0");
    rc.v0 = parse_profile(need(ini, "v0", "initial"), "initial v0");
    rc.w0 = parse_profile(need(ini, "w0", "initial"), "initial w0");
  }
  if (j.contains("step")) {
    rc.step = parse_step(j.at("step"));
    rc.has_step = true;
  }
  if (j.contains("monitor"))
    rc.monitor = parse_monitor(j.at("monitor"), rc.monitor_from_certificate);
  if (j.contains("output")) rc.output = parse_output(j.at("output"));
  if (j.contains("sweep")) rc.sweep = parse_sweep(j.at("sweep"));

  rc.raw = resolved_json(rc).dump();
  return rc;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot read config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

} // namespace arclab
