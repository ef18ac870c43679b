#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "arclab/config.hpp"
#include "arclab/driver.hpp"
#include "arclab/regime.hpp"
#include "arclab/selfcheck.hpp"
#include "arclab/serialize.hpp"
#include "arclab/version.hpp"

namespace {

using namespace arclab;

constexpr int kOk = 0;
constexpr int kNegative = 1; // blow-up-suspected / infeasible / failed checks
constexpr int kUsage = 2;    // bad invocation, config or schema problem

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write output file: " + path.string());
  out << text;
}

std::filesystem::path prepare_out_dir(const RunConfig& cfg,
                                      const std::string& out_flag) {
  std::filesystem::path dir = out_flag.empty() ? cfg.output.dir : out_flag;
  std::filesystem::create_directories(dir);
  return dir;
}

const ModelParams& need_model(const RunConfig& cfg, const char* cmd) {
  if (!cfg.model)
    throw ConfigError(std::string(cmd) + " requires a model block");
  return *cfg.model;
}

int cmd_classify(const RunConfig& cfg) {
  const ModelParams& p = need_model(cfg, "classify");
  RegimeVerdict v = verdict(p);
  std::cout << wrap_document("classify", cfg.raw, "verdict", verdict_json(v));
  return kOk;
}

int cmd_certify(const RunConfig& cfg) {
  const ModelParams& p = need_model(cfg, "certify");
  SearchOutcome out = search_certificate(p);
  std::cout << wrap_document("certify", cfg.raw, "search",
                             search_outcome_json(out, p));
  return out.feasible() ? kOk : kNegative;
}

int cmd_simulate(const RunConfig& cfg, const std::string& out_flag,
                 std::int64_t stride_flag) {
  const ModelParams& p = need_model(cfg, "simulate");
  if (!cfg.grid) throw ConfigError("simulate requires a grid block");
  if (!cfg.u0) throw ConfigError("simulate requires an initial block");

  MonitorConfig mc = cfg.monitor;
  if (stride_flag > 0) mc.stride = stride_flag;
  if (cfg.monitor_from_certificate) {
    SearchOutcome so = search_certificate(p);
    if (so.feasible()) {
      mc.p = so.certificate->choice.p;
      mc.q = so.certificate->choice.q;
      mc.r = so.certificate->choice.r;
    }
  }

  SimState initial = init_state(*cfg.grid, *cfg.u0, *cfg.v0, *cfg.w0);
  RunResult res = run(initial, p, cfg.step, mc, cfg.output.snapshot_times);

  const std::filesystem::path dir = prepare_out_dir(cfg, out_flag);
  const std::string summary =
      wrap_document("simulate", cfg.raw, "summary",
                    report_summary_json(res.report));
  write_file(dir / "monitors.csv", report_csv(res.report));
  write_file(dir / "summary.json", summary);
  for (const SimState& snap : res.snapshots)
    write_file(dir / ("snapshot_" + fmt17(snap.t) + ".csv"),
               snapshot_csv(snap));
  std::cout << summary;
  return res.report.classification == RunClass::BlowupSuspected ? kNegative
                                                                : kOk;
}

int cmd_sweep(const RunConfig& cfg, const std::string& out_flag, int workers) {
  const ModelParams& p = need_model(cfg, "sweep");
  if (!cfg.sweep) throw ConfigError("sweep requires a sweep block");
  Atlas a = atlas(p, cfg.sweep->axis1, cfg.sweep->axis2, workers);
  const std::string csv = atlas_csv(a);
  const std::filesystem::path dir = prepare_out_dir(cfg, out_flag);
  write_file(dir / "atlas.csv", csv);
  std::cout << csv;
  return kOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for a chemotaxis system with "
               "attraction, repulsion and saturating signal consumption"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  std::string config_path, out_dir;
  int workers = 1;
  std::int64_t stride = 0;

  CLI::App* classify = app.add_subcommand(
      "classify", "case and threshold verdict for a parameter point");
  classify->add_option("--config", config_path, "JSON configuration file")
      ->required();

  CLI::App* certify = app.add_subcommand(
      "certify", "search for an admissible exponent certificate");
  certify->add_option("--config", config_path, "JSON configuration file")
      ->required();

  CLI::App* simulate =
      app.add_subcommand("simulate", "run the solver with monitors");
  simulate->add_option("--config", config_path, "JSON configuration file")
      ->required();
  simulate->add_option("--out", out_dir, "output directory (overrides config)");
  simulate->add_option("--stride", stride, "monitor recording stride");

  CLI::App* sweep =
      app.add_subcommand("sweep", "verdict atlas over parameter axes");
  sweep->add_option("--config", config_path, "JSON configuration file")
      ->required();
  sweep->add_option("--out", out_dir, "output directory (overrides config)");
  sweep->add_option("--workers", workers, "worker pool size")
      ->check(CLI::PositiveNumber);

  CLI::App* check =
      app.add_subcommand("check", "run the built-in oracle suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (check->parsed()) return run_selfcheck(std::cout) ? kOk : kNegative;
    RunConfig cfg = load_config(config_path);
    if (classify->parsed()) return cmd_classify(cfg);
    if (certify->parsed()) return cmd_certify(cfg);
    if (simulate->parsed()) return cmd_simulate(cfg, out_dir, stride);
    if (sweep->parsed()) return cmd_sweep(cfg, out_dir, workers);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
