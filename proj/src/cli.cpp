#include "fracscalar/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "fracscalar/config.hpp"
#include "fracscalar/errors.hpp"
#include "fracscalar/experiments.hpp"

namespace fracscalar {

namespace fs = std::filesystem;

int run_cli(int argc, char** argv) { return run_cli(argc, argv, std::cout, std::cerr); }

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pseudo-spectral fractional drift-diffusion simulator"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run_cmd = app.add_subcommand("run", "Run one configuration");
  run_cmd->add_option("config", config_path, "Run configuration (JSON)")->required();

  std::string sweep_path;
  int jobs = 0;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a parameter sweep");
  sweep_cmd->add_option("sweep", sweep_path, "Sweep specification (JSON)")->required();
  sweep_cmd->add_option("--jobs", jobs, "Concurrent runs (0 = all cores)");

  VerifyOpsOptions vo;
  auto* verify_cmd = app.add_subcommand("verify-ops", "Compare multiplier and kernel operator forms");
  verify_cmd->add_option("--n", vo.n, "Grid size (<= 64)");
  verify_cmd->add_option("--K", vo.lattice_radius, "Lattice radius of the periodization");
  verify_cmd->add_option("--alpha", vo.alphas, "Orders of Lambda^alpha to check");

  std::string checkpoint_path;
  std::vector<std::string> monitors;
  auto* diag_cmd = app.add_subcommand("diag", "Diagnostics of a checkpoint");
  diag_cmd->add_option("checkpoint", checkpoint_path, "final.frsc or other checkpoint")->required();
  diag_cmd->add_option("--monitors", monitors, "Monitors whose columns to compute");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*run_cmd) {
      const RunConfig cfg = load_run_config(config_path);
      const RunOutcome res = execute_run(cfg);
      const auto& traj = res.trajectory;
      if (traj.min_u_seen < -1e-6)
        err << "warning: min u reached " << traj.min_u_seen << "\n";
      if (traj.resolution_limited) err << "warning: resolution-limited growth (spectral tail > 0.01)\n";
      out << "t_final=" << traj.final_state.t << " steps=" << traj.steps
          << " max_u=" << traj.final_state.u.max() << " status="
          << (traj.unstable ? "unstable" : "completed") << "\n";
      for (const auto& m : res.monitors) out << m.monitor << ": " << status_name(m.status) << "\n";
      out << "outputs written to " << cfg.output_dir << "\n";
      if (traj.unstable) err << traj.stop_reason << "\n";
      return res.exit_code;
    }
    if (*sweep_cmd) {
      const SweepSpec spec = load_sweep_spec(sweep_path);
      const std::vector<SweepRow> rows = execute_sweep(spec, resolve_jobs(jobs));
      fs::create_directories(spec.output_dir);
      const fs::path csv = fs::path(spec.output_dir) / "sweep_summary.csv";
      std::ofstream os(csv);
      if (!os) throw Error("cannot write " + csv.string());
      write_sweep_csv(os, rows);
      write_sweep_csv(out, rows);
      return 0;
    }
    if (*verify_cmd) {
      const VerifyOpsReport rep = verify_ops(vo);
      out << rep.json << "\n";
      return rep.ok ? 0 : 1;
    }
    if (*diag_cmd) {
      if (monitors.empty()) monitors = all_monitor_names();
      out << diagnose_checkpoint(checkpoint_path, monitors) << "\n";
      return 0;
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace fracscalar
