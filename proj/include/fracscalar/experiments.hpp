#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fracscalar/config.hpp"
#include "fracscalar/diagnostics.hpp"
#include "fracscalar/monitors.hpp"

namespace fracscalar {

struct RunOutcome {
  Trajectory trajectory;
  std::vector<MonitorResult> monitors;
  /// 0 completed, 2 unstable.
  int exit_code = 0;
};

/// Runs one configuration. With write_outputs, creates output_dir and writes
/// diagnostics.csv, monitors.json and final.frsc there.
RunOutcome execute_run(const RunConfig& cfg, bool write_outputs = true);

struct SweepRow {
  double alpha = 0.0;
  double chi = 0.0;
  double r = 0.0;
  double mass = 0.0;
  double alpha_smooth = 0.0;
  std::optional<double> alpha_weak;
  double sup_linf = 0.0;
  double spectral_tail_max = 0.0;
  /// sup_t ||u||_inf < 10 ||u0||_inf e^{rT} and spectral_tail_max < 0.01.
  bool bounded = false;
  /// "completed", "unstable" or "error: ...".
  std::string status;
  /// "name=status" pairs joined by ';'.
  std::string monitor_summary;
};

/// Worker count: requested (0 = hardware), capped by FRACSCALAR_THREADS when set.
int resolve_jobs(int requested);

/// Runs every point, `jobs` at a time. Rows come back in point order. When
/// write_outputs is set each point writes into <output_dir>/point_<i>.
std::vector<SweepRow> execute_sweep(const SweepSpec& spec, int jobs, bool write_outputs = true);

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

struct VerifyOpsOptions {
  int n = 32;
  int lattice_radius = 20;
  std::vector<double> alphas{0.5, 1.0, 1.5};
  /// Relative L^2 budget for multiplier-vs-quadrature agreement.
  double tolerance = 0.02;
  int random_fields = 20;
};

struct VerifyOpsReport {
  std::string json;
  bool ok = false;
};

/// Multiplier-vs-kernel comparisons, operator constants and identity suites.
VerifyOpsReport verify_ops(const VerifyOpsOptions& options = {});

/// Diagnostics of a single checkpoint as JSON (record, maximum-principle probe,
/// and the monitors that make sense for one state).
std::string diagnose_checkpoint(const std::string& path, const std::vector<std::string>& monitors);

/// Real trigonometric polynomial with modes |k|_inf <= kmax and uniform random
/// coefficients in [-1, 1), zero mean; bit-reproducible from the seed.
RealField random_band_limited(const TorusGrid& grid, std::uint64_t seed, int kmax);

}  // namespace fracscalar
