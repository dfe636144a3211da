#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fracscalar/diagnostics.hpp"
#include "fracscalar/model.hpp"

namespace fracscalar {

enum class MonitorStatus {
  green,
  violated,
  /// Constant not explicit: rhs_or_ratio holds a ratio, no verdict.
  ratio,
  /// Hypothesis not met under the run's parameters.
  skipped,
};

std::string status_name(MonitorStatus s);

struct MonitorResult {
  std::string monitor;
  bool hypothesis_met = false;
  double lhs = 0.0;
  double rhs_or_ratio = 0.0;
  MonitorStatus status = MonitorStatus::skipped;
  /// lhs - rhs for violated monitors.
  double margin = 0.0;
  std::string note;
};

struct MonitorOptions {
  std::vector<std::string> monitors = all_monitor_names();
  double s_max = 3.0;
  double p_strong = 2.0;
};

/// One result per requested monitor, evaluated from the trajectory records.
/// Time integrals use the trapezoid rule over record times.
std::vector<MonitorResult> check_bounds(const Trajectory& traj, const ModelParams& p,
                                        const MonitorOptions& options = {});

/// d ubar/dt - [chi ubar^2 + r ubar (1 - ubar) - Lambda^alpha u(x*)] between consecutive
/// records (difference quotient against the trapezoid average of the bracket).
struct OdeResidual {
  std::vector<double> t_mid;
  std::vector<double> residual;
  std::vector<double> bracket;
  double max_residual = 0.0;
  double max_abs_bracket = 0.0;
};

OdeResidual ode_residual_monitor(const Trajectory& traj, const ModelParams& p);

/// Smooth space-time test function with its time derivative.
struct TestFunction {
  std::function<double(double x1, double x2, double t)> value;
  std::function<double(double x1, double x2, double t)> dt;
};

/// Space-time residual of the weak formulation over the trajectory snapshots:
///   int int u (-phi_t + Lambda^alpha phi - eps Delta phi) + chi u B(u).grad phi - f(u) phi
///   - int u0 phi(0).
/// Requires snapshots (RunOptions::keep_snapshots).
double weak_residual(const Trajectory& traj, const ModelParams& p, const TestFunction& phi);

/// JSON array of {monitor, hypothesis_met, lhs, rhs_or_ratio, status, ...}.
std::string monitors_to_json(const std::vector<MonitorResult>& results);

}  // namespace fracscalar
