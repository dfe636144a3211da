#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fracscalar/evolution.hpp"
#include "fracscalar/grid.hpp"
#include "fracscalar/model.hpp"

namespace fracscalar {

inline constexpr int kSchemaVersion = 1;

/// u0 = mean + sum amp * cos(k1 x1) cos(k2 x2).
struct CosineTerm {
  double amp = 0.0;
  int k1 = 1;
  int k2 = 0;
};

struct InitialDataSpec {
  enum class Kind { constant, cosine_bump, periodized_gaussian, random_smooth };
  Kind kind = Kind::constant;

  /// constant: the value; cosine_bump: the mean.
  double value = 1.0;
  std::vector<CosineTerm> terms;

  /// periodized_gaussian: total mass and width; random_smooth: target mass if set.
  std::optional<double> mass;
  double sigma = 0.3;
  double center1 = 0.0;
  double center2 = 0.0;

  /// random_smooth: seed (mandatory), coefficient decay e^{-decay |k|}, modes with
  /// |k|_inf <= max_mode, and the value of the minimum after shifting.
  std::optional<std::uint64_t> seed;
  double decay = 0.5;
  int max_mode = 6;
  double shift = 0.1;

  std::string kind_name() const;
  void validate() const;
};

/// Non-negative initial data built from the spec.
RealField make_initial_data(const InitialDataSpec& spec, const TorusGrid& grid);

struct RunConfig {
  int n = 64;
  ModelParams model;
  StepperConfig stepper;
  double T = 1.0;
  InitialDataSpec initial_data;
  /// Heat-kernel time applied to u0; negative means "auto" (h^2).
  double mollify_eps = 0.0;
  int diag_every = 10;
  std::string output_dir = "out";
  std::vector<std::string> monitors = {"aee1", "aee2", "aee3", "aee4", "divB", "sv", "ode32"};
  double s_max = 3.0;
  double p_strong = 2.0;

  void validate() const;
  double effective_mollify_eps() const;
  RunOptions run_options() const;
};

/// Parse and validate; errors are ConfigError naming the field ("model.alpha", ...).
RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);
std::string run_config_to_json(const RunConfig& cfg);

/// alpha above which solutions stay smooth: max(2 - 2r/chi, 0) (0 when chi = 0).
double alpha_smooth(double chi, double r);
/// Weak-solution threshold 4(chi (chi-2r)/(chi-r) - r)/(2chi - r) when 2r < chi;
/// nullopt means every alpha > 0.
std::optional<double> alpha_weak(double chi, double r);
inline constexpr const char* kAllAlphaSentinel = "all α>0";

struct SweepSpec {
  RunConfig base;
  std::vector<double> alpha;
  std::vector<double> chi;
  std::vector<double> r;
  std::vector<double> mass;
  std::string output_dir = "sweep_out";

  /// Cartesian product of the non-empty axes applied to base.
  std::vector<RunConfig> points() const;
};

SweepSpec parse_sweep_spec(const std::string& json_text);
SweepSpec load_sweep_spec(const std::string& path);

/// Sets the initial mass (constant data: value = mass / 4 pi^2).
void set_initial_mass(InitialDataSpec& spec, double mass);

}  // namespace fracscalar
