#pragma once

#include <optional>
#include <string>

#include "fracscalar/diagnostics.hpp"
#include "fracscalar/drift.hpp"
#include "fracscalar/model.hpp"
#include "fracscalar/spectral.hpp"

namespace fracscalar {

enum class Scheme {
  /// (u_hat + dt N_hat) / (1 + dt lambda_k).
  imex1,
  /// exp(-dt lambda_k) (u_hat + dt N_hat).
  imex1_exact,
  /// Variable-step SBDF2:
  ///   a0 u^{n+1} + dt lambda u^{n+1} = (1+w) u^n - w^2/(1+w) u^{n-1}
  ///                                    + dt ((1+w) N^n - w N^{n-1}),
  /// a0 = (1+2w)/(1+w), w = dt_n / dt_{n-1}; the first step is imex1.
  imex2,
};

std::string scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);

struct StepperConfig {
  double dt = 1e-3;
  bool adaptive = false;
  double dt_max = 1e-2;
  Scheme scheme = Scheme::imex1;
  double cfl_safety = 0.5;
  bool dealias = true;
  /// Clamp negative values to zero after every step (breaks the discrete mass law).
  bool clamp_negative = false;

  void validate() const;
};

/// chi div(u B(u)) + f(u), products in real space, derivatives spectral.
RealField nonlinear_rhs(const RealField& u, const ModelParams& p, bool dealias = true);

/// Advective and logistic time-step limit, capped at cfg.dt_max.
double cfl_dt(const RealField& u, const ModelParams& p, const StepperConfig& cfg);

/// Linear symbol lambda_k = |k|^alpha + eps |k|^2.
double linear_symbol(int k1, int k2, const ModelParams& p);

/// Time integrator holding the precomputed multiplier tables and, for imex2,
/// the previous step's data.
class Stepper {
 public:
  Stepper(TorusGrid grid, ModelParams params, StepperConfig cfg);

  /// Advances by dt. Throws Unstable if ||u||_inf > 1e8 or u is non-finite.
  State advance(const State& s, double dt);

  SpectralField nonlinear_hat(const SpectralField& u_hat) const;
  double cfl_dt(const RealField& u) const;
  const ModelParams& params() const { return params_; }
  const StepperConfig& config() const { return cfg_; }
  void reset_history() { previous_.reset(); }

 private:
  struct History {
    SpectralField u_hat;
    SpectralField n_hat;
    double dt;
  };

  TorusGrid grid_;
  ModelParams params_;
  StepperConfig cfg_;
  DriftOperator drift_;
  std::vector<double> lambda_;
  MultiplierTable d1_;
  MultiplierTable d2_;
  MultiplierTable riesz1_;
  std::optional<History> previous_;
};

/// One imex1 (or imex1_exact) step; imex2 requires a Stepper for its history.
State step(const State& state, const ModelParams& p, const StepperConfig& cfg);

/// Output and sampling options for run().
struct RunOptions {
  /// Emit a record every this many steps (plus t = 0 and the final time).
  int diag_every = 10;
  /// Heat-mollify the initial data with this eps (0 = off).
  double mollify_eps = 0.0;
  /// Keep a field snapshot with each record (needed by weak_residual).
  bool keep_snapshots = false;
  DiagnosticsConfig diagnostics;
};

/// Integrates to time T. An Unstable step ends the run with the partial
/// trajectory flagged; the blowup proxy (spectral tail > 0.01) is recorded.
Trajectory run(const RealField& u0, const ModelParams& p, const StepperConfig& cfg, double T,
               const RunOptions& options);

}  // namespace fracscalar
