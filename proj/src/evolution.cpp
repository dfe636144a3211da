#include "fracscalar/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "fracscalar/errors.hpp"
#include "fracscalar/fractional_ops.hpp"

namespace fracscalar {

namespace {

using cd = std::complex<double>;

constexpr double kBlowupNorm = 1e8;
constexpr double kSpeedFloor = 1e-12;
constexpr double kTailLimit = 0.01;

MultiplierTable derivative_table(TorusGrid grid, int axis) {
  return MultiplierTable(grid, [axis](int k1, int k2) { return cd(0.0, axis == 0 ? k1 : k2); });
}

}  // namespace

std::string scheme_name(Scheme s) {
  switch (s) {
    case Scheme::imex1: return "imex1";
    case Scheme::imex1_exact: return "imex1_exact";
    case Scheme::imex2: return "imex2";
  }
  return "?";
}

Scheme scheme_from_name(const std::string& name) {
  if (name == "imex1") return Scheme::imex1;
  if (name == "imex1_exact") return Scheme::imex1_exact;
  if (name == "imex2") return Scheme::imex2;
  throw ConfigError("stepper.scheme", "unknown scheme '" + name + "' (imex1|imex1_exact|imex2)");
}

void StepperConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("stepper.dt", "dt must be > 0");
  if (!(dt_max > 0.0)) throw ConfigError("stepper.dt_max", "dt_max must be > 0");
  if (!(cfl_safety > 0.0 && cfl_safety <= 1.0))
    throw ConfigError("stepper.cfl_safety", "cfl_safety must lie in (0,1]");
}

double linear_symbol(int k1, int k2, const ModelParams& p) {
  const double k2norm = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
  return std::abs(symbols::lambda_pow(k1, k2, p.alpha)) + p.eps_viscosity * k2norm;
}

Stepper::Stepper(TorusGrid grid, ModelParams params, StepperConfig cfg)
    : grid_(grid),
      params_(std::move(params)),
      cfg_(cfg),
      drift_(grid, params_.drift),
      lambda_(grid.size()),
      d1_(derivative_table(grid, 0)),
      d2_(derivative_table(grid, 1)),
      riesz1_(grid, [](int k1, int k2) { return symbols::riesz(k1, k2, 1); }) {
  params_.validate();
  cfg_.validate();
  const int n = grid.n();
  for (int q1 = 0; q1 < n; ++q1)
    for (int q2 = 0; q2 < n; ++q2)
      lambda_[static_cast<std::size_t>(q1) * n + q2] =
          linear_symbol(grid.wavenumber(q1), grid.wavenumber(q2), params_);
}

SpectralField Stepper::nonlinear_hat(const SpectralField& u_hat) const {
  SpectralField out(grid_);
  const RealField u = inverse_transform(u_hat);
  if (params_.chi != 0.0) {
    auto [b1_hat, b2_hat] = drift_.apply(u_hat);
    SpectralField f1 = forward_transform(u * inverse_transform(b1_hat));
    SpectralField f2 = forward_transform(u * inverse_transform(b2_hat));
    if (cfg_.dealias) {
      dealias_in_place(f1);
      dealias_in_place(f2);
    }
    d1_.apply_in_place(f1);
    d2_.apply_in_place(f2);
    out += f1;
    out += f2;
    out *= params_.chi;
  }
  switch (params_.forcing) {
    case ForcingKind::none:
      break;
    case ForcingKind::logistic: {
      if (params_.r == 0.0) break;
      SpectralField sq = forward_transform(u * u);
      if (cfg_.dealias) dealias_in_place(sq);
      SpectralField lin = u_hat;
      lin -= sq;
      lin *= params_.r;
      out += lin;
      break;
    }
    case ForcingKind::riesz:
      out += riesz1_.apply(u_hat);
      break;
  }
  return out;
}

RealField nonlinear_rhs(const RealField& u, const ModelParams& p, bool dealias) {
  StepperConfig cfg;
  cfg.dealias = dealias;
  Stepper stepper(u.grid(), p, cfg);
  return inverse_transform(stepper.nonlinear_hat(forward_transform(u)));
}

double Stepper::cfl_dt(const RealField& u) const {
  double dt = cfg_.dt_max;
  if (params_.chi != 0.0) {
    const VectorField B = drift_.eval(u);
    double speed = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k)
      speed = std::max(speed, std::hypot(B.bx[k], B.by[k]));
    speed *= params_.chi;
    dt = std::min(dt, cfg_.cfl_safety * grid_.spacing() / std::max(speed, kSpeedFloor));
  }
  const double r = params_.logistic_rate();
  if (r > 0.0) dt = std::min(dt, 1.0 / (r * (1.0 + 2.0 * u.max_abs())));
  return dt;
}

double cfl_dt(const RealField& u, const ModelParams& p, const StepperConfig& cfg) {
  return Stepper(u.grid(), p, cfg).cfl_dt(u);
}

State Stepper::advance(const State& s, double dt) {
  const SpectralField u_hat = forward_transform(s.u);
  const SpectralField n_hat = nonlinear_hat(u_hat);
  SpectralField next(grid_);
  const std::size_t size = grid_.size();
  auto un = u_hat.coeffs();
  auto nn = n_hat.coeffs();
  auto out = next.coeffs();

  if (cfg_.scheme == Scheme::imex2 && previous_) {
    const double w = dt / previous_->dt;
    const double a0 = (1.0 + 2.0 * w) / (1.0 + w);
    auto up = previous_->u_hat.coeffs();
    auto np = previous_->n_hat.coeffs();
    for (std::size_t k = 0; k < size; ++k) {
      const cd rhs = (1.0 + w) * un[k] - (w * w / (1.0 + w)) * up[k] +
                     dt * ((1.0 + w) * nn[k] - w * np[k]);
      out[k] = rhs / (a0 + dt * lambda_[k]);
    }
  } else if (cfg_.scheme == Scheme::imex1_exact) {
    for (std::size_t k = 0; k < size; ++k) out[k] = std::exp(-dt * lambda_[k]) * (un[k] + dt * nn[k]);
  } else {
    for (std::size_t k = 0; k < size; ++k) out[k] = (un[k] + dt * nn[k]) / (1.0 + dt * lambda_[k]);
  }

  State result{s.t + dt, inverse_transform(next)};
  if (!result.u.all_finite() || result.u.max_abs() > kBlowupNorm) {
    throw Unstable("solution left the representable range at t = " + std::to_string(result.t));
  }
  if (cfg_.clamp_negative)
    for (double& x : result.u.values()) x = std::max(x, 0.0);
  if (cfg_.scheme == Scheme::imex2) previous_ = History{u_hat, n_hat, dt};
  return result;
}

State step(const State& state, const ModelParams& p, const StepperConfig& cfg) {
  Stepper stepper(state.u.grid(), p, cfg);
  const double dt = cfg.adaptive ? stepper.cfl_dt(state.u) : cfg.dt;
  return stepper.advance(state, dt);
}

Trajectory run(const RealField& u0, const ModelParams& p, const StepperConfig& cfg, double T,
               const RunOptions& options) {
  if (!(T > 0.0) || !std::isfinite(T)) throw ConfigError("T", "T must be > 0");
  if (options.diag_every < 1) throw ConfigError("diag_every", "diag_every must be >= 1");
  Stepper stepper(u0.grid(), p, cfg);

  Trajectory traj;
  State state{0.0, options.mollify_eps > 0.0 ? heat_mollify(u0, options.mollify_eps) : u0};
  double linf_integral = 0.0;
  traj.min_u_seen = state.u.min();

  auto record = [&](const State& s) {
    DiagnosticsRecord rec = compute_record(s.u, s.t, linf_integral, p, options.diagnostics);
    if (rec.spectral_tail > kTailLimit) traj.resolution_limited = true;
    traj.records.push_back(std::move(rec));
    if (options.keep_snapshots) traj.snapshots.push_back(s);
  };
  record(state);

  long fixed_steps = 0;
  double fixed_dt = cfg.dt;
  if (!cfg.adaptive) {
    fixed_steps = static_cast<long>(std::ceil(T / cfg.dt - 1e-9));
    fixed_dt = T / static_cast<double>(fixed_steps);
  }

  bool recorded_last = true;
  traj.stop_reason = "completed";
  while (true) {
    double dt;
    bool last;
    if (cfg.adaptive) {
      const double remaining = T - state.t;
      if (remaining <= 1e-12 * T) break;
      dt = stepper.cfl_dt(state.u);
      last = dt >= remaining * (1.0 - 1e-12);
      if (last) dt = remaining;
    } else {
      if (traj.steps >= fixed_steps) break;
      dt = fixed_dt;
      last = traj.steps + 1 == fixed_steps;
    }

    State next;
    try {
      next = stepper.advance(state, dt);
    } catch (const Unstable& e) {
      traj.unstable = true;
      traj.stop_reason = e.what();
      break;
    }
    if (last && !cfg.adaptive) next.t = T;
    linf_integral += 0.5 * dt * (state.u.max_abs() + next.u.max_abs());
    state = std::move(next);
    ++traj.steps;
    traj.min_u_seen = std::min(traj.min_u_seen, state.u.min());

    recorded_last = false;
    if (traj.steps % options.diag_every == 0 || last) {
      record(state);
      recorded_last = true;
    }
    if (last) break;
  }
  if (!recorded_last) record(state);
  traj.final_state = state;
  return traj;
}

}  // namespace fracscalar
