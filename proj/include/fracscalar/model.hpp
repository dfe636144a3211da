#pragma once

#include <string>

#include "fracscalar/drift.hpp"
#include "fracscalar/grid.hpp"

namespace fracscalar {

enum class ForcingKind { none, logistic, riesz };

std::string forcing_name(ForcingKind kind);
ForcingKind forcing_from_name(const std::string& name);

/// Coefficients of  u_t = eps Delta u - Lambda^alpha u + chi div(u B(u)) + f(u).
struct ModelParams {
  double alpha = 1.5;
  double beta = 2.0;
  double chi = 1.0;
  double r = 0.0;
  double eps_viscosity = 0.0;
  DriftSpec drift = DriftSpec::ks_poisson();
  ForcingKind forcing = ForcingKind::logistic;

  /// Logistic rate actually present in the equation (0 unless forcing is logistic).
  double logistic_rate() const { return forcing == ForcingKind::logistic ? r : 0.0; }

  /// Throws ConfigError naming the offending field.
  void validate() const;
};

struct State {
  double t = 0.0;
  RealField u;
};

}  // namespace fracscalar
