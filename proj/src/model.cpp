#include "fracscalar/model.hpp"

#include <cmath>

#include "fracscalar/errors.hpp"

namespace fracscalar {

std::string forcing_name(ForcingKind kind) {
  switch (kind) {
    case ForcingKind::none: return "none";
    case ForcingKind::logistic: return "logistic";
    case ForcingKind::riesz: return "riesz";
  }
  return "?";
}

ForcingKind forcing_from_name(const std::string& name) {
  if (name == "none") return ForcingKind::none;
  if (name == "logistic") return ForcingKind::logistic;
  if (name == "riesz") return ForcingKind::riesz;
  throw ConfigError("model.forcing", "unknown forcing '" + name + "' (none|logistic|riesz)");
}

void ModelParams::validate() const {
  if (!(alpha > 0.0 && alpha <= 2.0)) throw ConfigError("model.alpha", "alpha must lie in (0,2]");
  if (!(beta > 0.0)) throw ConfigError("model.beta", "beta must be > 0");
  if (!(chi >= 0.0) || !std::isfinite(chi)) throw ConfigError("model.chi", "chi must be >= 0");
  if (!(r >= 0.0) || !std::isfinite(r)) throw ConfigError("model.r", "r must be >= 0");
  if (!(eps_viscosity >= 0.0) || !std::isfinite(eps_viscosity))
    throw ConfigError("model.eps_viscosity", "eps_viscosity must be >= 0");
  drift.validate();
}

}  // namespace fracscalar
