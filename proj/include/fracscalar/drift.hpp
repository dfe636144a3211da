#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "fracscalar/grid.hpp"
#include "fracscalar/spectral.hpp"

namespace fracscalar {

/// Interaction kernel K given through its real, even symbol.
/// power:  K_hat(k) = -strength / |k|^order             (k != 0, zero at k = 0)
/// bessel: K_hat(k) = -strength / (screening + |k|^order)
/// custom: any user symbol (not serialisable).
struct AggregationKernel {
  enum class Family { power, bessel, custom };
  Family family = Family::power;
  double strength = 1.0;
  double order = 2.0;
  double screening = 1.0;
  std::function<double(int, int)> custom;

  double symbol(int k1, int k2) const;
};

enum class DriftKind : unsigned char {
  ks_screened = 0,
  ks_poisson = 1,
  euler_vorticity = 2,
  sqg = 3,
  ipm = 4,
  stokes = 5,
  aggregation = 6,
};

/// The drift law B(u).
struct DriftSpec {
  DriftKind kind = DriftKind::ks_poisson;
  /// Screening exponent, used by ks_screened.
  double beta = 2.0;
  AggregationKernel kernel;

  static DriftSpec ks_screened(double beta);
  static DriftSpec ks_poisson();
  static DriftSpec euler_vorticity();
  static DriftSpec sqg();
  static DriftSpec ipm();
  static DriftSpec stokes();
  static DriftSpec aggregation(AggregationKernel kernel);

  /// Tag used in configs ("ks_screened", "ks_poisson", ...).
  std::string name() const;
  static DriftKind kind_from_name(const std::string& name);

  /// Whether the drift is one of the two Keller-Segel couplings.
  bool is_keller_segel() const {
    return kind == DriftKind::ks_screened || kind == DriftKind::ks_poisson;
  }

  /// Numeric parameters, in a fixed order per kind (checkpoint payload).
  std::vector<double> parameters() const;
  static DriftSpec from_parameters(DriftKind kind, const std::vector<double>& params);

  void validate() const;
};

struct VectorField {
  RealField bx;
  RealField by;
};

/// Fourier symbols of (B1, B2) as multipliers of u_hat.
std::pair<Symbol, Symbol> drift_symbols(const DriftSpec& spec);

/// Precomputed multiplier tables for one drift on one grid.
class DriftOperator {
 public:
  DriftOperator(TorusGrid grid, const DriftSpec& spec);

  const DriftSpec& spec() const { return spec_; }
  /// Spectral components (B1_hat, B2_hat) of B(u) from u_hat.
  std::pair<SpectralField, SpectralField> apply(const SpectralField& u_hat) const;
  VectorField eval(const RealField& u) const;

 private:
  DriftSpec spec_;
  MultiplierTable b1_;
  MultiplierTable b2_;
};

VectorField eval_drift(const RealField& u, const DriftSpec& spec);

/// Divergence of B(u): u - <u> (ks_poisson), u - (1 + Lambda^beta)^{-1} u
/// (ks_screened), zero (euler_vorticity, sqg), spectral divergence otherwise.
RealField div_drift(const RealField& u, const DriftSpec& spec);

struct ScreenedPositivityReport {
  double min_v = 0.0;
  bool ok = false;
};

/// Minimum of v = (1 + Lambda^beta)^{-1} u for u >= 0; ok iff
/// min v >= -1e-8 (1 + ||u||_inf). Throws NegativeInput if min u < -1e-6.
ScreenedPositivityReport check_screened_positivity(const RealField& u, double beta);

}  // namespace fracscalar
