#pragma once

#include "fracscalar/grid.hpp"

namespace fracscalar {

enum class Execution { serial, parallel };

/// Truncation of the periodization sums over image cells 2*pi*k.
struct KernelTruncation {
  /// Image cells with |k|_inf <= lattice_radius are summed (K >= 1).
  int lattice_radius = 20;
  /// Principal value by pairing eta with -eta.
  bool pv_pairing = true;
  /// Add the continuum remainder beyond the truncated lattice (Lambda^alpha only).
  bool far_field_correction = true;
};

struct QuadratureResult {
  RealField field;
  /// Estimated magnitude of the truncated far field (sup norm).
  double tail_estimate = 0.0;
  /// tail_estimate / ||field||_inf (Riesz: over max(||field||_inf, ||u - <u>||_inf)).
  double tail_relative = 0.0;
  /// Sum of the constant per-image correction terms of the Riesz kernel
  /// (identically zero under a symmetric truncation).
  double image_correction = 0.0;
};

/// Largest grid for which the O(n^4) oracles are evaluated.
inline constexpr int kMaxOracleGrid = 64;

/// Tail fraction above which the truncation is rejected.
inline constexpr double kMaxTailFraction = 0.1;

/// Lambda^alpha u from the periodized singular-integral representation:
/// c_{alpha,2} * sum over the lattice of (u(x) - u(x - eta)) / |eta + 2 pi k|^{2+alpha},
/// midpoint rule on the grid, the singular cell by its second-order Taylor term.
/// No Fourier transform is involved. Requires 0 < alpha < 2 and n <= 64.
/// Throws TruncationTooSmall when tail_relative > 10%.
QuadratureResult lambda_pow_quadrature(const RealField& u, double alpha,
                                       const KernelTruncation& trunc = {},
                                       Execution exec = Execution::parallel);

/// R_j u from the periodized principal-value kernel eta_j / |eta|^3 including the
/// per-image correction 2 pi k_j / |2 pi k|^3. j in {1, 2}.
QuadratureResult riesz_quadrature(const RealField& u, int j,
                                  const KernelTruncation& trunc = {},
                                  Execution exec = Execution::parallel,
                                  double constant = 0.0);

/// Image-summed weights W(m) = h^2 * sum_k K(m h + 2 pi k) for each grid offset m,
/// over the symmetric square of half-width (2K+1) pi (boundary layer weighted 1/2).
/// Exposed for the benchmarks and tests.
RealField periodized_weights(const TorusGrid& grid, int lattice_radius,
                             double (*kernel)(double, double, double), double param);

/// Integral of |eta|^{-2-alpha} outside the square [-L, L]^2.
double kernel_outside_square(double alpha, double half_width);

/// Integral of |eta|^{-alpha} over the square [-a, a]^2 (alpha < 2).
double kernel_inside_square(double alpha, double half_width);

}  // namespace fracscalar
