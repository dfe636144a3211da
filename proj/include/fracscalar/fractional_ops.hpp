#pragma once

#include <complex>

#include "fracscalar/grid.hpp"
#include "fracscalar/spectral.hpp"

namespace fracscalar {

// Fourier symbols of the nonlocal operators, as functions of the integer
// wavevector. They compose by multiplication.
namespace symbols {

/// |k|^s, with |0|^s := 0 for s > 0 and 1 for s == 0.
std::complex<double> lambda_pow(int k1, int k2, double s);
/// -i k_j / |k|, zero at k = 0. j is 1 or 2.
std::complex<double> riesz(int k1, int k2, int j);
/// 1 / (1 + |k|^beta).
std::complex<double> resolvent(int k1, int k2, double beta);
/// -1 / |k|^2 for k != 0, zero at k = 0.
std::complex<double> inv_laplacian(int k1, int k2);
/// exp(-eps |k|^2).
std::complex<double> heat(int k1, int k2, double eps);

}  // namespace symbols

/// Lambda^s u. For s < 0 the mean of u must vanish (MeanNotZero otherwise).
RealField lambda_pow(const RealField& u, double s);

/// Riesz transform R_j u, j in {1, 2}.
RealField riesz(const RealField& u, int j);

/// (1 + Lambda^beta)^{-1} u, beta > 0.
RealField inv_one_plus_lambda_beta(const RealField& u, double beta);

/// Delta^{-1}(u - <u>); the result has zero mean.
RealField inv_laplacian_meanzero(const RealField& u);

/// Convolution with the periodic heat kernel at time eps.
RealField heat_mollify(const RealField& u, double eps);

/// Normalising constants of the singular-integral representations in d = 2.
struct OperatorConstants {
  /// 2^alpha Gamma((2+alpha)/2) / (pi |Gamma(-alpha/2)|).
  double c_alpha_d;
  /// Gamma(1 + d/2) / pi^{(d+1)/2} = pi^{-3/2}, as written for the Riesz kernel.
  double r_d;
  /// Gamma((d+1)/2) / pi^{(d+1)/2} = 1/(2 pi): the normalisation for which the
  /// kernel reproduces the symbol -i k_j/|k|. Used by riesz_quadrature.
  double r_d_consistent;

  static OperatorConstants for_alpha(double alpha);
};

double fractional_laplacian_constant(double alpha);
double riesz_constant_literal();
double riesz_constant_consistent();

}  // namespace fracscalar
