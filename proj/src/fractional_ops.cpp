#include "fracscalar/fractional_ops.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fracscalar/errors.hpp"

namespace fracscalar {
namespace symbols {

std::complex<double> lambda_pow(int k1, int k2, double s) {
  const double k2sum = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
  if (k2sum == 0.0) return s == 0.0 ? 1.0 : 0.0;
  return std::pow(k2sum, 0.5 * s);
}

std::complex<double> riesz(int k1, int k2, int j) {
  if (k1 == 0 && k2 == 0) return 0.0;
  const double kj = j == 1 ? k1 : k2;
  return {0.0, -kj / std::hypot(static_cast<double>(k1), static_cast<double>(k2))};
}

std::complex<double> resolvent(int k1, int k2, double beta) {
  return 1.0 / (1.0 + lambda_pow(k1, k2, beta).real());
}

std::complex<double> inv_laplacian(int k1, int k2) {
  if (k1 == 0 && k2 == 0) return 0.0;
  return -1.0 / (static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2);
}

std::complex<double> heat(int k1, int k2, double eps) {
  return std::exp(-eps * (static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2));
}

}  // namespace symbols

RealField lambda_pow(const RealField& u, double s) {
  SpectralField F = forward_transform(u);
  if (s < 0.0) {
    const double norm = std::sqrt(parseval_inner(F, F));
    if (std::abs(F.mode(0, 0)) > 1e-10 * std::max(norm, 1e-300)) {
      throw MeanNotZero("lambda_pow: negative order requires a mean-zero field");
    }
  }
  return inverse_transform(
      apply_multiplier(F, [s](int k1, int k2) { return symbols::lambda_pow(k1, k2, s); }));
}

RealField riesz(const RealField& u, int j) {
  if (j != 1 && j != 2) throw std::invalid_argument("riesz: j must be 1 or 2");
  return inverse_transform(apply_multiplier(
      forward_transform(u), [j](int k1, int k2) { return symbols::riesz(k1, k2, j); }));
}

RealField inv_one_plus_lambda_beta(const RealField& u, double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("inv_one_plus_lambda_beta: beta must be > 0");
  return inverse_transform(apply_multiplier(
      forward_transform(u), [beta](int k1, int k2) { return symbols::resolvent(k1, k2, beta); }));
}

RealField inv_laplacian_meanzero(const RealField& u) {
  return inverse_transform(apply_multiplier(forward_transform(u), symbols::inv_laplacian));
}

RealField heat_mollify(const RealField& u, double eps) {
  if (eps < 0.0) throw std::invalid_argument("heat_mollify: eps must be >= 0");
  if (eps == 0.0) return u;
  return inverse_transform(apply_multiplier(
      forward_transform(u), [eps](int k1, int k2) { return symbols::heat(k1, k2, eps); }));
}

double fractional_laplacian_constant(double alpha) {
  constexpr double d = 2.0;
  return std::pow(2.0, alpha) * std::tgamma((d + alpha) / 2.0) /
         (std::pow(std::numbers::pi, d / 2.0) * std::abs(std::tgamma(-alpha / 2.0)));
}

double riesz_constant_literal() {
  constexpr double d = 2.0;
  return std::tgamma(1.0 + d / 2.0) / std::pow(std::numbers::pi, (d + 1.0) / 2.0);
}

double riesz_constant_consistent() {
  constexpr double d = 2.0;
  return std::tgamma((d + 1.0) / 2.0) / std::pow(std::numbers::pi, (d + 1.0) / 2.0);
}

OperatorConstants OperatorConstants::for_alpha(double alpha) {
  return {fractional_laplacian_constant(alpha), riesz_constant_literal(),
          riesz_constant_consistent()};
}

}  // namespace fracscalar
