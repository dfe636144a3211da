#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "fracscalar/grid.hpp"

namespace fracscalar {

/// Fourier symbol evaluated at an integer wavevector (k1, k2).
using Symbol = std::function<std::complex<double>(int k1, int k2)>;

/// u_hat(k) = sum_x u(x) exp(-i k.x) h^2, so u_hat(0) is the integral of u.
SpectralField forward_transform(const RealField& f);

/// Inverse of forward_transform. Throws SymmetryViolation when
/// u_hat(-k) != conj(u_hat(k)) beyond 1e-10 relative to max |u_hat|.
RealField inverse_transform(const SpectralField& F);

/// Largest |F(-k) - conj(F(k))| relative to max |F| (index-space negation).
double symmetry_defect(const SpectralField& F);

/// Diagonal Fourier multiplier precomputed on a grid.
///
/// Rows/columns holding the unpaired wavenumber -n/2 are zeroed wherever the
/// symbol is not conjugate-symmetric there (odd symbols such as Riesz
/// transforms or derivatives); everywhere else m(-k) = conj(m(k)) is required.
class MultiplierTable {
 public:
  MultiplierTable(TorusGrid grid, const Symbol& symbol);

  const TorusGrid& grid() const { return grid_; }
  std::complex<double> operator()(int q1, int q2) const {
    return values_[static_cast<std::size_t>(q1) * grid_.n() + q2];
  }

  void apply_in_place(SpectralField& F) const;
  SpectralField apply(SpectralField F) const {
    apply_in_place(F);
    return F;
  }

  /// Pointwise product of two tables (composition of the operators).
  MultiplierTable operator*(const MultiplierTable& other) const;

 private:
  MultiplierTable(TorusGrid grid, std::vector<std::complex<double>> values)
      : grid_(grid), values_(std::move(values)) {}

  TorusGrid grid_;
  std::vector<std::complex<double>> values_;
};

/// Multiplies coefficients pointwise by m(k). Throws SymmetryViolation if m
/// breaks conjugate symmetry.
SpectralField apply_multiplier(const SpectralField& F, const Symbol& m);

/// Uniform-grid quadrature: sum u * h^2.
double integrate(const RealField& f);

/// Spatial mean (1 / 4 pi^2) * integral.
double mean(const RealField& f);

/// True for modes removed by the 2/3 rule: max(|k1|, |k2|) >= n/3.
bool is_aliased_mode(const TorusGrid& grid, int q1, int q2);

/// 2/3-rule truncation.
SpectralField dealias(const SpectralField& F);
void dealias_in_place(SpectralField& F);

/// Spectral partial derivative along axis 0 (x1) or 1 (x2).
SpectralField derivative(const SpectralField& F, int axis);

/// (1 / 4 pi^2) * sum_k F(k) conj(G(k)), the Parseval form of the integral of f*g.
double parseval_inner(const SpectralField& F, const SpectralField& G);

/// Fraction of spectral energy in modes with |k| > n/3 (Euclidean norm).
double spectral_tail_fraction(const SpectralField& F);

}  // namespace fracscalar
