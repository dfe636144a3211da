#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace fracscalar {

/// Uniform n x n grid on [-pi, pi)^2 with period 2*pi in each direction.
class TorusGrid {
 public:
  explicit TorusGrid(int n);

  int n() const { return n_; }
  std::size_t size() const { return static_cast<std::size_t>(n_) * n_; }
  double spacing() const;
  /// Coordinate of grid index i along either axis: -pi + i*h.
  double coord(int i) const;
  /// Signed wavenumber stored at FFT index q, in [-n/2, n/2).
  int wavenumber(int q) const { return q < n_ / 2 ? q : q - n_; }
  /// FFT index holding wavenumber k (taken mod n).
  int index_of(int k) const { return ((k % n_) + n_) % n_; }
  /// Area of the torus, 4*pi^2.
  static double area();

  bool operator==(const TorusGrid& other) const = default;

 private:
  int n_;
};

/// Real samples u(x1_i, x2_j), stored row-major with i (the x1 index) major.
class RealField {
 public:
  /// Zero field on the smallest admissible grid.
  RealField() : RealField(TorusGrid(8)) {}
  explicit RealField(TorusGrid grid, double value = 0.0);
  RealField(TorusGrid grid, std::vector<double> values);

  static RealField from_function(TorusGrid grid,
                                 const std::function<double(double, double)>& f);

  const TorusGrid& grid() const { return grid_; }
  int n() const { return grid_.n(); }

  double& operator()(int i, int j) { return values_[index(i, j)]; }
  double operator()(int i, int j) const { return values_[index(i, j)]; }
  double& operator[](std::size_t k) { return values_[k]; }
  double operator[](std::size_t k) const { return values_[k]; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }

  double min() const;
  double max() const;
  double max_abs() const;
  bool all_finite() const;

  RealField& operator+=(const RealField& other);
  RealField& operator-=(const RealField& other);
  RealField& operator*=(const RealField& other);
  RealField& operator*=(double a);
  RealField& operator+=(double a);

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * grid_.n() + j;
  }

  TorusGrid grid_;
  std::vector<double> values_;
};

RealField operator+(RealField a, const RealField& b);
RealField operator-(RealField a, const RealField& b);
RealField operator*(RealField a, const RealField& b);
RealField operator*(double s, RealField a);
RealField operator*(RealField a, double s);

/// Fourier coefficients u_hat(k) for k in [-n/2, n/2)^2, stored in FFT index order.
class SpectralField {
 public:
  SpectralField() : SpectralField(TorusGrid(8)) {}
  explicit SpectralField(TorusGrid grid);
  SpectralField(TorusGrid grid, std::vector<std::complex<double>> coeffs);

  const TorusGrid& grid() const { return grid_; }
  int n() const { return grid_.n(); }

  /// Access by FFT index.
  std::complex<double>& at(int q1, int q2) { return coeffs_[index(q1, q2)]; }
  std::complex<double> at(int q1, int q2) const { return coeffs_[index(q1, q2)]; }
  /// Access by signed wavenumber.
  std::complex<double>& mode(int k1, int k2) {
    return at(grid_.index_of(k1), grid_.index_of(k2));
  }
  std::complex<double> mode(int k1, int k2) const {
    return at(grid_.index_of(k1), grid_.index_of(k2));
  }

  std::span<std::complex<double>> coeffs() { return coeffs_; }
  std::span<const std::complex<double>> coeffs() const { return coeffs_; }

  double max_abs() const;

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(std::complex<double> a);

 private:
  std::size_t index(int q1, int q2) const {
    return static_cast<std::size_t>(q1) * grid_.n() + q2;
  }

  TorusGrid grid_;
  std::vector<std::complex<double>> coeffs_;
};

}  // namespace fracscalar
