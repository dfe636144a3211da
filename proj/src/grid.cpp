#include "fracscalar/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fracscalar {

TorusGrid::TorusGrid(int n) : n_(n) {
  if (n < 8 || n % 2 != 0) {
    throw std::invalid_argument("TorusGrid: n must be even and >= 8, got " +
                                std::to_string(n));
  }
}

double TorusGrid::spacing() const { return 2.0 * std::numbers::pi / n_; }

double TorusGrid::coord(int i) const { return -std::numbers::pi + i * spacing(); }

double TorusGrid::area() { return 4.0 * std::numbers::pi * std::numbers::pi; }

RealField::RealField(TorusGrid grid, double value)
    : grid_(grid), values_(grid.size(), value) {}

RealField::RealField(TorusGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw std::invalid_argument("RealField: value count does not match grid");
  }
}

RealField RealField::from_function(TorusGrid grid,
                                   const std::function<double(double, double)>& f) {
  RealField out(grid);
  const int n = grid.n();
  for (int i = 0; i < n; ++i) {
    const double x1 = grid.coord(i);
    for (int j = 0; j < n; ++j) out(i, j) = f(x1, grid.coord(j));
  }
  return out;
}

double RealField::min() const { return *std::min_element(values_.begin(), values_.end()); }

double RealField::max() const { return *std::max_element(values_.begin(), values_.end()); }

double RealField::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

bool RealField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return std::isfinite(v); });
}

namespace {

void require_same_grid(const TorusGrid& a, const TorusGrid& b) {
  if (!(a == b)) throw std::invalid_argument("field arithmetic on different grids");
}

}  // namespace

RealField& RealField::operator+=(const RealField& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += other.values_[k];
  return *this;
}

RealField& RealField::operator-=(const RealField& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= other.values_[k];
  return *this;
}

RealField& RealField::operator*=(const RealField& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] *= other.values_[k];
  return *this;
}

RealField& RealField::operator*=(double a) {
  for (double& v : values_) v *= a;
  return *this;
}

RealField& RealField::operator+=(double a) {
  for (double& v : values_) v += a;
  return *this;
}

RealField operator+(RealField a, const RealField& b) { return a += b; }
RealField operator-(RealField a, const RealField& b) { return a -= b; }
RealField operator*(RealField a, const RealField& b) { return a *= b; }
RealField operator*(double s, RealField a) { return a *= s; }
RealField operator*(RealField a, double s) { return a *= s; }

SpectralField::SpectralField(TorusGrid grid) : grid_(grid), coeffs_(grid.size()) {}

SpectralField::SpectralField(TorusGrid grid, std::vector<std::complex<double>> coeffs)
    : grid_(grid), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != grid_.size()) {
    throw std::invalid_argument("SpectralField: coefficient count does not match grid");
  }
}

double SpectralField::max_abs() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
  return *this;
}

SpectralField& SpectralField::operator*=(std::complex<double> a) {
  for (auto& c : coeffs_) c *= a;
  return *this;
}

}  // namespace fracscalar
