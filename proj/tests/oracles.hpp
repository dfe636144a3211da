#pragma once

// Test-side reference computations. Nothing here calls the library's
// transforms or operators; fields are built from explicit formulas.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "fracscalar/grid.hpp"

namespace oracle {

using fracscalar::RealField;
using fracscalar::TorusGrid;

inline constexpr double pi = std::numbers::pi;

/// Direct O(n^4) sum  sum_x f(x) exp(-i k.x) h^2  at wavenumber (k1, k2).
inline std::complex<double> dft_coefficient(const RealField& f, int k1, int k2) {
  const TorusGrid& g = f.grid();
  const double h = g.spacing();
  std::complex<double> acc = 0.0;
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j) {
      const double x1 = -pi + i * h, x2 = -pi + j * h;
      acc += f(i, j) * std::polar(1.0, -(k1 * x1 + k2 * x2));
    }
  return acc * h * h;
}

/// A real trigonometric polynomial with explicit modes.
struct TrigPoly {
  struct Term {
    int k1, k2;
    double a, b;  // a cos(k.x) + b sin(k.x)
  };
  double mean = 0.0;
  std::vector<Term> terms;

  double operator()(double x1, double x2) const {
    double v = mean;
    for (const auto& t : terms) {
      const double ph = t.k1 * x1 + t.k2 * x2;
      v += t.a * std::cos(ph) + t.b * std::sin(ph);
    }
    return v;
  }
  RealField sample(const TorusGrid& g) const {
    return RealField::from_function(g, [this](double x1, double x2) { return (*this)(x1, x2); });
  }
  /// Apply a real even symbol m(|k|) mode by mode.
  template <class M>
  TrigPoly scaled(M&& m) const {
    TrigPoly out{mean * m(0, 0), {}};
    for (const auto& t : terms) out.terms.push_back({t.k1, t.k2, t.a * m(t.k1, t.k2), t.b * m(t.k1, t.k2)});
    return out;
  }
  double min_on(const TorusGrid& g) const { return sample(g).min(); }
};

inline TrigPoly random_poly(unsigned seed, int kmax, double decay = 0.0, double mean = 0.0) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  TrigPoly p;
  p.mean = mean;
  for (int k1 = 0; k1 <= kmax; ++k1)
    for (int k2 = -kmax; k2 <= kmax; ++k2) {
      if (k1 == 0 && k2 <= 0) continue;
      const double amp = std::exp(-decay * std::hypot(k1, k2));
      const double a = amp * dist(rng);
      const double b = amp * dist(rng);
      p.terms.push_back({k1, k2, a, b});
    }
  return p;
}

/// Non-negative smooth polynomial: random modes shifted so that min >= shift on a fine grid.
inline TrigPoly random_positive(unsigned seed, int kmax, double shift = 0.05, double decay = 0.4) {
  TrigPoly p = random_poly(seed, kmax, decay);
  const double lo = p.min_on(TorusGrid(128));
  p.mean = shift - lo + 0.01;
  return p;
}

inline double rel_l2(const RealField& a, const RealField& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    num += (a[k] - b[k]) * (a[k] - b[k]);
    den += b[k] * b[k];
  }
  return std::sqrt(num / den);
}

inline double max_diff(const RealField& a, const RealField& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

inline double grid_sum(const RealField& f) {
  double s = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) s += f[k];
  const double h = f.grid().spacing();
  return s * h * h;
}

/// Periodic heat kernel at time eps by image sum of the free-space Gaussian.
inline double theta_heat_kernel(double y1, double y2, double eps, int images = 4) {
  double a = 0.0, b = 0.0;
  for (int m = -images; m <= images; ++m) {
    const double d1 = y1 + 2.0 * pi * m, d2 = y2 + 2.0 * pi * m;
    a += std::exp(-d1 * d1 / (4.0 * eps));
    b += std::exp(-d2 * d2 / (4.0 * eps));
  }
  return a * b / (4.0 * pi * eps);
}

}  // namespace oracle
