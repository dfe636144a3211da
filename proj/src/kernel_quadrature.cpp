#include "fracscalar/kernel_quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fracscalar/errors.hpp"
#include "fracscalar/fractional_ops.hpp"
#include "fracscalar/spectral.hpp"

namespace fracscalar {
namespace {

using std::numbers::pi;

double lambda_kernel(double y1, double y2, double alpha) {
  return std::pow(y1 * y1 + y2 * y2, -0.5 * (2.0 + alpha));
}

double riesz_kernel(double y1, double y2, double j) {
  const double r = std::hypot(y1, y2);
  return (j == 1.0 ? y1 : y2) / (r * r * r);
}

double angular_integral(double power) {
  using boost::math::quadrature::gauss_kronrod;
  return gauss_kronrod<double, 31>::integrate(
      [power](double t) { return std::pow(std::cos(t), power); }, 0.0, pi / 4.0, 5, 1e-14);
}

void check_oracle_grid(const TorusGrid& grid, const char* who) {
  if (grid.n() > kMaxOracleGrid) {
    throw GridTooLarge(std::string(who) + ": quadrature oracle limited to n <= " +
                       std::to_string(kMaxOracleGrid));
  }
}

void check_truncation(const KernelTruncation& trunc) {
  if (trunc.lattice_radius < 1) {
    throw std::invalid_argument("KernelTruncation: lattice_radius must be >= 1");
  }
}

int wrap(int i, int n) { return ((i % n) + n) % n; }

// Five-point Laplacian and central first differences keep the singular-cell
// corrections independent of the spectral path.
double fd_laplacian(const RealField& u, int i, int j) {
  const int n = u.n();
  const double h = u.grid().spacing();
  return (u(wrap(i + 1, n), j) + u(wrap(i - 1, n), j) + u(i, wrap(j + 1, n)) +
          u(i, wrap(j - 1, n)) - 4.0 * u(i, j)) /
         (h * h);
}

double fd_gradient(const RealField& u, int i, int j, int axis) {
  const int n = u.n();
  const double h = u.grid().spacing();
  if (axis == 1) return (u(wrap(i + 1, n), j) - u(wrap(i - 1, n), j)) / (2.0 * h);
  return (u(i, wrap(j + 1, n)) - u(i, wrap(j - 1, n))) / (2.0 * h);
}

// Sum over grid offsets m != 0 of W(m) * term(x, m) at every target x. With
// pairing, the offsets m and -m (taken mod n) are combined before accumulation.
template <typename Term>
void offset_sum(const RealField& u, const RealField& weights, bool paired, Execution exec,
                RealField& out, Term term) {
  const TorusGrid& grid = u.grid();
  const int n = grid.n();
  auto body = [&](int i) {
    for (int j = 0; j < n; ++j) {
      double acc = 0.0;
      for (int q1 = 0; q1 < n; ++q1) {
        const int p1 = (n - q1) % n;
        for (int q2 = 0; q2 < n; ++q2) {
          if (q1 == 0 && q2 == 0) continue;
          const int p2 = (n - q2) % n;
          const long flat_q = static_cast<long>(q1) * n + q2;
          const long flat_p = static_cast<long>(p1) * n + p2;
          if (paired && flat_q > flat_p) continue;
          const double wq = weights(q1, q2);
          const double tq = term(i, j, grid.wavenumber(q1), grid.wavenumber(q2));
          if (!paired || flat_q == flat_p) {
            acc += wq * tq;
          } else {
            acc += wq * tq +
                   weights(p1, p2) * term(i, j, grid.wavenumber(p1), grid.wavenumber(p2));
          }
        }
      }
      out(i, j) = acc;
    }
  };
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) body(i);
  } else {
    for (int i = 0; i < n; ++i) body(i);
  }
}

}  // namespace

double kernel_outside_square(double alpha, double half_width) {
  return 8.0 / alpha * std::pow(half_width, -alpha) * angular_integral(alpha);
}

double kernel_inside_square(double alpha, double half_width) {
  return 8.0 / (2.0 - alpha) * std::pow(half_width, 2.0 - alpha) *
         angular_integral(alpha - 2.0);
}

RealField periodized_weights(const TorusGrid& grid, int lattice_radius,
                             double (*kernel)(double, double, double), double param) {
  const int n = grid.n();
  const double h = grid.spacing();
  const long J = static_cast<long>(n) * lattice_radius + n / 2;
  RealField W(grid);
#pragma omp parallel for schedule(static)
  for (int q1 = 0; q1 < n; ++q1) {
    const int m1 = grid.wavenumber(q1);
    for (int q2 = 0; q2 < n; ++q2) {
      const int m2 = grid.wavenumber(q2);
      double acc = 0.0;
      for (int k1 = -lattice_radius - 1; k1 <= lattice_radius + 1; ++k1) {
        const long j1 = m1 + static_cast<long>(n) * k1;
        if (std::labs(j1) > J) continue;
        const double w1 = std::labs(j1) == J ? 0.5 : 1.0;
        for (int k2 = -lattice_radius - 1; k2 <= lattice_radius + 1; ++k2) {
          const long j2 = m2 + static_cast<long>(n) * k2;
          if (std::labs(j2) > J || (j1 == 0 && j2 == 0)) continue;
          const double w2 = std::labs(j2) == J ? 0.5 : 1.0;
          acc += w1 * w2 * kernel(j1 * h, j2 * h, param);
        }
      }
      W(q1, q2) = acc * h * h;
    }
  }
  return W;
}

QuadratureResult lambda_pow_quadrature(const RealField& u, double alpha,
                                       const KernelTruncation& trunc, Execution exec) {
  if (!(alpha > 0.0 && alpha < 2.0)) {
    throw std::invalid_argument("lambda_pow_quadrature: alpha must lie in (0, 2)");
  }
  check_oracle_grid(u.grid(), "lambda_pow_quadrature");
  check_truncation(trunc);

  const TorusGrid& grid = u.grid();
  const int n = grid.n();
  const double h = grid.spacing();
  const double c = fractional_laplacian_constant(alpha);
  const RealField W = periodized_weights(grid, trunc.lattice_radius, lambda_kernel, alpha);

  RealField out(grid);
  offset_sum(u, W, trunc.pv_pairing, exec, out, [&](int i, int j, int m1, int m2) {
    return u(i, j) - u(wrap(i - m1, n), wrap(j - m2, n));
  });

  const double cell = kernel_inside_square(alpha, 0.5 * h);
  const double half_width = (2.0 * trunc.lattice_radius + 1.0) * pi;
  const double outside = kernel_outside_square(alpha, half_width);
  const double u_mean = mean(u);
  double dev = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      // Second-order Taylor term of the singular cell: the gradient term is odd.
      out(i, j) += -0.25 * fd_laplacian(u, i, j) * cell;
      if (trunc.far_field_correction) out(i, j) += (u(i, j) - u_mean) * outside;
      dev = std::max(dev, std::abs(u(i, j) - u_mean));
    }
  }
  out *= c;

  QuadratureResult result{std::move(out)};
  result.tail_estimate = c * dev * outside;
  const double norm = result.field.max_abs();
  result.tail_relative = result.tail_estimate > 0.0 ? result.tail_estimate / norm : 0.0;
  if (result.tail_relative > kMaxTailFraction) {
    throw TruncationTooSmall("lambda_pow_quadrature: estimated tail " +
                                 std::to_string(result.tail_relative) +
                                 " of result norm exceeds budget",
                             result.tail_relative);
  }
  return result;
}

QuadratureResult riesz_quadrature(const RealField& u, int j, const KernelTruncation& trunc,
                                  Execution exec, double constant) {
  if (j != 1 && j != 2) throw std::invalid_argument("riesz_quadrature: j must be 1 or 2");
  check_oracle_grid(u.grid(), "riesz_quadrature");
  check_truncation(trunc);

  const TorusGrid& grid = u.grid();
  const int n = grid.n();
  const double h = grid.spacing();
  const double r = constant > 0.0 ? constant : riesz_constant_consistent();
  const RealField W = periodized_weights(grid, trunc.lattice_radius, riesz_kernel, j);

  RealField out(grid);
  offset_sum(u, W, trunc.pv_pairing, exec, out, [&](int i, int jj, int m1, int m2) {
    return u(wrap(i - m1, n), wrap(jj - m2, n));
  });

  // Per-image constant 2 pi k_j / |2 pi k|^3 times the integral of u.
  double image_sum = 0.0;
  for (int k1 = -trunc.lattice_radius; k1 <= trunc.lattice_radius; ++k1) {
    for (int k2 = -trunc.lattice_radius; k2 <= trunc.lattice_radius; ++k2) {
      if (k1 == 0 && k2 == 0) continue;
      image_sum += riesz_kernel(2.0 * pi * k1, 2.0 * pi * k2, j);
    }
  }
  const double image_correction = image_sum * integrate(u);

  // Singular cell: pairing cancels the constant term, the gradient term survives.
  const double cell = kernel_inside_square(1.0, 0.5 * h);
  const double u_mean = mean(u);
  double dev = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int jj = 0; jj < n; ++jj) {
      out(i, jj) += -0.5 * fd_gradient(u, i, jj, j) * cell + image_correction;
      dev = std::max(dev, std::abs(u(i, jj) - u_mean));
    }
  }
  out *= r;

  QuadratureResult result{std::move(out)};
  const double half_width = (2.0 * trunc.lattice_radius + 1.0) * pi;
  result.tail_estimate = r * dev * 4.0 * pi / half_width;
  result.image_correction = r * image_correction;
  // R_j is bounded on L^2, so a vanishing output is measured against the input.
  const double norm = std::max(result.field.max_abs(), dev);
  result.tail_relative = result.tail_estimate > 0.0 ? result.tail_estimate / norm : 0.0;
  if (result.tail_relative > kMaxTailFraction) {
    throw TruncationTooSmall("riesz_quadrature: estimated tail " +
                                 std::to_string(result.tail_relative) +
                                 " of result norm exceeds budget",
                             result.tail_relative);
  }
  return result;
}

}  // namespace fracscalar
