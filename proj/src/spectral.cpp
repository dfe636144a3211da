#include "fracscalar/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "fracscalar/errors.hpp"

namespace fracscalar {
namespace {

constexpr double kSymmetryTol = 1e-10;

// FFTW planning is not thread-safe; execution through fftw_execute_dft is.
class PlanCache {
 public:
  struct Plans {
    fftw_plan forward;
    fftw_plan backward;
  };

  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  const Plans& get(int n) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    const std::size_t count = static_cast<std::size_t>(n) * n;
    auto* buffer = fftw_alloc_complex(count);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    Plans p{fftw_plan_dft_2d(n, n, buffer, buffer, FFTW_FORWARD, flags),
            fftw_plan_dft_2d(n, n, buffer, buffer, FFTW_BACKWARD, flags)};
    fftw_free(buffer);
    return plans_.emplace(n, p).first->second;
  }

  ~PlanCache() {
    for (auto& [n, p] : plans_) {
      fftw_destroy_plan(p.forward);
      fftw_destroy_plan(p.backward);
    }
  }

 private:
  std::mutex mutex_;
  std::map<int, Plans> plans_;
};

fftw_complex* as_fftw(std::complex<double>* p) {
  return reinterpret_cast<fftw_complex*>(p);
}

// exp(-i k.x) at x = -pi + j h picks up (-1)^k relative to the plain DFT.
double parity(int q1, int q2) { return ((q1 + q2) & 1) ? -1.0 : 1.0; }

}  // namespace

SpectralField forward_transform(const RealField& f) {
  const TorusGrid& grid = f.grid();
  const int n = grid.n();
  std::vector<std::complex<double>> data(f.values().begin(), f.values().end());
  fftw_execute_dft(PlanCache::instance().get(n).forward, as_fftw(data.data()),
                   as_fftw(data.data()));
  const double h2 = grid.spacing() * grid.spacing();
  for (int q1 = 0; q1 < n; ++q1) {
    for (int q2 = 0; q2 < n; ++q2) {
      data[static_cast<std::size_t>(q1) * n + q2] *= h2 * parity(q1, q2);
    }
  }
  return SpectralField(grid, std::move(data));
}

double symmetry_defect(const SpectralField& F) {
  const int n = F.n();
  const double scale = F.max_abs();
  if (scale == 0.0) return 0.0;
  double worst = 0.0;
  for (int q1 = 0; q1 < n; ++q1) {
    const int p1 = (n - q1) % n;
    for (int q2 = 0; q2 < n; ++q2) {
      const int p2 = (n - q2) % n;
      worst = std::max(worst, std::abs(F.at(p1, p2) - std::conj(F.at(q1, q2))));
    }
  }
  return worst / scale;
}

RealField inverse_transform(const SpectralField& F) {
  if (symmetry_defect(F) > kSymmetryTol) {
    throw SymmetryViolation("inverse_transform: coefficients are not conjugate-symmetric");
  }
  const TorusGrid& grid = F.grid();
  const int n = grid.n();
  std::vector<std::complex<double>> data(F.coeffs().begin(), F.coeffs().end());
  for (int q1 = 0; q1 < n; ++q1) {
    for (int q2 = 0; q2 < n; ++q2) {
      data[static_cast<std::size_t>(q1) * n + q2] *= parity(q1, q2);
    }
  }
  fftw_execute_dft(PlanCache::instance().get(n).backward, as_fftw(data.data()),
                   as_fftw(data.data()));
  const double scale = 1.0 / TorusGrid::area();
  std::vector<double> values(data.size());
  for (std::size_t k = 0; k < data.size(); ++k) values[k] = data[k].real() * scale;
  return RealField(grid, std::move(values));
}

MultiplierTable::MultiplierTable(TorusGrid grid, const Symbol& symbol)
    : grid_(grid), values_(grid.size()) {
  const int n = grid.n();
  for (int q1 = 0; q1 < n; ++q1) {
    for (int q2 = 0; q2 < n; ++q2) {
      values_[static_cast<std::size_t>(q1) * n + q2] =
          symbol(grid.wavenumber(q1), grid.wavenumber(q2));
    }
  }
  const int nyq = n / 2;
  for (int q1 = 0; q1 < n; ++q1) {
    const int k1 = grid.wavenumber(q1);
    for (int q2 = 0; q2 < n; ++q2) {
      const int k2 = grid.wavenumber(q2);
      const auto m = (*this)(q1, q2);
      const double tol = kSymmetryTol * std::max(1.0, std::abs(m));
      if (q1 != nyq && q2 != nyq) {
        if (std::abs(symbol(-k1, -k2) - std::conj(m)) > tol) {
          throw SymmetryViolation("apply_multiplier: symbol breaks m(-k) = conj(m(k))");
        }
        continue;
      }
      // Unpaired Nyquist row/column: its index-space partner is itself along
      // that axis, so the symbol must already be conjugate-symmetric there.
      const int p1 = (n - q1) % n;
      const int p2 = (n - q2) % n;
      const auto partner = (*this)(p1, p2);
      if (std::abs(partner - std::conj(m)) > tol) {
        values_[static_cast<std::size_t>(q1) * n + q2] = 0.0;
        values_[static_cast<std::size_t>(p1) * n + p2] = 0.0;
      }
    }
  }
}

void MultiplierTable::apply_in_place(SpectralField& F) const {
  if (!(F.grid() == grid_)) {
    throw std::invalid_argument("MultiplierTable applied on a different grid");
  }
  auto c = F.coeffs();
  for (std::size_t k = 0; k < c.size(); ++k) c[k] *= values_[k];
}

MultiplierTable MultiplierTable::operator*(const MultiplierTable& other) const {
  std::vector<std::complex<double>> v(values_.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = values_[k] * other.values_[k];
  return MultiplierTable(grid_, std::move(v));
}

SpectralField apply_multiplier(const SpectralField& F, const Symbol& m) {
  return MultiplierTable(F.grid(), m).apply(F);
}

double integrate(const RealField& f) {
  double sum = 0.0;
  for (double v : f.values()) sum += v;
  const double h = f.grid().spacing();
  return sum * h * h;
}

double mean(const RealField& f) { return integrate(f) / TorusGrid::area(); }

bool is_aliased_mode(const TorusGrid& grid, int q1, int q2) {
  const int k = std::max(std::abs(grid.wavenumber(q1)), std::abs(grid.wavenumber(q2)));
  return 3 * k >= grid.n();
}

void dealias_in_place(SpectralField& F) {
  const int n = F.n();
  for (int q1 = 0; q1 < n; ++q1) {
    for (int q2 = 0; q2 < n; ++q2) {
      if (is_aliased_mode(F.grid(), q1, q2)) F.at(q1, q2) = 0.0;
    }
  }
}

SpectralField dealias(const SpectralField& F) {
  SpectralField out = F;
  dealias_in_place(out);
  return out;
}

SpectralField derivative(const SpectralField& F, int axis) {
  return apply_multiplier(F, [axis](int k1, int k2) {
    return std::complex<double>(0.0, axis == 0 ? k1 : k2);
  });
}

double parseval_inner(const SpectralField& F, const SpectralField& G) {
  double sum = 0.0;
  auto a = F.coeffs();
  auto b = G.coeffs();
  for (std::size_t k = 0; k < a.size(); ++k) sum += (a[k] * std::conj(b[k])).real();
  return sum / TorusGrid::area();
}

double spectral_tail_fraction(const SpectralField& F) {
  const TorusGrid& grid = F.grid();
  const int n = grid.n();
  const double cutoff2 = (n / 3.0) * (n / 3.0);
  double total = 0.0;
  double tail = 0.0;
  for (int q1 = 0; q1 < n; ++q1) {
    const int k1 = grid.wavenumber(q1);
    for (int q2 = 0; q2 < n; ++q2) {
      const int k2 = grid.wavenumber(q2);
      const double e = std::norm(F.at(q1, q2));
      total += e;
      if (k1 * k1 + k2 * k2 > cutoff2) tail += e;
    }
  }
  return total > 0.0 ? tail / total : 0.0;
}

}  // namespace fracscalar
