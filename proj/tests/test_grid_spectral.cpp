#include <doctest.h>

#include <cmath>

#include "fracscalar/errors.hpp"
#include "fracscalar/spectral.hpp"
#include "oracles.hpp"

using namespace fracscalar;
using oracle::pi;

TEST_CASE("grid geometry") {
  const TorusGrid g(16);
  CHECK(g.spacing() == doctest::Approx(2 * pi / 16));
  CHECK(g.coord(0) == -pi);
  CHECK(g.coord(4) == doctest::Approx(-pi + 4 * 2 * pi / 16));
  CHECK(g.wavenumber(0) == 0);
  CHECK(g.wavenumber(7) == 7);
  CHECK(g.wavenumber(8) == -8);
  CHECK(g.wavenumber(15) == -1);
  CHECK(g.index_of(-1) == 15);
  CHECK(TorusGrid::area() == doctest::Approx(4 * pi * pi));
  CHECK_THROWS_AS(TorusGrid(6), std::invalid_argument);
  CHECK_THROWS_AS(TorusGrid(9), std::invalid_argument);
}

TEST_CASE("forward transform of constants and single modes") {
  const TorusGrid g(16);
  const SpectralField one = forward_transform(RealField(g, 1.0));
  CHECK(std::abs(one.mode(0, 0) - 4 * pi * pi) < 1e-12);
  double rest = 0.0;
  for (int q1 = 0; q1 < 16; ++q1)
    for (int q2 = 0; q2 < 16; ++q2)
      if (q1 || q2) rest = std::max(rest, std::abs(one.at(q1, q2)));
  CHECK(rest < 1e-12);

  const SpectralField c = forward_transform(
      RealField::from_function(g, [](double x1, double) { return std::cos(x1); }));
  CHECK(std::abs(c.mode(1, 0) - 2 * pi * pi) < 1e-12);
  CHECK(std::abs(c.mode(-1, 0) - 2 * pi * pi) < 1e-12);
  CHECK(std::abs(c.mode(2, 0)) < 1e-12);
}

TEST_CASE("forward transform matches the direct sum") {
  const TorusGrid g(8);
  const RealField f = oracle::random_poly(3, 2, 0.0, 0.7).sample(g);
  const SpectralField F = forward_transform(f);
  for (int k1 = -4; k1 < 4; ++k1)
    for (int k2 = -4; k2 < 4; ++k2)
      CHECK(std::abs(F.mode(k1, k2) - oracle::dft_coefficient(f, k1, k2)) < 1e-12);
}

TEST_CASE("roundtrip of band-limited fields") {
  const TorusGrid g(32);
  for (unsigned s = 0; s < 5; ++s) {
    const RealField f = oracle::random_poly(s, 10, 0.0, 1.0).sample(g);
    const RealField back = inverse_transform(forward_transform(f));
    CHECK(oracle::max_diff(back, f) <= 1e-12 * f.max_abs());
  }
}

TEST_CASE("inverse transform") {
  const TorusGrid g(16);
  SpectralField F(g);
  F.mode(0, 0) = 4 * pi * pi;
  CHECK(oracle::max_diff(inverse_transform(F), RealField(g, 1.0)) < 1e-14);

  SpectralField C(g);
  C.mode(1, 0) = C.mode(-1, 0) = 2 * pi * pi;
  const RealField cos1 = RealField::from_function(g, [](double x1, double) { return std::cos(x1); });
  CHECK(oracle::max_diff(inverse_transform(C), cos1) < 1e-14);

  SpectralField bad(g);
  bad.mode(1, 0) = 1.0;
  CHECK_THROWS_AS(inverse_transform(bad), SymmetryViolation);
}

TEST_CASE("apply_multiplier") {
  const TorusGrid g(32);
  const RealField cos1 = RealField::from_function(g, [](double x1, double) { return std::cos(x1); });
  const RealField cos2 = RealField::from_function(g, [](double x1, double) { return std::cos(2 * x1); });
  const SpectralField F1 = forward_transform(cos1);

  const SpectralField id = apply_multiplier(F1, [](int, int) { return std::complex<double>(1.0); });
  CHECK(oracle::max_diff(inverse_transform(id), cos1) < 1e-14);

  auto mag = [](double a) {
    return [a](int k1, int k2) { return std::complex<double>(std::pow(std::hypot(k1, k2), a)); };
  };
  CHECK(oracle::max_diff(inverse_transform(apply_multiplier(F1, mag(0.7))), cos1) < 1e-13);
  const RealField r = inverse_transform(apply_multiplier(forward_transform(cos2), mag(1.5)));
  CHECK(oracle::max_diff(r, 2.8284271247461903 * cos2) < 1e-12);

  CHECK_THROWS_AS(apply_multiplier(F1, [](int k1, int) { return std::complex<double>(k1); }),
                  SymmetryViolation);
}

TEST_CASE("multipliers compose") {
  const TorusGrid g(16);
  const SpectralField F = forward_transform(oracle::random_poly(1, 7).sample(g));
  const Symbol a = [](int k1, int k2) { return std::complex<double>(1.0 / (1.0 + k1 * k1 + 2 * k2 * k2)); };
  const Symbol b = [](int k1, int k2) { return std::complex<double>(0.0, k1 + k2); };
  const SpectralField seq = apply_multiplier(apply_multiplier(F, a), b);
  const SpectralField one = apply_multiplier(F, [&](int k1, int k2) { return a(k1, k2) * b(k1, k2); });
  for (std::size_t k = 0; k < seq.coeffs().size(); ++k) CHECK(std::abs(seq.coeffs()[k] - one.coeffs()[k]) <= 1e-14 * std::max(1.0, std::abs(one.coeffs()[k])));
}

TEST_CASE("odd multipliers drop the Nyquist row and column") {
  const TorusGrid g(8);
  const MultiplierTable t(g, [](int k1, int) { return std::complex<double>(0.0, k1); });
  for (int q = 0; q < 8; ++q) CHECK(t(4, q) == std::complex<double>(0.0));
  CHECK(t(1, 0) == std::complex<double>(0.0, 1.0));
}

TEST_CASE("integrate") {
  const TorusGrid g(32);
  CHECK(integrate(RealField(g, 1.0)) == doctest::Approx(39.47841760435743).epsilon(1e-14));
  CHECK(std::abs(integrate(RealField::from_function(g, [](double x1, double) { return std::cos(x1); }))) < 1e-12);
  CHECK(integrate(RealField::from_function(g, [](double x1, double) { return std::cos(x1) * std::cos(x1); })) ==
        doctest::Approx(2 * pi * pi).epsilon(1e-13));
}

TEST_CASE("Parseval") {
  const TorusGrid g(32);
  for (unsigned s = 0; s < 5; ++s) {
    const RealField f = oracle::random_poly(10 + s, 9, 0.0, 0.3).sample(g);
    const RealField h = oracle::random_poly(20 + s, 9, 0.0, -0.2).sample(g);
    const double direct = oracle::grid_sum(f * h);
    CHECK(std::abs(parseval_inner(forward_transform(f), forward_transform(h)) - direct) <=
          1e-10 * std::max(1.0, std::abs(direct)));
  }
}

TEST_CASE("dealias") {
  const TorusGrid g(48);
  const RealField low = oracle::random_poly(5, 15, 0.0, 2.0).sample(g);  // 15 < 48/3
  const SpectralField L = forward_transform(low);
  CHECK(oracle::max_diff(inverse_transform(dealias(L)), low) < 1e-12);

  const RealField high = RealField::from_function(g, [](double x1, double) { return std::cos(23 * x1); });
  CHECK(dealias(forward_transform(high)).max_abs() < 1e-12);

  const SpectralField one = dealias(forward_transform(RealField(g, 1.0)));
  CHECK(std::abs(one.mode(0, 0) - 4 * pi * pi) < 1e-12);

  const SpectralField R = forward_transform(oracle::random_poly(8, 23).sample(g));
  const SpectralField d1 = dealias(R), d2 = dealias(d1);
  for (std::size_t k = 0; k < d1.coeffs().size(); ++k) CHECK(d1.coeffs()[k] == d2.coeffs()[k]);
  CHECK(is_aliased_mode(g, g.index_of(16), 0));
  CHECK_FALSE(is_aliased_mode(g, g.index_of(15), g.index_of(-15)));
}

TEST_CASE("spectral tail fraction") {
  const TorusGrid g(32);
  CHECK(spectral_tail_fraction(forward_transform(RealField(g, 1.0))) == 0.0);
  const RealField f = RealField::from_function(g, [](double x1, double) { return std::cos(x1) + std::cos(12 * x1); });
  CHECK(spectral_tail_fraction(forward_transform(f)) == doctest::Approx(0.5));
}
