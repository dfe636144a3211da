#include <doctest.h>

#include <cmath>
#include <sstream>

#include "fracscalar/diagnostics.hpp"
#include "fracscalar/errors.hpp"
#include "fracscalar/fractional_ops.hpp"
#include "oracles.hpp"

using namespace fracscalar;
using oracle::pi;

namespace {

const TorusGrid g16(16);
const TorusGrid g32(32);
const double area = 4 * pi * pi;

RealField cos1(const TorusGrid& g) {
  return RealField::from_function(g, [](double x1, double) { return std::cos(x1); });
}

// Gagliardo sum written out over coordinates, geodesic distance taken per axis.
double brute_wsp(const RealField& u, double s, double p) {
  const TorusGrid& g = u.grid();
  const int n = g.n();
  const double h = g.spacing();
  double acc = 0.0;
  for (int i1 = 0; i1 < n; ++i1)
    for (int j1 = 0; j1 < n; ++j1)
      for (int i2 = 0; i2 < n; ++i2)
        for (int j2 = 0; j2 < n; ++j2) {
          if (i1 == i2 && j1 == j2) continue;
          double d1 = std::abs(g.coord(i1) - g.coord(i2));
          double d2 = std::abs(g.coord(j1) - g.coord(j2));
          d1 = std::min(d1, 2 * pi - d1);
          d2 = std::min(d2, 2 * pi - d2);
          const double dist = std::sqrt(d1 * d1 + d2 * d2);
          acc += std::pow(std::abs(u(i1, j1) - u(i2, j2)), p) / std::pow(dist, 2 + s * p) * h * h * h * h;
        }
  return std::pow(acc, 1 / p);
}

// Sup of |integral of u over a grid-aligned rectangle| / diagonal^delta.
double brute_holder(const RealField& u, double delta) {
  const int n = u.n();
  const double h = u.grid().spacing();
  double best = 0.0;
  for (int a1 = 0; a1 <= n; ++a1)
    for (int a2 = 0; a2 <= n; ++a2)
      for (int b1 = a1 + 1; b1 <= n; ++b1)
        for (int b2 = 0; b2 <= n; ++b2) {
          if (b2 == a2) continue;
          double rect = 0.0;
          for (int i = a1; i < b1; ++i)
            for (int j = std::min(a2, b2); j < std::max(a2, b2); ++j) rect += u(i, j) * h * h;
          const double d = h * std::hypot(b1 - a1, b2 - a2);
          best = std::max(best, std::abs(rect) / std::pow(d, delta));
        }
  return best;
}

}  // namespace

TEST_CASE("lp_norm examples") {
  const RealField one(g32, 1.0);
  CHECK(lp_norm(one, 1) == doctest::Approx(area).epsilon(1e-14));
  CHECK(lp_norm(one, 7) == doctest::Approx(std::pow(area, 1.0 / 7)).epsilon(1e-14));
  CHECK(lp_norm(cos1(g32), 2) == doctest::Approx(pi * std::sqrt(2.0)).epsilon(1e-13));
  CHECK(lp_norm(-2.0 * cos1(g32), kInfinity) == doctest::Approx(2.0));
  CHECK_THROWS_AS(lp_norm(one, 0.5), std::invalid_argument);
}

TEST_CASE("hs_seminorm of unit modes") {
  const RealField w = RealField::from_function(g32, [](double x1, double x2) { return std::cos(x1 + x2); });
  // ||Lambda^s cos(x1+x2)||_2 = 2^{s/2} * pi sqrt(2).
  for (double s : {0.0, 0.5, 1.0, 2.0})
    CHECK(hs_seminorm(w, s) == doctest::Approx(std::pow(2.0, s / 2) * pi * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(hs_seminorm(RealField(g32, 3.0), 1.0) == 0.0);
}

TEST_CASE("wsp_seminorm") {
  CHECK(wsp_seminorm(RealField(g16, 3.0), 0.5, 2) == 0.0);
  const RealField u = oracle::random_poly(4, 3, 0.0, 1.0).sample(g16);
  CHECK(wsp_seminorm(2.0 * u, 0.4, 1.5) == doctest::Approx(2 * wsp_seminorm(u, 0.4, 1.5)).epsilon(1e-12));

  const RealField small = oracle::random_poly(5, 2, 0.0, 1.0).sample(TorusGrid(8));
  for (auto [s, p] : {std::pair{0.25, 2.0}, {0.5, 1.0}, {0.75, 1.5}})
    CHECK(wsp_seminorm(small, s, p) == doctest::Approx(brute_wsp(small, s, p)).epsilon(1e-12));

  const double w32 = wsp_seminorm(cos1(g32), 0.25, 2);
  const double w64 = wsp_seminorm(cos1(TorusGrid(64)), 0.25, 2);
  const double hs = hs_seminorm(cos1(g32), 0.25);
  CHECK(std::abs(w32 - w64) / w64 < 0.05);
  CHECK(w32 / hs <= 10.0);
  CHECK(hs / w32 <= 10.0);

  CHECK(wsp_seminorm(u, 0.3, 2, Execution::serial) ==
        doctest::Approx(wsp_seminorm(u, 0.3, 2, Execution::parallel)).epsilon(1e-13));
  CHECK_THROWS_AS(wsp_seminorm(RealField(TorusGrid(128), 1.0), 0.5, 2), GridTooLarge);
  CHECK_THROWS_AS(wsp_seminorm(u, 1.0, 2), std::invalid_argument);
}

TEST_CASE("entropy examples") {
  CHECK(std::abs(entropy(RealField(g32, 1.0))) < 1e-13);
  CHECK(entropy(RealField(g32, std::exp(1.0))) == doctest::Approx(area).epsilon(1e-13));
  CHECK(entropy(RealField(g32, 0.0)) == doctest::Approx(area).epsilon(1e-13));
  CHECK(entropy(RealField(g32, 1e-14)) == doctest::Approx(area).epsilon(1e-10));
}

TEST_CASE("dissipation pairing") {
  CHECK(std::abs(dissipation_pairing(RealField(g32, 1.0), 1.5, 2.0)) < 1e-12);
  const RealField u = oracle::random_positive(6, 4).sample(g32);
  for (double a : {0.5, 1.0, 1.5}) {
    const double semi = hs_seminorm(u, a / 2);
    CHECK(dissipation_pairing(u, a, 1.0) == doctest::Approx(semi * semi).epsilon(1e-10));
  }
  const RealField b = RealField::from_function(g32, [](double x1, double) { return 1 + 0.5 * std::cos(x1); });
  const double lhs = dissipation_pairing(b, 1.0, 2.0);
  RealField b32 = b;
  for (double& x : b32.values()) x = std::pow(x, 1.5);
  const double semi = hs_seminorm(b32, 0.5);
  CHECK(lhs > 0.0);
  CHECK(stroock_varopoulos_lower(b, 1.0, 2.0) == doctest::Approx(8.0 / 9.0 * semi * semi).epsilon(1e-12));
  CHECK(lhs >= 8.0 / 9.0 * semi * semi);
}

TEST_CASE("Stroock-Varopoulos on random positive fields") {
  for (unsigned seed = 0; seed < 10; ++seed) {
    const RealField u = oracle::random_positive(100 + seed, 5, 0.05).sample(g32);
    for (double a : {0.5, 1.0, 1.5})
      for (double s : {0.5, 1.0, 2.0}) {
        const double lower = stroock_varopoulos_lower(u, a, s);
        const double pair = dissipation_pairing(u, a, s);
        CHECK(lower <= pair + 1e-8 * std::max(1.0, std::abs(pair)));
        if (s == 1.0) CHECK(std::abs(lower - pair) <= 1e-10 * std::max(1.0, std::abs(pair)));
      }
  }
}

TEST_CASE("log pairing is non-negative") {
  for (unsigned seed = 0; seed < 5; ++seed) {
    const RealField u = oracle::random_positive(30 + seed, 4).sample(g32);
    CHECK(log_pairing(u, 1.0) >= -1e-10);
  }
  CHECK(std::abs(log_pairing(RealField(g32, 2.0), 1.0)) < 1e-12);
}

TEST_CASE("entropy seminorm ratio is finite and grid-stable") {
  const oracle::TrigPoly p = oracle::random_positive(12, 2, 0.5);
  const double r16 = entropy_seminorm_ratio(p.sample(g16), 1.5, 0.1);
  const double r32 = entropy_seminorm_ratio(p.sample(g32), 1.5, 0.1);
  const double r64 = entropy_seminorm_ratio(p.sample(TorusGrid(64)), 1.5, 0.1);
  CHECK(std::isfinite(r64));
  MESSAGE("ratio at n = 16, 32, 64: " << r16 << ", " << r32 << ", " << r64);
  CHECK(std::abs(r32 - r64) < std::abs(r16 - r32));
  CHECK(std::abs(r32 - r64) / r64 < 0.25);
}

TEST_CASE("max principle probe examples") {
  const RealField w = RealField::from_function(g32, [](double x1, double x2) { return std::cos(x1) + std::cos(x2); });
  for (double a : {0.5, 1.0, 1.7}) {
    const MaxPrincipleReport r = max_principle_probe(w, a, 4.0 / 3.0);
    CHECK(r.argmax_i == 16);
    CHECK(r.argmax_j == 16);
    CHECK(r.x1 == doctest::Approx(0.0));
    CHECK(r.ubar == doctest::Approx(2.0));
    CHECK(r.lam_at_max == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r.weak_max_ok);
    CHECK(r.delta == doctest::Approx(0.5));
  }
  const MaxPrincipleReport c = max_principle_probe(RealField(g32, 3.0), 1.0, 1.5);
  CHECK(c.lam_at_max == doctest::Approx(0.0));
  CHECK(c.weak_max_ok);
  CHECK(c.chain_ok);
  CHECK_THROWS_AS(max_principle_probe(w, 1.0, 2.0), std::invalid_argument);
}

TEST_CASE("Holder quotient against a brute-force rectangle scan") {
  const TorusGrid g(8);
  const RealField u = oracle::random_positive(77, 2).sample(g);
  MaxPrincipleOptions o;
  for (double p0 : {1.2, 1.5}) {
    const MaxPrincipleReport r = max_principle_probe(u, 1.0, p0, o);
    CHECK(r.phi_holder == doctest::Approx(brute_holder(u, r.delta)).epsilon(1e-12));
  }
}

TEST_CASE("Holder chain holds on random non-negative fields") {
  for (unsigned seed = 0; seed < 100; ++seed) {
    const RealField u = oracle::random_positive(500 + seed, 4, 0.0, 0.3).sample(g16);
    for (double p0 : {1.2, 4.0 / 3.0, 1.8}) {
      const MaxPrincipleReport r = max_principle_probe(u, 1.0, p0);
      CHECK(r.chain_ok);
    }
  }
}

TEST_CASE("probe sampling modes agree on the maximum location") {
  const RealField u = oracle::random_positive(3, 3).sample(TorusGrid(64));
  MaxPrincipleOptions o;
  o.random_pairs = 20000;
  const MaxPrincipleReport r = max_principle_probe(u, 1.2, 1.5, o);
  CHECK(r.ubar == u.max());
  CHECK(r.holder_ok);
  MaxPrincipleOptions serial = o;
  serial.exec = Execution::serial;
  const RealField v = oracle::random_positive(3, 3).sample(g16);
  CHECK(max_principle_probe(v, 1.2, 1.5).phi_holder == max_principle_probe(v, 1.2, 1.5, serial).phi_holder);
}

TEST_CASE("cumulative_phi") {
  const RealField u = oracle::random_positive(8, 3).sample(g16);
  const std::vector<double> phi = cumulative_phi(u);
  REQUIRE(phi.size() == 17u * 17u);
  CHECK(phi[0] == 0.0);
  CHECK(phi[16] == 0.0);
  CHECK(phi.back() == doctest::Approx(oracle::grid_sum(u)).epsilon(1e-13));
  const double h = g16.spacing();
  double rect = 0.0;
  for (int i = 3; i < 9; ++i)
    for (int j = 5; j < 12; ++j) rect += u(i, j) * h * h;
  auto P = [&](int a, int b) { return phi[a * 17 + b]; };
  CHECK(P(9, 12) - P(3, 12) - P(9, 5) + P(3, 5) == doctest::Approx(rect).epsilon(1e-12));
}

TEST_CASE("admissible exponent") {
  CHECK(largest_admissible_s(1.0, 0.25, 3.0) == doctest::Approx(1.0 / 3.0));
  const double s0 = largest_admissible_s(1.0, 0.25, 3.0);
  CHECK(s0 + 1 == doctest::Approx(4.0 / 3.0));  // p0 = chi / (chi - r)
  CHECK(largest_admissible_s(1.0, 1.0, 3.0) == 3.0);
  CHECK(largest_admissible_s(1.0, 0.0, 3.0) == 0.0);
  CHECK(largest_admissible_s(0.0, 0.5, 2.0) == 2.0);
  CHECK(largest_admissible_s(1.0, 0.9, 3.0) == 3.0);  // 9 capped
  for (double chi : {0.5, 1.0, 2.0})
    for (double r : {0.1, 0.3}) {
      const double s = largest_admissible_s(chi, r, 100.0);
      if (r < chi) CHECK(chi * s / (s + 1) <= r * (1 + 1e-12));
    }
}

TEST_CASE("mass cap") {
  CHECK(mass_cap(10.0) == doctest::Approx(area));
  CHECK(mass_cap(100.0) == 100.0);
}

TEST_CASE("compute_record") {
  ModelParams p;
  p.alpha = 1.5;
  p.chi = 1.0;
  p.r = 0.25;
  p.drift = DriftSpec::ks_screened(1.0);
  const DiagnosticsConfig cfg = DiagnosticsConfig::for_model(p, {"divB", "sv", "aee3e", "aee5", "aee6"});
  const RealField u = oracle::random_positive(9, 4).sample(g32);
  const DiagnosticsRecord r = compute_record(u, 0.5, 0.1, p, cfg);
  CHECK(r.max_u == u(r.argmax_i, r.argmax_j));
  CHECK(r.max_u == u.max());
  CHECK(r.min_u == u.min());
  CHECK(r.holder_consistent);
  CHECK(r.lp(4.0 / 3.0) == doctest::Approx(lp_norm(u, 4.0 / 3.0)));
  CHECK(r.lp(7.0 / 3.0) == doctest::Approx(lp_norm(u, 7.0 / 3.0)));
  CHECK(r.lp(kInfinity) == u.max_abs());
  CHECK_THROWS_AS(r.lp(5.0), std::out_of_range);
  CHECK(r.mass == doctest::Approx(oracle::grid_sum(u)));
  CHECK(r.lam_at_max == doctest::Approx(lambda_pow(u, 1.5)(r.argmax_i, r.argmax_j)));
  CHECK(r.extra("divB_excess") <= 1e-8);
  CHECK(r.extra("screened_min_v") >= 0.0);
  CHECK(r.extra("sv_lower") <= r.extra("sv_pairing"));
  CHECK(r.has_extra("aee5_wsp"));
  CHECK(r.has_extra("aee6_wsp"));
  CHECK(r.has_extra("aee3e_seminorm_sq"));
  CHECK_FALSE(r.has_extra("nothing"));

  const DiagnosticsRecord big = compute_record(oracle::random_positive(9, 4).sample(TorusGrid(128)), 0, 0, p, cfg);
  CHECK_FALSE(big.has_extra("aee5_wsp"));
}

TEST_CASE("records CSV") {
  ModelParams p;
  const DiagnosticsConfig cfg = DiagnosticsConfig::for_model(p, {});
  const RealField u = oracle::random_positive(1, 2).sample(g16);
  std::ostringstream os;
  write_records_csv(os, {compute_record(u, 0, 0, p, cfg), compute_record(u, 1, 0, p, cfg)});
  std::istringstream is(os.str());
  std::string header, line;
  std::getline(is, header);
  CHECK(header.rfind("t,lp_1,lp_2,lp_inf,hs_0.5,hs_1,entropy_F", 0) == 0);
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == 2);
  CHECK(lp_column(4.0 / 3.0) == "lp_1.333333");
}
