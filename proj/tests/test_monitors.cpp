#include <doctest.h>

#include <cmath>
#include <json.hpp>

#include "fracscalar/evolution.hpp"
#include "fracscalar/monitors.hpp"
#include "oracles.hpp"

using namespace fracscalar;
using oracle::pi;

namespace {

const TorusGrid g32(32);

ModelParams params(double alpha, double chi, double r) {
  ModelParams p;
  p.alpha = alpha;
  p.chi = chi;
  p.r = r;
  return p;
}

Trajectory simulate(const RealField& u0, const ModelParams& p, double dt, double T, int every,
                    std::vector<std::string> monitors = all_monitor_names(), bool snaps = false) {
  StepperConfig c;
  c.dt = dt;
  RunOptions o;
  o.diag_every = every;
  o.keep_snapshots = snaps;
  o.diagnostics = DiagnosticsConfig::for_model(p, std::move(monitors));
  return run(u0, p, c, T, o);
}

const MonitorResult& find(const std::vector<MonitorResult>& v, const std::string& name) {
  for (const auto& m : v)
    if (m.monitor == name) return m;
  throw std::runtime_error("missing " + name);
}

DiagnosticsRecord fake(double t, double l1) {
  DiagnosticsRecord r;
  r.t = t;
  r.lp_norms = {{1.0, l1}, {2.0, 1.0}, {kInfinity, 1.0}};
  return r;
}

}  // namespace

TEST_CASE("aee1 with the unit constant") {
  const ModelParams p = params(1.5, 1.0, 0.5);
  const Trajectory t = simulate(RealField(g32, 1.0), p, 1e-2, 1.0, 10);
  const auto res = check_bounds(t, p, {{"aee1"}});
  REQUIRE(res.size() == 1);
  CHECK(res[0].status == MonitorStatus::green);
  CHECK(res[0].rhs_or_ratio == doctest::Approx(39.4784176).epsilon(1e-8));
  CHECK(res[0].lhs == doctest::Approx(4 * pi * pi).epsilon(1e-10));
}

TEST_CASE("monitors on a smooth Keller-Segel run") {
  const ModelParams p = params(1.5, 1.0, 0.5);
  const RealField u0 = oracle::random_positive(42, 3, 0.2).sample(g32);
  const Trajectory t = simulate(u0, p, 2e-3, 1.0, 5);
  const auto res = check_bounds(t, p);
  CHECK(res.size() == all_monitor_names().size());
  for (const std::string name : {"aee1", "aee2", "aee3", "aee3e", "aee4", "divB", "sv", "ode32"}) {
    INFO(name);
    CHECK(find(res, name).status == MonitorStatus::green);
  }
  for (const std::string name : {"aee5", "aee6", "apstrong"}) {
    INFO(name);
    CHECK(find(res, name).status == MonitorStatus::ratio);
    CHECK(std::isfinite(find(res, name).rhs_or_ratio));
  }
}

TEST_CASE("hypotheses gate the monitors") {
  const ModelParams p = params(1.5, 1.0, 0.0);
  const Trajectory t = simulate(oracle::random_positive(1, 2).sample(g32), p, 1e-2, 0.2, 5);
  const auto res = check_bounds(t, p);
  for (const std::string name : {"aee2", "aee3", "aee4", "aee5", "aee6", "sv"}) {
    INFO(name);
    CHECK(find(res, name).status == MonitorStatus::skipped);
    CHECK_FALSE(find(res, name).hypothesis_met);
  }
  CHECK(find(res, "apstrong").status == MonitorStatus::skipped);  // alpha > 2 fails at r = 0

  ModelParams sqg = params(1.5, 1.0, 0.5);
  sqg.drift = DriftSpec::sqg();
  const Trajectory ts = simulate(oracle::random_positive(1, 2).sample(g32), sqg, 1e-2, 0.2, 5);
  const auto rs = check_bounds(ts, sqg, {{"aee3", "divB", "ode32"}});
  for (const auto& m : rs) CHECK(m.status == MonitorStatus::skipped);

  Trajectory one;
  one.records.push_back(fake(0, 1));
  CHECK(check_bounds(one, p, {{"aee1"}})[0].status == MonitorStatus::skipped);
  CHECK_THROWS_AS(check_bounds(t, p, {{"aee9"}}), std::invalid_argument);
}

TEST_CASE("violations are reported with a margin") {
  Trajectory t;
  t.records = {fake(0, 50.0), fake(1, 50.2)};
  const auto res = check_bounds(t, params(1.5, 1.0, 0.5), {{"aee1"}});
  CHECK(res[0].status == MonitorStatus::violated);
  CHECK(res[0].margin == doctest::Approx(0.2));
  t.records[1] = fake(1, 50.0 * (1 + 5e-7));
  CHECK(check_bounds(t, params(1.5, 1.0, 0.5), {{"aee1"}})[0].status == MonitorStatus::green);
}

TEST_CASE("aee3 is checked record by record") {
  ModelParams p = params(1.5, 1.0, 1.0);
  Trajectory t;
  for (int i = 0; i < 3; ++i) {
    DiagnosticsRecord r = fake(i, 1.0);
    r.lp_norms.push_back({4.0, 1.0});
    t.records.push_back(r);
  }
  // Growth e^{0.5 t} at unit rate r = 1 is allowed.
  t.records[1].lp_norms.back().second = std::exp(0.5);
  CHECK(check_bounds(t, p, {{"aee3"}})[0].status == MonitorStatus::green);
  // The final record alone is fine but the middle one exceeds e^{rt}.
  t.records[1].lp_norms.back().second = std::exp(1.1);
  CHECK(check_bounds(t, p, {{"aee3"}})[0].status == MonitorStatus::violated);
}

TEST_CASE("ode residual on constant logistic data") {
  const ModelParams p = params(1.5, 1.0, 1.0);
  const Trajectory t = simulate(RealField(g32, 2.0), p, 1e-3, 0.5, 1, {});
  const OdeResidual res = ode_residual_monitor(t, p);
  REQUIRE(res.residual.size() == t.records.size() - 1);
  // B vanishes on constants, so the chi term is pure slack.
  for (std::size_t i = 0; i < res.residual.size(); ++i) {
    const auto& a = t.records[i];
    const auto& b = t.records[i + 1];
    const double chi_part = 0.5 * p.chi * (a.max_u * a.max_u + b.max_u * b.max_u);
    CHECK(std::abs(res.residual[i] + chi_part) <= 5e-3);
  }
  CHECK(res.max_residual < 0.0);
}

TEST_CASE("ode residual on the stationary state") {
  const ModelParams p = params(1.5, 1.0, 1.0);
  const Trajectory t = simulate(RealField(g32, 1.0), p, 1e-2, 0.5, 1, {});
  const OdeResidual res = ode_residual_monitor(t, p);
  for (double r : res.residual) {
    CHECK(r <= p.chi + 1e-6);
    CHECK(r == doctest::Approx(-p.chi).epsilon(1e-8));
  }
}

TEST_CASE("ode residual along a cosine bump") {
  const ModelParams p = params(1.5, 1.0, 1.0);
  const RealField u0 = RealField::from_function(g32, [](double x1, double) { return 1 + 0.9 * std::cos(x1); });
  const Trajectory t = simulate(u0, p, 1e-3, 1.0, 5, {"ode32"});
  const OdeResidual res = ode_residual_monitor(t, p);
  CHECK(res.max_residual <= 1e-2);
  CHECK(find(check_bounds(t, p, {{"ode32"}}), "ode32").status == MonitorStatus::green);
}

TEST_CASE("weak residual vanishes for the zero test function") {
  const ModelParams p = params(1.5, 1.0, 1.0);
  const Trajectory t = simulate(oracle::random_positive(5, 2).sample(g32), p, 1e-2, 0.2, 2, {}, true);
  TestFunction zero{[](double, double, double) { return 0.0; }, [](double, double, double) { return 0.0; }};
  CHECK(weak_residual(t, p, zero) == 0.0);
  CHECK_THROWS_AS(weak_residual(simulate(RealField(g32, 1.0), p, 1e-2, 0.1, 2), p, zero), std::invalid_argument);
}

TEST_CASE("weak residual of the constant logistic solution") {
  const ModelParams p = params(1.5, 1.0, 1.0);
  const double T = 0.5;
  const Trajectory t = simulate(RealField(g32, 2.0), p, 1e-3, T, 1, {}, true);
  TestFunction psi{[T](double, double, double s) { return (T - s) * (T - s); },
                   [T](double, double, double s) { return -2 * (T - s); }};
  CHECK(std::abs(weak_residual(t, p, psi)) <= 1e-4 * 4 * pi * pi);
}

TEST_CASE("weak residual converges under refinement") {
  ModelParams p = params(1.5, 1.0, 1.0);
  p.eps_viscosity = 0.01;
  const double T = 0.5;
  const RealField u0 = RealField::from_function(g32, [](double x1, double x2) {
    return 1 + 0.5 * std::cos(x1) + 0.3 * std::sin(x2);
  });
  TestFunction phi{[T](double x1, double, double s) { return (T - s) * (T - s) * std::cos(x1); },
                   [T](double x1, double, double s) { return -2 * (T - s) * std::cos(x1); }};
  double prev = 0.0;
  for (double dt : {1e-2, 5e-3, 2.5e-3}) {
    const double r = std::abs(weak_residual(simulate(u0, p, dt, T, 1, {}, true), p, phi));
    MESSAGE("dt = " << dt << " residual " << r);
    if (prev > 0.0) CHECK(r < 0.7 * prev);
    prev = r;
  }
}

TEST_CASE("JSON report has one entry per monitor") {
  const ModelParams p = params(1.5, 1.0, 0.5);
  const Trajectory t = simulate(oracle::random_positive(3, 2).sample(g32), p, 1e-2, 0.2, 5);
  const auto res = check_bounds(t, p);
  const auto j = nlohmann::json::parse(monitors_to_json(res));
  REQUIRE(j.is_array());
  CHECK(j.size() == all_monitor_names().size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    CHECK(j[i]["monitor"] == all_monitor_names()[i]);
    CHECK(j[i].contains("hypothesis_met"));
    CHECK(j[i].contains("lhs"));
    CHECK(j[i].contains("rhs_or_ratio"));
    CHECK(j[i].contains("status"));
  }
}
