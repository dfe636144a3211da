#include "fracscalar/monitors.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <stdexcept>

#include "fracscalar/drift.hpp"
#include "fracscalar/fractional_ops.hpp"
#include "fracscalar/spectral.hpp"

namespace fracscalar {

namespace {

template <class F>
double trapezoid(const std::vector<DiagnosticsRecord>& recs, F&& value) {
  double sum = 0.0;
  for (std::size_t i = 1; i < recs.size(); ++i)
    sum += 0.5 * (recs[i].t - recs[i - 1].t) * (value(recs[i]) + value(recs[i - 1]));
  return sum;
}

template <class F>
double sup(const std::vector<DiagnosticsRecord>& recs, F&& value) {
  double best = -kInfinity;
  for (const auto& r : recs) best = std::max(best, value(r));
  return best;
}

MonitorResult skipped(const std::string& name, std::string why) {
  MonitorResult m;
  m.monitor = name;
  m.note = std::move(why);
  return m;
}

MonitorResult verdict(const std::string& name, double lhs, double rhs, double rel_tol,
                      std::string note = {}) {
  MonitorResult m;
  m.monitor = name;
  m.hypothesis_met = true;
  m.lhs = lhs;
  m.rhs_or_ratio = rhs;
  const bool ok = lhs <= rhs + rel_tol * std::abs(rhs);
  m.status = ok ? MonitorStatus::green : MonitorStatus::violated;
  m.margin = ok ? 0.0 : lhs - rhs;
  m.note = std::move(note);
  return m;
}

MonitorResult ratio(const std::string& name, double lhs, double r, std::string note) {
  MonitorResult m;
  m.monitor = name;
  m.hypothesis_met = true;
  m.lhs = lhs;
  m.rhs_or_ratio = r;
  m.status = MonitorStatus::ratio;
  m.note = std::move(note);
  return m;
}

bool has_lp(const DiagnosticsRecord& r, double p) {
  return std::any_of(r.lp_norms.begin(), r.lp_norms.end(),
                     [&](const auto& e) { return e.first == p; });
}

}  // namespace

std::string status_name(MonitorStatus s) {
  switch (s) {
    case MonitorStatus::green: return "green";
    case MonitorStatus::violated: return "violated";
    case MonitorStatus::ratio: return "ratio";
    case MonitorStatus::skipped: return "skipped";
  }
  return "?";
}

OdeResidual ode_residual_monitor(const Trajectory& traj, const ModelParams& p) {
  OdeResidual out;
  const auto& recs = traj.records;
  const double r = p.logistic_rate();
  auto bracket = [&](const DiagnosticsRecord& rec) {
    const double u = rec.max_u;
    return p.chi * u * u + r * u * (1.0 - u) - rec.lam_at_max;
  };
  out.max_residual = -kInfinity;
  for (const auto& rec : recs) out.max_abs_bracket = std::max(out.max_abs_bracket, std::abs(bracket(rec)));
  for (std::size_t i = 1; i < recs.size(); ++i) {
    const double dt = recs[i].t - recs[i - 1].t;
    if (dt <= 0.0) continue;
    const double b = 0.5 * (bracket(recs[i]) + bracket(recs[i - 1]));
    const double res = (recs[i].max_u - recs[i - 1].max_u) / dt - b;
    out.t_mid.push_back(0.5 * (recs[i].t + recs[i - 1].t));
    out.bracket.push_back(b);
    out.residual.push_back(res);
    out.max_residual = std::max(out.max_residual, res);
  }
  return out;
}

std::vector<MonitorResult> check_bounds(const Trajectory& traj, const ModelParams& p,
                                        const MonitorOptions& options) {
  std::vector<MonitorResult> out;
  const auto& recs = traj.records;
  const bool enough = recs.size() >= 2;
  const double r = p.logistic_rate();
  const double chi = p.chi;
  const double s = largest_admissible_s(chi, r, options.s_max);
  const bool ks = p.drift.is_keller_segel();
  const bool nonneg = enough && recs.front().min_u >= -1e-10;

  for (const std::string& name : options.monitors) {
    if (!enough) {
      out.push_back(skipped(name, "fewer than two records"));
      continue;
    }
    const DiagnosticsRecord& r0 = recs.front();
    const double T = recs.back().t;
    const double N = mass_cap(r0.lp(1.0));

    if (name == "aee1") {
      if (!nonneg) {
        out.push_back(skipped(name, "initial data not non-negative"));
        continue;
      }
      out.push_back(verdict(name, sup(recs, [](const auto& x) { return x.lp(1.0); }), N, 1e-6));
    } else if (name == "aee2") {
      if (!nonneg || r <= 0.0) {
        out.push_back(skipped(name, "requires r > 0 and u0 >= 0"));
        continue;
      }
      const double lhs = trapezoid(recs, [](const auto& x) { return x.lp(2.0) * x.lp(2.0); });
      out.push_back(verdict(name, lhs, N * (1.0 / r + T), 1e-3));
    } else if (name == "aee3") {
      if (!nonneg || !ks || s <= 0.0 || !has_lp(r0, s + 1.0)) {
        out.push_back(skipped(name, "no admissible s (chi s/(s+1) <= r) or non-KS drift"));
        continue;
      }
      // Checked at every record: ||u(t)||_{s+1} e^{-rt} <= ||u0||_{s+1}.
      const double lhs = sup(recs, [&](const auto& x) { return x.lp(s + 1.0) * std::exp(-r * x.t); });
      out.push_back(verdict(name, lhs, r0.lp(s + 1.0), 1e-3,
                            "s = " + std::to_string(s) + "; lhs = max_t ||u||_{s+1} exp(-rt)"));
    } else if (name == "aee3e") {
      if (!nonneg || !ks || s <= 0.0 || !r0.has_extra("aee3e_seminorm_sq")) {
        out.push_back(skipped(name, "no admissible s or non-KS drift"));
        continue;
      }
      const double lhs = trapezoid(recs, [](const auto& x) { return x.extra("aee3e_seminorm_sq"); });
      const double u0s = std::pow(r0.lp(s + 1.0), s + 1.0);
      const double rhs = r * (1.0 + s) * (1.0 + s) / (4.0 * s) * std::exp(r * T) * u0s;
      out.push_back(verdict(name, lhs, rhs, 1e-3, "homogeneous H^{alpha/2} seminorm"));
    } else if (name == "aee4") {
      if (!nonneg || !ks || s <= 0.0 || !has_lp(r0, s + 2.0)) {
        out.push_back(skipped(name, "no admissible s or non-KS drift"));
        continue;
      }
      const double coef = r * (s + 1.0) - chi * s;
      const double lhs =
          coef * trapezoid(recs, [&](const auto& x) { return std::pow(x.lp(s + 2.0), s + 2.0); });
      const double rhs = (r * (s + 1.0) * std::exp(r * (s + 1.0) * T) + 1.0) *
                         std::pow(r0.lp(s + 1.0), s + 1.0);
      out.push_back(verdict(name, lhs, rhs, 1e-3));
    } else if (name == "aee5") {
      if (!nonneg || !ks || s <= 0.0 || !r0.has_extra("aee5_wsp")) {
        out.push_back(skipped(name, "needs admissible s, KS drift and n <= 64"));
        continue;
      }
      const double s5 = std::min(s, 1.0);
      const double lhs =
          trapezoid(recs, [&](const auto& x) { return std::pow(x.extra("aee5_wsp"), 2.0 + 2.0 * s5); });
      const double F1 = (r * T + s5 + 1.0) * std::exp(2.0 * r * T);
      const double rhs = F1 * std::pow(r0.lp(s5 + 1.0), 2.0 * s5 + 2.0);
      out.push_back(ratio(name, lhs, lhs / rhs,
                          "ratio lhs / (F1 ||u0||^{2s+2}); constant C(alpha,s,delta) not explicit"));
    } else if (name == "aee6") {
      if (!nonneg || !ks || r <= 0.0 || !r0.has_extra("aee6_wsp")) {
        out.push_back(skipped(name, "needs r > 0, KS drift and n <= 64"));
        continue;
      }
      const double lhs = trapezoid(recs, [](const auto& x) { return std::pow(x.extra("aee6_wsp"), 2.0); });
      const double F2 = r0.lp(2.0) * r0.lp(2.0) + N * (chi + r + T + 1.0);
      out.push_back(ratio(name, lhs, lhs / (N * F2),
                          "ratio lhs / (N F2); constant C(alpha,delta) not explicit"));
    } else if (name == "apstrong") {
      const bool hyp = chi <= 0.0 || p.alpha > 2.0 * (1.0 - r / chi);
      if (!nonneg || !ks || !hyp || !has_lp(r0, options.p_strong)) {
        out.push_back(skipped(name, "requires alpha > 2(1 - r/chi) and KS drift"));
        continue;
      }
      const double q = options.p_strong;
      const double lhs = sup(recs, [&](const auto& x) { return x.lp(q); });
      out.push_back(ratio(name, lhs, lhs / r0.lp(q),
                          "ratio sup_t ||u||_p / ||u0||_p; constants C1, C2 not explicit"));
    } else if (name == "divB") {
      if (!ks || !r0.has_extra("divB_excess")) {
        out.push_back(skipped(name, "KS drift only"));
        continue;
      }
      const double scale = std::max(1.0, sup(recs, [](const auto& x) { return x.max_u; }));
      const double lhs = sup(recs, [](const auto& x) { return x.extra("divB_excess"); });
      MonitorResult m = verdict(name, lhs, 1e-8 * scale, 0.0, "max_x (div B(u) - u)");
      if (r0.has_extra("screened_min_v")) {
        const double min_v = -sup(recs, [](const auto& x) { return -x.extra("screened_min_v"); });
        if (min_v < -1e-8 * (1.0 + scale)) {
          m.status = MonitorStatus::violated;
          m.note += "; min v = " + std::to_string(min_v);
        }
      }
      out.push_back(m);
    } else if (name == "sv") {
      if (s <= 0.0 || !r0.has_extra("sv_lower")) {
        out.push_back(skipped(name, "no admissible s"));
        continue;
      }
      double worst = -kInfinity;
      double scale = 1.0;
      for (const auto& x : recs) {
        worst = std::max(worst, x.extra("sv_lower") - x.extra("sv_pairing"));
        scale = std::max(scale, std::abs(x.extra("sv_pairing")));
      }
      out.push_back(verdict(name, worst, 1e-8 * scale, 0.0,
                            "max_t (4s/(1+s)^2 ||Lambda^{alpha/2} u^{(s+1)/2}||^2 - int Lambda^alpha u u^s)"));
    } else if (name == "ode32") {
      const bool hyp = ks && p.forcing != ForcingKind::riesz;
      if (!hyp || !nonneg) {
        out.push_back(skipped(name, "KS drift with logistic or no forcing only"));
        continue;
      }
      const OdeResidual res = ode_residual_monitor(traj, p);
      out.push_back(verdict(name, res.max_residual, 1e-2 * std::max(1.0, res.max_abs_bracket), 0.0,
                            "one-sided: d ubar/dt - bracket <= 0"));
    } else {
      throw std::invalid_argument("unknown monitor: " + name);
    }
  }
  return out;
}

double weak_residual(const Trajectory& traj, const ModelParams& p, const TestFunction& phi) {
  const auto& snaps = traj.snapshots;
  if (snaps.empty()) throw std::invalid_argument("weak_residual: trajectory has no snapshots");
  const TorusGrid grid = snaps.front().u.grid();
  const DriftOperator drift(grid, p.drift);
  const double r = p.logistic_rate();

  auto integrand = [&](const State& st) {
    const double t = st.t;
    const RealField& u = st.u;
    const RealField ph = RealField::from_function(grid, [&](double x1, double x2) {
      return phi.value(x1, x2, t);
    });
    const RealField ph_t = RealField::from_function(grid, [&](double x1, double x2) {
      return phi.dt(x1, x2, t);
    });
    const SpectralField ph_hat = forward_transform(ph);
    RealField linear = lambda_pow(ph, p.alpha);
    if (p.eps_viscosity > 0.0) {
      const RealField lap = inverse_transform(derivative(derivative(ph_hat, 0), 0)) +
                            inverse_transform(derivative(derivative(ph_hat, 1), 1));
      linear -= p.eps_viscosity * lap;
    }
    linear -= ph_t;
    RealField total = u * linear;

    if (p.chi != 0.0) {
      const VectorField B = drift.eval(u);
      const RealField g1 = inverse_transform(derivative(ph_hat, 0));
      const RealField g2 = inverse_transform(derivative(ph_hat, 1));
      total += p.chi * (u * (B.bx * g1 + B.by * g2));
    }
    RealField f(grid);
    if (p.forcing == ForcingKind::logistic) {
      f = u;
      for (double& x : f.values()) x = r * x * (1.0 - x);
    } else if (p.forcing == ForcingKind::riesz) {
      f = riesz(u, 1);
    }
    total -= f * ph;
    return integrate(total);
  };

  double sum = 0.0;
  double prev = integrand(snaps.front());
  for (std::size_t i = 1; i < snaps.size(); ++i) {
    const double cur = integrand(snaps[i]);
    sum += 0.5 * (snaps[i].t - snaps[i - 1].t) * (cur + prev);
    prev = cur;
  }
  const State& s0 = snaps.front();
  const RealField ph0 = RealField::from_function(grid, [&](double x1, double x2) {
    return phi.value(x1, x2, s0.t);
  });
  return sum - integrate(s0.u * ph0);
}

std::string monitors_to_json(const std::vector<MonitorResult>& results) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& m : results) {
    nlohmann::json j;
    j["monitor"] = m.monitor;
    j["hypothesis_met"] = m.hypothesis_met;
    j["lhs"] = std::isfinite(m.lhs) ? nlohmann::json(m.lhs) : nlohmann::json(nullptr);
    j["rhs_or_ratio"] =
        std::isfinite(m.rhs_or_ratio) ? nlohmann::json(m.rhs_or_ratio) : nlohmann::json(nullptr);
    j["status"] = status_name(m.status);
    if (m.status == MonitorStatus::violated) j["margin"] = m.margin;
    if (!m.note.empty()) j["note"] = m.note;
    arr.push_back(j);
  }
  return arr.dump(2);
}

}  // namespace fracscalar
