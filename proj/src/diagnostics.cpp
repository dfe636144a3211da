#include "fracscalar/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "fracscalar/drift.hpp"
#include "fracscalar/errors.hpp"
#include "fracscalar/fractional_ops.hpp"
#include "fracscalar/spectral.hpp"

namespace fracscalar {

namespace {

constexpr double kPi = std::numbers::pi;

RealField floored_power(const RealField& u, double s) {
  RealField w = u;
  for (double& x : w.values()) x = std::pow(std::max(x, kLogFloor), s);
  return w;
}

// Smallest |d| on the circle of n points, in grid units.
int circle_distance(int d, int n) {
  d = std::abs(d) % n;
  return std::min(d, n - d);
}

}  // namespace

double lp_norm(const RealField& u, double p) {
  if (std::isinf(p)) return u.max_abs();
  if (p < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1");
  const double h = u.grid().spacing();
  double sum = 0.0;
  if (p == 1.0) {
    for (double x : u.values()) sum += std::abs(x);
  } else if (p == 2.0) {
    for (double x : u.values()) sum += x * x;
  } else {
    for (double x : u.values()) sum += std::pow(std::abs(x), p);
  }
  return std::pow(sum * h * h, 1.0 / p);
}

double hs_seminorm(const RealField& u, double s) {
  const SpectralField F = forward_transform(u);
  const TorusGrid& g = u.grid();
  double sum = 0.0;
  for (int q1 = 0; q1 < g.n(); ++q1) {
    const int k1 = g.wavenumber(q1);
    for (int q2 = 0; q2 < g.n(); ++q2) {
      const int k2 = g.wavenumber(q2);
      const double m = std::abs(symbols::lambda_pow(k1, k2, s));
      sum += m * m * std::norm(F.at(q1, q2));
    }
  }
  return std::sqrt(sum / TorusGrid::area());
}

double wsp_seminorm(const RealField& u, double s, double p, Execution exec) {
  const int n = u.n();
  if (n > kMaxOracleGrid) throw GridTooLarge("wsp_seminorm: n > 64");
  if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("wsp_seminorm: s must lie in (0,1)");
  if (p < 1.0) throw std::invalid_argument("wsp_seminorm: p must be >= 1");
  const double h = u.grid().spacing();

  // Weight depends only on the offset between the two points.
  std::vector<double> weight(u.size(), 0.0);
  for (int d1 = 0; d1 < n; ++d1) {
    for (int d2 = 0; d2 < n; ++d2) {
      if (d1 == 0 && d2 == 0) continue;
      const double a = circle_distance(d1, n) * h;
      const double b = circle_distance(d2, n) * h;
      weight[static_cast<std::size_t>(d1) * n + d2] = std::pow(a * a + b * b, -(2.0 + s * p) / 2.0);
    }
  }

  const auto vals = u.values();
  auto row = [&](int i1, int j1) {
    const double ux = vals[static_cast<std::size_t>(i1) * n + j1];
    double acc = 0.0;
    for (int i2 = 0; i2 < n; ++i2) {
      const int d1 = (i2 - i1 + n) % n;
      for (int j2 = 0; j2 < n; ++j2) {
        const int d2 = (j2 - j1 + n) % n;
        const double diff = std::abs(ux - vals[static_cast<std::size_t>(i2) * n + j2]);
        const double w = weight[static_cast<std::size_t>(d1) * n + d2];
        acc += (p == 1.0 ? diff : p == 2.0 ? diff * diff : std::pow(diff, p)) * w;
      }
    }
    return acc;
  };

  double total = 0.0;
  if (exec == Execution::parallel) {
#pragma omp parallel for reduction(+ : total) schedule(static)
    for (int i1 = 0; i1 < n; ++i1)
      for (int j1 = 0; j1 < n; ++j1) total += row(i1, j1);
  } else {
    for (int i1 = 0; i1 < n; ++i1)
      for (int j1 = 0; j1 < n; ++j1) total += row(i1, j1);
  }
  const double h4 = h * h * h * h;
  return std::pow(total * h4, 1.0 / p);
}

double entropy(const RealField& u) {
  const double h = u.grid().spacing();
  double sum = 0.0;
  for (double x : u.values()) {
    const double v = std::max(x, kLogFloor);
    sum += x * std::log(v) - x + 1.0;
  }
  return sum * h * h;
}

double dissipation_pairing(const RealField& u, double alpha, double s) {
  RealField prod = lambda_pow(u, alpha);
  prod *= floored_power(u, s);
  return integrate(prod);
}

double log_pairing(const RealField& u, double alpha) {
  RealField lu = lambda_pow(u, alpha);
  RealField logu = u;
  for (double& x : logu.values()) x = std::log(std::max(x, kLogFloor));
  lu *= logu;
  return integrate(lu);
}

double stroock_varopoulos_lower(const RealField& u, double alpha, double s) {
  const double semi = hs_seminorm(floored_power(u, (s + 1.0) / 2.0), alpha / 2.0);
  return 4.0 * s / ((1.0 + s) * (1.0 + s)) * semi * semi;
}

double entropy_seminorm_ratio(const RealField& u, double alpha, double delta) {
  const double w = wsp_seminorm(u, alpha / 2.0 - delta, 1.0);
  const double denom = lp_norm(u, 1.0) * log_pairing(u, alpha);
  return denom > 0.0 ? w * w / denom : kInfinity;
}

std::vector<double> cumulative_phi(const RealField& u) {
  const int n = u.n();
  const double h = u.grid().spacing();
  const int m = n + 1;
  std::vector<double> phi(static_cast<std::size_t>(m) * m, 0.0);
  for (int a = 1; a <= n; ++a) {
    for (int b = 1; b <= n; ++b) {
      phi[static_cast<std::size_t>(a) * m + b] = phi[static_cast<std::size_t>(a - 1) * m + b] +
                                                 phi[static_cast<std::size_t>(a) * m + b - 1] -
                                                 phi[static_cast<std::size_t>(a - 1) * m + b - 1] +
                                                 u(a - 1, b - 1) * h * h;
    }
  }
  return phi;
}

MaxPrincipleReport max_principle_probe(const RealField& u, double alpha, double p0,
                                       const MaxPrincipleOptions& options) {
  if (!(p0 > 1.0 && p0 < 2.0)) throw std::invalid_argument("max_principle_probe: p0 must lie in (1,2)");
  const int n = u.n();
  const double h = u.grid().spacing();
  MaxPrincipleReport rep;

  const auto vals = u.values();
  const auto it = std::max_element(vals.begin(), vals.end());
  const auto flat = static_cast<int>(it - vals.begin());
  rep.argmax_i = flat / n;
  rep.argmax_j = flat % n;
  rep.x1 = u.grid().coord(rep.argmax_i);
  rep.x2 = u.grid().coord(rep.argmax_j);
  rep.ubar = *it;
  rep.lam_at_max = lambda_pow(u, alpha)(rep.argmax_i, rep.argmax_j);
  rep.weak_max_ok = rep.lam_at_max >= -1e-8 * hs_seminorm(u, alpha);

  rep.delta = 2.0 * (p0 - 1.0) / p0;
  rep.holder_bound = std::pow(2.0, (1.0 - p0) / p0) * lp_norm(u, p0);

  const std::vector<double> phi = cumulative_phi(u);
  const int m = n + 1;
  // |offset|^{-delta} for corner offsets (d1, d2), d in [0, n].
  std::vector<double> inv_pow(static_cast<std::size_t>(m) * m, 0.0);
  for (int d1 = 0; d1 < m; ++d1)
    for (int d2 = 0; d2 < m; ++d2)
      if (d1 != 0 && d2 != 0)
        inv_pow[static_cast<std::size_t>(d1) * m + d2] =
            std::pow(h * std::hypot(d1, d2), -rep.delta);

  auto P = [&](int a, int b) { return phi[static_cast<std::size_t>(a) * m + b]; };
  auto quotient = [&](int a1, int a2, int b1, int b2) {
    const int d1 = std::abs(b1 - a1);
    const int d2 = std::abs(b2 - a2);
    if (d1 == 0 || d2 == 0) return 0.0;
    const double rect = P(b1, b2) - P(a1, b2) - P(b1, a2) + P(a1, a2);
    return std::abs(rect) * inv_pow[static_cast<std::size_t>(d1) * m + d2];
  };

  double best = 0.0;
  if (n <= options.all_pairs_max_n) {
    const int corners = m * m;
    auto scan = [&](int c) {
      const int a1 = c / m, a2 = c % m;
      double local = 0.0;
      for (int c2 = c + 1; c2 < corners; ++c2)
        local = std::max(local, quotient(a1, a2, c2 / m, c2 % m));
      return local;
    };
    if (options.exec == Execution::parallel) {
#pragma omp parallel for reduction(max : best) schedule(dynamic, 8)
      for (int c = 0; c < corners; ++c) best = std::max(best, scan(c));
    } else {
      for (int c = 0; c < corners; ++c) best = std::max(best, scan(c));
    }
  } else {
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<int> pick(0, n);
    for (long k = 0; k < options.random_pairs; ++k) {
      const int a1 = pick(rng), a2 = pick(rng), b1 = pick(rng), b2 = pick(rng);
      best = std::max(best, quotient(a1, a2, b1, b2));
    }
  }
  rep.phi_holder = best;
  rep.holder_ok = rep.phi_holder <= rep.holder_bound * (1.0 + 1e-12);
  rep.chain_ok = rep.weak_max_ok && rep.holder_ok;
  return rep;
}

double largest_admissible_s(double chi, double r, double s_max) {
  if (r <= 0.0) return 0.0;
  if (r >= chi) return s_max;
  return std::min(s_max, r / (chi - r));
}

double mass_cap(double u0_l1) { return std::max(u0_l1, TorusGrid::area()); }

DiagnosticsConfig DiagnosticsConfig::for_model(const ModelParams& p,
                                               std::vector<std::string> monitors, double s_max,
                                               double p_strong) {
  DiagnosticsConfig cfg;
  cfg.alpha = p.alpha;
  cfg.monitors = std::move(monitors);
  cfg.s_max = s_max;
  cfg.p_strong = p_strong;
  const double s = largest_admissible_s(p.chi, p.logistic_rate(), s_max);
  auto add_p = [&](double q) {
    if (std::find(cfg.lp.begin(), cfg.lp.end(), q) == cfg.lp.end()) cfg.lp.push_back(q);
  };
  if (s > 0.0) {
    add_p(s + 1.0);
    add_p(s + 2.0);
    if (std::find(cfg.dissipation_s.begin(), cfg.dissipation_s.end(), s) == cfg.dissipation_s.end())
      cfg.dissipation_s.push_back(s);
    const double s5 = std::min(s, 1.0);
    add_p(s5 + 1.0);
  }
  add_p(p_strong);
  std::sort(cfg.lp.begin(), cfg.lp.end());
  return cfg;
}

double DiagnosticsRecord::lp(double p) const {
  for (const auto& [q, v] : lp_norms)
    if (q == p) return v;
  throw std::out_of_range("no L^p norm recorded for p = " + std::to_string(p));
}

double DiagnosticsRecord::extra(const std::string& name) const {
  for (const auto& [k, v] : extras)
    if (k == name) return v;
  throw std::out_of_range("no column " + name);
}

bool DiagnosticsRecord::has_extra(const std::string& name) const {
  return std::any_of(extras.begin(), extras.end(), [&](const auto& e) { return e.first == name; });
}

namespace {

bool wants(const DiagnosticsConfig& cfg, const std::string& name) {
  return std::find(cfg.monitors.begin(), cfg.monitors.end(), name) != cfg.monitors.end();
}

bool holder_consistent(const std::vector<std::pair<double, double>>& norms) {
  std::vector<std::pair<double, double>> sorted = norms;
  std::sort(sorted.begin(), sorted.end());
  double prev = -kInfinity;
  for (const auto& [p, v] : sorted) {
    const double normalized = std::isinf(p) ? v : v / std::pow(TorusGrid::area(), 1.0 / p);
    if (normalized < prev * (1.0 - 1e-12) - 1e-300) return false;
    prev = normalized;
  }
  return true;
}

}  // namespace

DiagnosticsRecord compute_record(const RealField& u, double t, double linf_time_integral,
                                 const ModelParams& p, const DiagnosticsConfig& cfg) {
  DiagnosticsRecord rec;
  rec.t = t;
  for (double q : cfg.lp) rec.lp_norms.emplace_back(q, lp_norm(u, q));
  for (double s : cfg.hs) rec.hs_seminorms.emplace_back(s, hs_seminorm(u, s));
  rec.entropy_F = entropy(u);

  const SpectralField F = forward_transform(u);
  const RealField lam = lambda_pow(u, cfg.alpha);
  for (double s : cfg.dissipation_s) {
    RealField prod = lam;
    prod *= floored_power(u, s);
    rec.dissipation.emplace_back(s, integrate(prod));
  }
  {
    RealField prod = lam;
    for (std::size_t k = 0; k < prod.size(); ++k) prod[k] *= std::log(std::max(u[k], kLogFloor));
    rec.log_pairing = integrate(prod);
  }

  const auto vals = u.values();
  const auto [mn, mx] = std::minmax_element(vals.begin(), vals.end());
  rec.min_u = *mn;
  rec.max_u = *mx;
  const auto flat = static_cast<int>(mx - vals.begin());
  rec.argmax_i = flat / u.n();
  rec.argmax_j = flat % u.n();
  rec.lam_at_max = lam(rec.argmax_i, rec.argmax_j);
  rec.spectral_tail = spectral_tail_fraction(F);
  rec.linf_time_integral = linf_time_integral;
  rec.mass = integrate(u);
  rec.holder_consistent = holder_consistent(rec.lp_norms);

  const double s = largest_admissible_s(p.chi, p.logistic_rate(), cfg.s_max);
  const bool small_grid = u.n() <= kMaxOracleGrid;
  if (wants(cfg, "divB") && p.drift.is_keller_segel()) {
    const RealField div = div_drift(u, p.drift);
    double excess = -kInfinity;
    for (std::size_t k = 0; k < u.size(); ++k) excess = std::max(excess, div[k] - u[k]);
    rec.extras.emplace_back("divB_excess", excess);
    if (p.drift.kind == DriftKind::ks_screened) {
      const RealField v = inv_one_plus_lambda_beta(u, p.drift.beta);
      rec.extras.emplace_back("screened_min_v", v.min());
    }
  }
  if (wants(cfg, "sv") && s > 0.0) {
    rec.extras.emplace_back("sv_lower", stroock_varopoulos_lower(u, cfg.alpha, s));
    rec.extras.emplace_back("sv_pairing", dissipation_pairing(u, cfg.alpha, s));
  }
  if (wants(cfg, "aee3e") && s > 0.0) {
    const double semi = hs_seminorm(floored_power(u, (s + 1.0) / 2.0), cfg.alpha / 2.0);
    rec.extras.emplace_back("aee3e_seminorm_sq", semi * semi);
  }
  if (wants(cfg, "aee5") && s > 0.0 && small_grid) {
    const double s5 = std::min(s, 1.0);
    const double order = cfg.alpha / (2.0 + 2.0 * s5) / 2.0;
    rec.extras.emplace_back("aee5_wsp", wsp_seminorm(u, order, 1.0 + s5));
  }
  if (wants(cfg, "aee6") && small_grid) {
    rec.extras.emplace_back("aee6_wsp", wsp_seminorm(u, cfg.alpha / 4.0, 1.0));
  }
  return rec;
}

std::string lp_column(double p) {
  if (std::isinf(p)) return "lp_inf";
  std::ostringstream os;
  os << "lp_" << std::setprecision(7) << p;
  return os.str();
}

void write_records_csv(std::ostream& os, const std::vector<DiagnosticsRecord>& records) {
  if (records.empty()) {
    os << "t\n";
    return;
  }
  const DiagnosticsRecord& first = records.front();
  os << "t";
  for (const auto& [p, v] : first.lp_norms) os << ',' << lp_column(p);
  for (const auto& [s, v] : first.hs_seminorms) os << ",hs_" << s;
  os << ",entropy_F";
  for (const auto& [s, v] : first.dissipation) os << ",dissipation_" << s;
  os << ",log_pairing,min_u,max_u,argmax_i,argmax_j,spectral_tail,linf_time_integral,mass,"
        "lam_at_max,holder_consistent";
  for (const auto& [k, v] : first.extras) os << ',' << k;
  os << '\n';
  os << std::setprecision(17);
  for (const DiagnosticsRecord& r : records) {
    os << r.t;
    for (const auto& [p, v] : r.lp_norms) os << ',' << v;
    for (const auto& [s, v] : r.hs_seminorms) os << ',' << v;
    os << ',' << r.entropy_F;
    for (const auto& [s, v] : r.dissipation) os << ',' << v;
    os << ',' << r.log_pairing << ',' << r.min_u << ',' << r.max_u << ',' << r.argmax_i << ','
       << r.argmax_j << ',' << r.spectral_tail << ',' << r.linf_time_integral << ',' << r.mass
       << ',' << r.lam_at_max << ',' << (r.holder_consistent ? 1 : 0);
    for (const auto& [k, v] : r.extras) os << ',' << v;
    os << '\n';
  }
}

}  // namespace fracscalar
