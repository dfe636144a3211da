#pragma once

#include <limits>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "fracscalar/grid.hpp"
#include "fracscalar/kernel_quadrature.hpp"
#include "fracscalar/model.hpp"

namespace fracscalar {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Floor applied inside logarithms and fractional powers of u.
inline constexpr double kLogFloor = 1e-12;

/// (integral |u|^p)^{1/p}; p = kInfinity gives max |u|.
double lp_norm(const RealField& u, double p);

/// ||Lambda^s u||_{L^2} via Parseval.
double hs_seminorm(const RealField& u, double s);

/// Gagliardo seminorm (sum_{x != y} |u(x)-u(y)|^p / d(x,y)^{2+sp} h^4)^{1/p}
/// with d the geodesic torus distance. O(n^4); throws GridTooLarge for n > 64.
double wsp_seminorm(const RealField& u, double s, double p,
                    Execution exec = Execution::parallel);

/// integral of u log u - u + 1 (u floored at 1e-12 inside the log).
double entropy(const RealField& u);

/// integral of Lambda^alpha u * u^s, u floored at 1e-12 for the power.
double dissipation_pairing(const RealField& u, double alpha, double s);

/// integral of Lambda^alpha u * log u.
double log_pairing(const RealField& u, double alpha);

/// (4s/(1+s)^2) ||Lambda^{alpha/2} (u^{(s+1)/2})||^2_{L^2}.
double stroock_varopoulos_lower(const RealField& u, double alpha, double s);

/// ||u||^2_{W^{alpha/2-delta,1}} / (||u||_{L^1} * log_pairing): ratio with a
/// non-explicit bounding constant, reported rather than checked.
double entropy_seminorm_ratio(const RealField& u, double alpha, double delta);

struct MaxPrincipleReport {
  int argmax_i = 0;
  int argmax_j = 0;
  double x1 = 0.0;
  double x2 = 0.0;
  double ubar = 0.0;
  /// Lambda^alpha u at the grid maximum.
  double lam_at_max = 0.0;
  /// Sup over sampled pairs of |rectangle integral of u| / |h|^delta, i.e. the
  /// C^delta quotient of the mixed increment of phi.
  double phi_holder = 0.0;
  /// c ||u||_{L^{p0}} with c = 2^{(1-p0)/p0}.
  double holder_bound = 0.0;
  double delta = 0.0;
  bool weak_max_ok = false;
  bool holder_ok = false;
  bool chain_ok = false;
};

struct MaxPrincipleOptions {
  /// All pairs up to this grid size, random pairs above.
  int all_pairs_max_n = 32;
  long random_pairs = 1000000;
  unsigned long long seed = 12345;
  Execution exec = Execution::parallel;
};

/// Weak maximum principle and the Holder-vs-L^{p0} chain at the maximum of u.
/// Requires 1 < p0 < 2.
MaxPrincipleReport max_principle_probe(const RealField& u, double alpha, double p0,
                                       const MaxPrincipleOptions& options = {});

/// phi(x) = integral over [-pi, x1] x [-pi, x2] of u, sampled at cell corners
/// (n+1)^2 row-major; the mixed increments of phi are exact rectangle sums.
std::vector<double> cumulative_phi(const RealField& u);

/// Monitor identifiers.
inline const std::vector<std::string>& all_monitor_names() {
  static const std::vector<std::string> names{"aee1", "aee2", "aee3",   "aee3e",
                                              "aee4", "aee5", "aee6",   "apstrong",
                                              "divB", "sv",   "ode32"};
  return names;
}

/// What a DiagnosticsRecord contains.
struct DiagnosticsConfig {
  double alpha = 1.5;
  std::vector<double> lp{1.0, 2.0, kInfinity};
  std::vector<double> hs{0.5, 1.0};
  std::vector<double> dissipation_s{1.0};
  /// Monitors whose extra columns must be recorded.
  std::vector<std::string> monitors;
  /// Exponent used where s is arbitrary ([k]_+ branch).
  double s_max = 3.0;
  /// p of the strong-estimate monitor.
  double p_strong = 2.0;

  /// Config carrying every column the given monitors need.
  static DiagnosticsConfig for_model(const ModelParams& p, std::vector<std::string> monitors,
                                     double s_max = 3.0, double p_strong = 2.0);
};

struct DiagnosticsRecord {
  double t = 0.0;
  std::vector<std::pair<double, double>> lp_norms;
  std::vector<std::pair<double, double>> hs_seminorms;
  double entropy_F = 0.0;
  std::vector<std::pair<double, double>> dissipation;
  double log_pairing = 0.0;
  double min_u = 0.0;
  double max_u = 0.0;
  int argmax_i = 0;
  int argmax_j = 0;
  double spectral_tail = 0.0;
  double linf_time_integral = 0.0;
  double mass = 0.0;
  double lam_at_max = 0.0;
  bool holder_consistent = true;
  /// Monitor-specific columns.
  std::vector<std::pair<std::string, double>> extras;

  /// Lookup of a recorded L^p norm (throws std::out_of_range if absent).
  double lp(double p) const;
  double extra(const std::string& name) const;
  bool has_extra(const std::string& name) const;
};

DiagnosticsRecord compute_record(const RealField& u, double t, double linf_time_integral,
                                 const ModelParams& p, const DiagnosticsConfig& cfg);

struct Trajectory {
  std::vector<DiagnosticsRecord> records;
  /// Field at each record time when snapshots were requested.
  std::vector<State> snapshots;
  State final_state;
  int steps = 0;
  bool unstable = false;
  /// Spectral tail fraction exceeded 0.01 at some record.
  bool resolution_limited = false;
  std::string stop_reason;
  /// Largest negative undershoot seen (min over steps of min u).
  double min_u_seen = 0.0;
};

/// Column name used for an L^p norm in CSV output, e.g. "lp_1", "lp_1.333333", "lp_inf".
std::string lp_column(double p);

void write_records_csv(std::ostream& os, const std::vector<DiagnosticsRecord>& records);

/// Largest admissible s with chi s/(s+1) <= r: r/(chi-r) when r < chi, s_max otherwise,
/// 0 when r <= 0.
double largest_admissible_s(double chi, double r, double s_max);

/// max{||u0||_{L^1}, 4 pi^2}.
double mass_cap(double u0_l1);

}  // namespace fracscalar
