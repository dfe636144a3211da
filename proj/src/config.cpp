#include "fracscalar/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "fracscalar/diagnostics.hpp"
#include "fracscalar/errors.hpp"
#include "fracscalar/spectral.hpp"

namespace fracscalar {

using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

std::string read_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError(path, "cannot open file");
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<document>", std::string("invalid JSON: ") + e.what());
  }
}

std::string join(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

void reject_unknown(const json& obj, const std::string& prefix, std::set<std::string> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key())) throw ConfigError(join(prefix, it.key()), "unknown field");
}

const json& require_object(const json& j, const std::string& field) {
  if (!j.is_object()) throw ConfigError(field, "must be an object");
  return j;
}

double number(const json& obj, const std::string& prefix, const std::string& key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(join(prefix, key), "must be a number");
  return v.get<double>();
}

double required_number(const json& obj, const std::string& prefix, const std::string& key) {
  if (!obj.contains(key)) throw ConfigError(join(prefix, key), "is required");
  return number(obj, prefix, key, 0.0);
}

int integer(const json& obj, const std::string& prefix, const std::string& key, int fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) throw ConfigError(join(prefix, key), "must be an integer");
  return v.get<int>();
}

bool boolean(const json& obj, const std::string& prefix, const std::string& key, bool fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_boolean()) throw ConfigError(join(prefix, key), "must be true or false");
  return v.get<bool>();
}

std::string text(const json& obj, const std::string& prefix, const std::string& key,
                 const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_string()) throw ConfigError(join(prefix, key), "must be a string");
  return v.get<std::string>();
}

std::vector<double> number_list(const json& obj, const std::string& prefix, const std::string& key) {
  std::vector<double> out;
  if (!obj.contains(key)) return out;
  const json& v = obj.at(key);
  if (!v.is_array()) throw ConfigError(join(prefix, key), "must be an array of numbers");
  for (const json& x : v) {
    if (!x.is_number()) throw ConfigError(join(prefix, key), "must be an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

DriftSpec parse_drift(const json& j, const std::string& field) {
  if (j.is_string()) {
    DriftSpec d;
    d.kind = DriftSpec::kind_from_name(j.get<std::string>());
    return d;
  }
  require_object(j, field);
  reject_unknown(j, field, {"drift", "beta", "family", "strength", "order", "screening"});
  if (!j.contains("drift")) throw ConfigError(join(field, "drift"), "is required");
  DriftSpec d;
  try {
    d.kind = DriftSpec::kind_from_name(text(j, field, "drift", ""));
  } catch (const ConfigError&) {
    throw ConfigError(join(field, "drift"), "unknown drift '" + text(j, field, "drift", "") + "'");
  }
  d.beta = number(j, field, "beta", d.beta);
  if (d.kind == DriftKind::aggregation) {
    const std::string fam = text(j, field, "family", "power");
    if (fam == "power") d.kernel.family = AggregationKernel::Family::power;
    else if (fam == "bessel") d.kernel.family = AggregationKernel::Family::bessel;
    else throw ConfigError(join(field, "family"), "must be power or bessel");
    d.kernel.strength = number(j, field, "strength", d.kernel.strength);
    d.kernel.order = number(j, field, "order", d.kernel.order);
    d.kernel.screening = number(j, field, "screening", d.kernel.screening);
  }
  return d;
}

json drift_to_json(const DriftSpec& d) {
  json j;
  j["drift"] = d.name();
  if (d.kind == DriftKind::ks_screened) j["beta"] = d.beta;
  if (d.kind == DriftKind::aggregation) {
    j["family"] = d.kernel.family == AggregationKernel::Family::bessel ? "bessel" : "power";
    j["strength"] = d.kernel.strength;
    j["order"] = d.kernel.order;
    j["screening"] = d.kernel.screening;
  }
  return j;
}

ModelParams parse_model(const json& j) {
  const std::string f = "model";
  require_object(j, f);
  reject_unknown(j, f, {"alpha", "beta", "chi", "r", "eps_viscosity", "drift", "forcing"});
  ModelParams p;
  p.alpha = required_number(j, f, "alpha");
  p.chi = number(j, f, "chi", p.chi);
  p.r = number(j, f, "r", p.r);
  p.eps_viscosity = number(j, f, "eps_viscosity", p.eps_viscosity);
  if (j.contains("drift")) p.drift = parse_drift(j.at("drift"), join(f, "drift"));
  p.beta = number(j, f, "beta", p.drift.beta);
  if (j.contains("beta")) p.drift.beta = p.beta;
  p.forcing = forcing_from_name(text(j, f, "forcing", "logistic"));
  return p;
}

StepperConfig parse_stepper(const json& j) {
  const std::string f = "stepper";
  require_object(j, f);
  reject_unknown(j, f, {"dt", "adaptive", "dt_max", "scheme", "cfl_safety", "dealias", "clamp_negative"});
  StepperConfig s;
  s.dt = number(j, f, "dt", s.dt);
  s.adaptive = boolean(j, f, "adaptive", s.adaptive);
  s.dt_max = number(j, f, "dt_max", s.dt_max);
  s.scheme = scheme_from_name(text(j, f, "scheme", scheme_name(s.scheme)));
  s.cfl_safety = number(j, f, "cfl_safety", s.cfl_safety);
  s.dealias = boolean(j, f, "dealias", s.dealias);
  s.clamp_negative = boolean(j, f, "clamp_negative", s.clamp_negative);
  return s;
}

InitialDataSpec parse_initial(const json& j) {
  const std::string f = "initial_data";
  require_object(j, f);
  InitialDataSpec s;
  const std::string kind = text(j, f, "kind", "");
  if (kind == "constant") {
    reject_unknown(j, f, {"kind", "value", "mass"});
    s.kind = InitialDataSpec::Kind::constant;
    s.value = number(j, f, "value", 1.0);
    if (j.contains("mass")) set_initial_mass(s, required_number(j, f, "mass"));
  } else if (kind == "cosine_bump") {
    reject_unknown(j, f, {"kind", "mean", "terms"});
    s.kind = InitialDataSpec::Kind::cosine_bump;
    s.value = number(j, f, "mean", 1.0);
    if (j.contains("terms")) {
      const json& terms = j.at("terms");
      if (!terms.is_array()) throw ConfigError(join(f, "terms"), "must be an array");
      for (std::size_t i = 0; i < terms.size(); ++i) {
        const std::string tf = join(f, "terms[" + std::to_string(i) + "]");
        require_object(terms[i], tf);
        reject_unknown(terms[i], tf, {"amp", "k1", "k2"});
        s.terms.push_back({required_number(terms[i], tf, "amp"), integer(terms[i], tf, "k1", 1),
                           integer(terms[i], tf, "k2", 0)});
      }
    }
  } else if (kind == "periodized_gaussian") {
    reject_unknown(j, f, {"kind", "mass", "sigma", "center"});
    s.kind = InitialDataSpec::Kind::periodized_gaussian;
    s.mass = required_number(j, f, "mass");
    s.sigma = number(j, f, "sigma", s.sigma);
    if (j.contains("center")) {
      const auto c = number_list(j, f, "center");
      if (c.size() != 2) throw ConfigError(join(f, "center"), "must be [x1, x2]");
      s.center1 = c[0];
      s.center2 = c[1];
    }
  } else if (kind == "random_smooth") {
    reject_unknown(j, f, {"kind", "seed", "decay", "max_mode", "shift", "mass"});
    s.kind = InitialDataSpec::Kind::random_smooth;
    if (!j.contains("seed")) throw ConfigError(join(f, "seed"), "is required for random data");
    if (!j.at("seed").is_number_unsigned())
      throw ConfigError(join(f, "seed"), "must be a non-negative integer");
    s.seed = j.at("seed").get<std::uint64_t>();
    s.decay = number(j, f, "decay", s.decay);
    s.max_mode = integer(j, f, "max_mode", s.max_mode);
    s.shift = number(j, f, "shift", s.shift);
    if (j.contains("mass")) s.mass = required_number(j, f, "mass");
  } else {
    throw ConfigError(join(f, "kind"),
                      "must be constant, cosine_bump, periodized_gaussian or random_smooth");
  }
  s.validate();
  return s;
}

json initial_to_json(const InitialDataSpec& s) {
  json j;
  j["kind"] = s.kind_name();
  switch (s.kind) {
    case InitialDataSpec::Kind::constant:
      j["value"] = s.value;
      break;
    case InitialDataSpec::Kind::cosine_bump: {
      j["mean"] = s.value;
      json terms = json::array();
      for (const auto& t : s.terms) terms.push_back({{"amp", t.amp}, {"k1", t.k1}, {"k2", t.k2}});
      j["terms"] = terms;
      break;
    }
    case InitialDataSpec::Kind::periodized_gaussian:
      j["mass"] = *s.mass;
      j["sigma"] = s.sigma;
      j["center"] = {s.center1, s.center2};
      break;
    case InitialDataSpec::Kind::random_smooth:
      j["seed"] = *s.seed;
      j["decay"] = s.decay;
      j["max_mode"] = s.max_mode;
      j["shift"] = s.shift;
      if (s.mass) j["mass"] = *s.mass;
      break;
  }
  return j;
}

RunConfig parse_run_config_json(const json& j) {
  require_object(j, "<document>");
  reject_unknown(j, "", {"schema_version", "n", "model", "stepper", "T", "initial_data",
                         "mollify_eps", "diag_every", "output_dir", "monitors", "s_max", "p_strong"});
  if (!j.contains("schema_version")) throw ConfigError("schema_version", "is required");
  if (integer(j, "", "schema_version", 0) != kSchemaVersion)
    throw ConfigError("schema_version", "unsupported (expected " + std::to_string(kSchemaVersion) + ")");
  RunConfig c;
  c.n = integer(j, "", "n", c.n);
  if (!j.contains("model")) throw ConfigError("model", "is required");
  c.model = parse_model(j.at("model"));
  if (j.contains("stepper")) c.stepper = parse_stepper(j.at("stepper"));
  c.T = required_number(j, "", "T");
  if (!j.contains("initial_data")) throw ConfigError("initial_data", "is required");
  c.initial_data = parse_initial(j.at("initial_data"));
  if (j.contains("mollify_eps")) {
    const json& m = j.at("mollify_eps");
    if (m.is_string() && m.get<std::string>() == "auto") c.mollify_eps = -1.0;
    else if (m.is_number()) c.mollify_eps = m.get<double>();
    else throw ConfigError("mollify_eps", "must be a number or \"auto\"");
    if (m.is_number() && c.mollify_eps < 0.0) throw ConfigError("mollify_eps", "must be >= 0");
  }
  c.diag_every = integer(j, "", "diag_every", c.diag_every);
  c.output_dir = text(j, "", "output_dir", c.output_dir);
  if (j.contains("monitors")) {
    const json& m = j.at("monitors");
    if (!m.is_array()) throw ConfigError("monitors", "must be an array of names");
    c.monitors.clear();
    for (const json& x : m) {
      if (!x.is_string()) throw ConfigError("monitors", "must be an array of names");
      c.monitors.push_back(x.get<std::string>());
    }
  }
  c.s_max = number(j, "", "s_max", c.s_max);
  c.p_strong = number(j, "", "p_strong", c.p_strong);
  c.validate();
  return c;
}

// Bit-reproducible uniform in [-1, 1) independent of the standard library's distributions.
double uniform_pm1(std::mt19937_64& rng) {
  return 2.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53 - 1.0;
}

}  // namespace

std::string InitialDataSpec::kind_name() const {
  switch (kind) {
    case Kind::constant: return "constant";
    case Kind::cosine_bump: return "cosine_bump";
    case Kind::periodized_gaussian: return "periodized_gaussian";
    case Kind::random_smooth: return "random_smooth";
  }
  return "?";
}

void InitialDataSpec::validate() const {
  const std::string f = "initial_data";
  switch (kind) {
    case Kind::constant:
      if (!(value >= 0.0)) throw ConfigError(f + ".value", "must be >= 0");
      break;
    case Kind::cosine_bump: {
      double total = 0.0;
      for (const auto& t : terms) total += std::abs(t.amp);
      if (value < total) throw ConfigError(f + ".mean", "must be >= sum |amp| so that u0 >= 0");
      break;
    }
    case Kind::periodized_gaussian:
      if (!mass || !(*mass > 0.0)) throw ConfigError(f + ".mass", "must be > 0");
      if (!(sigma > 0.0)) throw ConfigError(f + ".sigma", "must be > 0");
      break;
    case Kind::random_smooth:
      if (!seed) throw ConfigError(f + ".seed", "is required for random data");
      if (!(decay >= 0.0)) throw ConfigError(f + ".decay", "must be >= 0");
      if (max_mode < 1) throw ConfigError(f + ".max_mode", "must be >= 1");
      if (!(shift >= 0.0)) throw ConfigError(f + ".shift", "must be >= 0");
      if (mass && !(*mass > 0.0)) throw ConfigError(f + ".mass", "must be > 0");
      break;
  }
}

void set_initial_mass(InitialDataSpec& spec, double mass) {
  if (spec.kind == InitialDataSpec::Kind::constant) {
    spec.value = mass / TorusGrid::area();
  } else if (spec.kind == InitialDataSpec::Kind::cosine_bump) {
    const double scale = mass / (spec.value * TorusGrid::area());
    spec.value *= scale;
    for (auto& t : spec.terms) t.amp *= scale;
  } else {
    spec.mass = mass;
  }
}

RealField make_initial_data(const InitialDataSpec& spec, const TorusGrid& grid) {
  spec.validate();
  switch (spec.kind) {
    case InitialDataSpec::Kind::constant:
      return RealField(grid, spec.value);
    case InitialDataSpec::Kind::cosine_bump:
      return RealField::from_function(grid, [&](double x1, double x2) {
        double v = spec.value;
        for (const auto& t : spec.terms) v += t.amp * std::cos(t.k1 * x1) * std::cos(t.k2 * x2);
        return std::max(v, 0.0);
      });
    case InitialDataSpec::Kind::periodized_gaussian: {
      const double s2 = 2.0 * spec.sigma * spec.sigma;
      const int images = 2 + static_cast<int>(std::ceil(6.0 * spec.sigma / (2.0 * kPi)));
      RealField u = RealField::from_function(grid, [&](double x1, double x2) {
        double a = 0.0, b = 0.0;
        for (int m = -images; m <= images; ++m) {
          const double d1 = x1 - spec.center1 + 2.0 * kPi * m;
          const double d2 = x2 - spec.center2 + 2.0 * kPi * m;
          a += std::exp(-d1 * d1 / s2);
          b += std::exp(-d2 * d2 / s2);
        }
        return a * b;
      });
      u *= *spec.mass / integrate(u);
      return u;
    }
    case InitialDataSpec::Kind::random_smooth: {
      std::mt19937_64 rng(*spec.seed);
      struct Mode {
        int k1, k2;
        double a, b;
      };
      std::vector<Mode> modes;
      const int K = std::min(spec.max_mode, grid.n() / 3 - 1);
      for (int k1 = 0; k1 <= K; ++k1) {
        for (int k2 = -K; k2 <= K; ++k2) {
          if (k1 == 0 && k2 <= 0) continue;
          const double amp = std::exp(-spec.decay * std::hypot(k1, k2));
          const double a = amp * uniform_pm1(rng);
          const double b = amp * uniform_pm1(rng);
          modes.push_back({k1, k2, a, b});
        }
      }
      RealField u = RealField::from_function(grid, [&](double x1, double x2) {
        double v = 0.0;
        for (const Mode& m : modes) {
          const double ph = m.k1 * x1 + m.k2 * x2;
          v += m.a * std::cos(ph) + m.b * std::sin(ph);
        }
        return v;
      });
      u += spec.shift - u.min();
      if (spec.mass) u *= *spec.mass / integrate(u);
      return u;
    }
  }
  throw std::logic_error("make_initial_data: unknown kind");
}

void RunConfig::validate() const {
  if (n < 8 || n % 2 != 0) throw ConfigError("n", "must be an even integer >= 8");
  model.validate();
  stepper.validate();
  if (!(T > 0.0) || !std::isfinite(T)) throw ConfigError("T", "must be > 0");
  initial_data.validate();
  if (diag_every < 1) throw ConfigError("diag_every", "must be >= 1");
  const auto& known = all_monitor_names();
  for (const auto& m : monitors)
    if (std::find(known.begin(), known.end(), m) == known.end())
      throw ConfigError("monitors", "unknown monitor '" + m + "'");
  if (!(s_max > 0.0)) throw ConfigError("s_max", "must be > 0");
  if (!(p_strong >= 1.0)) throw ConfigError("p_strong", "must be >= 1");
}

double RunConfig::effective_mollify_eps() const {
  if (mollify_eps >= 0.0) return mollify_eps;
  const double h = 2.0 * kPi / n;
  return h * h;
}

RunOptions RunConfig::run_options() const {
  RunOptions o;
  o.diag_every = diag_every;
  o.mollify_eps = effective_mollify_eps();
  o.diagnostics = DiagnosticsConfig::for_model(model, monitors, s_max, p_strong);
  return o;
}

RunConfig parse_run_config(const std::string& json_text) {
  return parse_run_config_json(parse_text(json_text));
}

RunConfig load_run_config(const std::string& path) { return parse_run_config(read_file(path)); }

std::string run_config_to_json(const RunConfig& c) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["n"] = c.n;
  json m;
  m["alpha"] = c.model.alpha;
  m["chi"] = c.model.chi;
  m["r"] = c.model.r;
  m["eps_viscosity"] = c.model.eps_viscosity;
  m["drift"] = drift_to_json(c.model.drift);
  m["forcing"] = forcing_name(c.model.forcing);
  j["model"] = m;
  j["stepper"] = {{"dt", c.stepper.dt},
                  {"adaptive", c.stepper.adaptive},
                  {"dt_max", c.stepper.dt_max},
                  {"scheme", scheme_name(c.stepper.scheme)},
                  {"cfl_safety", c.stepper.cfl_safety},
                  {"dealias", c.stepper.dealias},
                  {"clamp_negative", c.stepper.clamp_negative}};
  j["T"] = c.T;
  j["initial_data"] = initial_to_json(c.initial_data);
  if (c.mollify_eps < 0.0) j["mollify_eps"] = "auto";
  else j["mollify_eps"] = c.mollify_eps;
  j["diag_every"] = c.diag_every;
  j["output_dir"] = c.output_dir;
  j["monitors"] = c.monitors;
  j["s_max"] = c.s_max;
  j["p_strong"] = c.p_strong;
  return j.dump(2);
}

double alpha_smooth(double chi, double r) {
  if (chi <= 0.0) return 0.0;
  return std::max(2.0 - 2.0 * r / chi, 0.0);
}

std::optional<double> alpha_weak(double chi, double r) {
  if (!(2.0 * r < chi)) return std::nullopt;
  return 4.0 * (chi * (chi - 2.0 * r) / (chi - r) - r) / (2.0 * chi - r);
}

std::vector<RunConfig> SweepSpec::points() const {
  auto axis = [](const std::vector<double>& v) {
    return v.empty() ? std::vector<std::optional<double>>{std::nullopt}
                     : std::vector<std::optional<double>>(v.begin(), v.end());
  };
  std::vector<RunConfig> out;
  for (const auto& a : axis(alpha))
    for (const auto& c : axis(chi))
      for (const auto& rr : axis(r))
        for (const auto& m : axis(mass)) {
          RunConfig cfg = base;
          if (a) cfg.model.alpha = *a;
          if (c) cfg.model.chi = *c;
          if (rr) cfg.model.r = *rr;
          if (m) set_initial_mass(cfg.initial_data, *m);
          out.push_back(cfg);
        }
  return out;
}

SweepSpec parse_sweep_spec(const std::string& json_text) {
  const json j = parse_text(json_text);
  require_object(j, "<document>");
  reject_unknown(j, "", {"schema_version", "base", "axes", "output_dir"});
  if (integer(j, "", "schema_version", 0) != kSchemaVersion)
    throw ConfigError("schema_version", "unsupported (expected " + std::to_string(kSchemaVersion) + ")");
  if (!j.contains("base")) throw ConfigError("base", "is required");
  json base = j.at("base");
  require_object(base, "base");
  if (!base.contains("schema_version")) base["schema_version"] = kSchemaVersion;
  SweepSpec s;
  try {
    s.base = parse_run_config_json(base);
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    throw ConfigError("base." + e.field(), what.substr(e.field().size() + 2));
  }
  if (j.contains("axes")) {
    const json& ax = j.at("axes");
    require_object(ax, "axes");
    reject_unknown(ax, "axes", {"alpha", "chi", "r", "mass"});
    s.alpha = number_list(ax, "axes", "alpha");
    s.chi = number_list(ax, "axes", "chi");
    s.r = number_list(ax, "axes", "r");
    s.mass = number_list(ax, "axes", "mass");
  }
  s.output_dir = text(j, "", "output_dir", s.output_dir);
  for (const RunConfig& p : s.points()) p.validate();
  return s;
}

SweepSpec load_sweep_spec(const std::string& path) { return parse_sweep_spec(read_file(path)); }

}  // namespace fracscalar
