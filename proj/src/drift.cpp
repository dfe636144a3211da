#include "fracscalar/drift.hpp"

#include <cmath>
#include <stdexcept>

#include "fracscalar/errors.hpp"
#include "fracscalar/fractional_ops.hpp"

namespace fracscalar {
namespace {

using cd = std::complex<double>;

double norm2(int k1, int k2) {
  return static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
}

}  // namespace

double AggregationKernel::symbol(int k1, int k2) const {
  switch (family) {
    case Family::power: {
      const double k = norm2(k1, k2);
      return k == 0.0 ? 0.0 : -strength / std::pow(k, 0.5 * order);
    }
    case Family::bessel:
      return -strength / (screening + std::pow(norm2(k1, k2), 0.5 * order));
    case Family::custom:
      return custom ? custom(k1, k2) : 0.0;
  }
  return 0.0;
}

DriftSpec DriftSpec::ks_screened(double beta) {
  DriftSpec s;
  s.kind = DriftKind::ks_screened;
  s.beta = beta;
  return s;
}
DriftSpec DriftSpec::ks_poisson() { return DriftSpec{}; }
DriftSpec DriftSpec::euler_vorticity() {
  DriftSpec s;
  s.kind = DriftKind::euler_vorticity;
  return s;
}
DriftSpec DriftSpec::sqg() {
  DriftSpec s;
  s.kind = DriftKind::sqg;
  return s;
}
DriftSpec DriftSpec::ipm() {
  DriftSpec s;
  s.kind = DriftKind::ipm;
  return s;
}
DriftSpec DriftSpec::stokes() {
  DriftSpec s;
  s.kind = DriftKind::stokes;
  return s;
}
DriftSpec DriftSpec::aggregation(AggregationKernel kernel) {
  DriftSpec s;
  s.kind = DriftKind::aggregation;
  s.kernel = std::move(kernel);
  return s;
}

std::string DriftSpec::name() const {
  switch (kind) {
    case DriftKind::ks_screened: return "ks_screened";
    case DriftKind::ks_poisson: return "ks_poisson";
    case DriftKind::euler_vorticity: return "euler";
    case DriftKind::sqg: return "sqg";
    case DriftKind::ipm: return "ipm";
    case DriftKind::stokes: return "stokes";
    case DriftKind::aggregation: return "aggregation";
  }
  return "unknown";
}

DriftKind DriftSpec::kind_from_name(const std::string& name) {
  if (name == "ks_screened") return DriftKind::ks_screened;
  if (name == "ks_poisson") return DriftKind::ks_poisson;
  if (name == "euler") return DriftKind::euler_vorticity;
  if (name == "sqg") return DriftKind::sqg;
  if (name == "ipm") return DriftKind::ipm;
  if (name == "stokes") return DriftKind::stokes;
  if (name == "aggregation") return DriftKind::aggregation;
  throw ConfigError("drift", "unknown drift '" + name + "'");
}

std::vector<double> DriftSpec::parameters() const {
  switch (kind) {
    case DriftKind::ks_screened: return {beta};
    case DriftKind::aggregation:
      return {static_cast<double>(kernel.family), kernel.strength, kernel.order,
              kernel.screening};
    default: return {};
  }
}

DriftSpec DriftSpec::from_parameters(DriftKind kind, const std::vector<double>& params) {
  auto need = [&](std::size_t count) {
    if (params.size() != count) {
      throw std::invalid_argument("DriftSpec: wrong parameter count for drift tag");
    }
  };
  switch (kind) {
    case DriftKind::ks_screened: need(1); return ks_screened(params[0]);
    case DriftKind::ks_poisson: need(0); return ks_poisson();
    case DriftKind::euler_vorticity: need(0); return euler_vorticity();
    case DriftKind::sqg: need(0); return sqg();
    case DriftKind::ipm: need(0); return ipm();
    case DriftKind::stokes: need(0); return stokes();
    case DriftKind::aggregation: {
      need(4);
      AggregationKernel k;
      k.family = static_cast<AggregationKernel::Family>(static_cast<int>(params[0]));
      if (k.family == AggregationKernel::Family::custom) {
        throw std::invalid_argument("DriftSpec: custom aggregation kernels are not serialisable");
      }
      k.strength = params[1];
      k.order = params[2];
      k.screening = params[3];
      return aggregation(k);
    }
  }
  throw std::invalid_argument("DriftSpec: unknown drift tag");
}

void DriftSpec::validate() const {
  if (kind == DriftKind::ks_screened && !(beta > 0.0)) {
    throw ConfigError("drift.beta", "must be > 0 for ks_screened");
  }
  if (kind == DriftKind::aggregation) {
    if (kernel.family == AggregationKernel::Family::bessel && !(kernel.screening > 0.0)) {
      throw ConfigError("drift.screening", "must be > 0 for the bessel kernel");
    }
    for (int k1 = -6; k1 <= 6; ++k1) {
      for (int k2 = -6; k2 <= 6; ++k2) {
        const double a = kernel.symbol(k1, k2);
        const double b = kernel.symbol(-k1, -k2);
        if (!std::isfinite(a) || std::abs(a - b) > 1e-12 * std::max(1.0, std::abs(a))) {
          throw ConfigError("drift.kernel", "aggregation kernel symbol must be real and even");
        }
      }
    }
  }
}

std::pair<Symbol, Symbol> drift_symbols(const DriftSpec& spec) {
  switch (spec.kind) {
    case DriftKind::ks_screened: {
      // Lambda^{beta-1} R_j (1 + Lambda^beta)^{-1}; the product vanishes at k = 0.
      const double beta = spec.beta;
      auto component = [beta](int j) {
        return [beta, j](int k1, int k2) -> cd {
          if (k1 == 0 && k2 == 0) return 0.0;
          return symbols::lambda_pow(k1, k2, beta - 1.0) * symbols::riesz(k1, k2, j) *
                 symbols::resolvent(k1, k2, beta);
        };
      };
      return {component(1), component(2)};
    }
    case DriftKind::ks_poisson:
      // grad Delta^{-1} (u - <u>).
      return {[](int k1, int k2) { return cd(0.0, k1) * symbols::inv_laplacian(k1, k2); },
              [](int k1, int k2) { return cd(0.0, k2) * symbols::inv_laplacian(k1, k2); }};
    case DriftKind::euler_vorticity:
      // (-d2, d1) (-Delta)^{-1}.
      return {[](int k1, int k2) -> cd {
                if (k1 == 0 && k2 == 0) return 0.0;
                return cd(0.0, -k2) / norm2(k1, k2);
              },
              [](int k1, int k2) -> cd {
                if (k1 == 0 && k2 == 0) return 0.0;
                return cd(0.0, k1) / norm2(k1, k2);
              }};
    case DriftKind::sqg:
      // (-d2, d1) Lambda^{-1}.
      return {[](int k1, int k2) -> cd {
                if (k1 == 0 && k2 == 0) return 0.0;
                return cd(0.0, -k2) / std::sqrt(norm2(k1, k2));
              },
              [](int k1, int k2) -> cd {
                if (k1 == 0 && k2 == 0) return 0.0;
                return cd(0.0, k1) / std::sqrt(norm2(k1, k2));
              }};
    case DriftKind::ipm:
      // -R_perp R_1 = (R_2 R_1, -R_1 R_1).
      return {[](int k1, int k2) {
                return symbols::riesz(k1, k2, 2) * symbols::riesz(k1, k2, 1);
              },
              [](int k1, int k2) {
                return -symbols::riesz(k1, k2, 1) * symbols::riesz(k1, k2, 1);
              }};
    case DriftKind::stokes:
      // (-Delta)^{-1} R_perp R_1 = (-R_2 R_1, R_1 R_1) / |k|^2.
      return {[](int k1, int k2) -> cd {
                if (k1 == 0 && k2 == 0) return 0.0;
                return -symbols::riesz(k1, k2, 2) * symbols::riesz(k1, k2, 1) / norm2(k1, k2);
              },
              [](int k1, int k2) -> cd {
                if (k1 == 0 && k2 == 0) return 0.0;
                return symbols::riesz(k1, k2, 1) * symbols::riesz(k1, k2, 1) / norm2(k1, k2);
              }};
    case DriftKind::aggregation: {
      // grad (K * u).
      const AggregationKernel kernel = spec.kernel;
      return {[kernel](int k1, int k2) { return cd(0.0, k1) * kernel.symbol(k1, k2); },
              [kernel](int k1, int k2) { return cd(0.0, k2) * kernel.symbol(k1, k2); }};
    }
  }
  throw std::invalid_argument("drift_symbols: unknown drift");
}

namespace {

MultiplierTable component_table(TorusGrid grid, const DriftSpec& spec, int j) {
  auto [s1, s2] = drift_symbols(spec);
  return MultiplierTable(grid, j == 1 ? s1 : s2);
}

}  // namespace

DriftOperator::DriftOperator(TorusGrid grid, const DriftSpec& spec)
    : spec_(spec), b1_(component_table(grid, spec, 1)), b2_(component_table(grid, spec, 2)) {
  spec_.validate();
}

std::pair<SpectralField, SpectralField> DriftOperator::apply(const SpectralField& u_hat) const {
  return {b1_.apply(u_hat), b2_.apply(u_hat)};
}

VectorField DriftOperator::eval(const RealField& u) const {
  auto [b1, b2] = apply(forward_transform(u));
  return {inverse_transform(b1), inverse_transform(b2)};
}

VectorField eval_drift(const RealField& u, const DriftSpec& spec) {
  return DriftOperator(u.grid(), spec).eval(u);
}

RealField div_drift(const RealField& u, const DriftSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case DriftKind::ks_poisson: {
      RealField out = u;
      out += -mean(u);
      return out;
    }
    case DriftKind::ks_screened:
      return u - inv_one_plus_lambda_beta(u, spec.beta);
    case DriftKind::euler_vorticity:
    case DriftKind::sqg:
      return RealField(u.grid());
    default: {
      DriftOperator op(u.grid(), spec);
      auto [b1, b2] = op.apply(forward_transform(u));
      SpectralField div = derivative(b1, 0);
      div += derivative(b2, 1);
      return inverse_transform(div);
    }
  }
}

ScreenedPositivityReport check_screened_positivity(const RealField& u, double beta) {
  if (u.min() < -1e-6) {
    throw NegativeInput("check_screened_positivity: input has min " + std::to_string(u.min()));
  }
  const RealField v = inv_one_plus_lambda_beta(u, beta);
  ScreenedPositivityReport report;
  report.min_v = v.min();
  report.ok = report.min_v >= -1e-8 * (1.0 + u.max_abs());
  return report;
}

}  // namespace fracscalar
