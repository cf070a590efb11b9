#include "dimlab/evolution.hpp"

#include <bit>
#include <cmath>

#include "dimlab/special.hpp"

namespace dimlab {

namespace {

// Integer power with 0^0 = 1, so empty-set factors behave.
double pow_int(double base, std::size_t n) {
  double r = 1.0;
  for (; n > 0; --n) r *= base;
  return r;
}

void require_cap(const Configuration& eta) {
  if (eta.size() > kMaxSubsetPoints) throw CapExceeded("evolution: |eta| exceeds subset cap");
}

}  // namespace

SetFunction apply_generator_symbol(SetFunction G, const ModelParams& params, const Window& window,
                                   int points_per_dim) {
  const double m = params.m, sigma = params.sigma;
  return SetFunction([G = std::move(G), m, sigma, window, points_per_dim](
                         const Configuration& eta) {
    double value = -m * static_cast<double>(eta.size()) * G(eta);
    if (sigma > 0.0) {
      value += sigma * integrate_window(
                           [&](const Point& x) {
                             return G(union_with_separation(eta, Configuration::single(x)));
                           },
                           window, points_per_dim);
    }
    return value;
  });
}

SetFunction apply_dual_generator(SetFunction k, const ModelParams& params) {
  const double m = params.m, sigma = params.sigma;
  return SetFunction([k = std::move(k), m, sigma](const Configuration& eta) {
    double value = -m * static_cast<double>(eta.size()) * k(eta);
    for (std::size_t i = 0; i < eta.size(); ++i) value += sigma * k(eta.without_index(i));
    return value;
  });
}

SetFunction evolve_correlation(SetFunction k0, double t, const ModelParams& params,
                               EvolutionForm form) {
  if (t < 0.0) throw DomainError("evolve_correlation: t must be >= 0");
  const double m = params.m;
  const double rho = params.invariant_intensity();
  std::optional<GrowthBound> bound;
  if (k0.bound())
    bound = GrowthBound{k0.bound()->norm_estimate,
                        std::max(k0.bound()->growth_constant, rho)};

  if (form == EvolutionForm::Thinned) {
    const double decay = std::exp(-t * m);
    const double z_t = rho * (1.0 - decay);
    return SetFunction(
        [k0 = std::move(k0), decay, z_t](const Configuration& eta) {
          require_cap(eta);
          const std::uint64_t total = std::uint64_t{1} << eta.size();
          const int n = static_cast<int>(eta.size());
          double sum = 0.0;
          for (std::uint64_t mask = 0; mask < total; ++mask) {
            const int kept = std::popcount(mask);
            sum += pow_int(decay, static_cast<std::size_t>(kept)) *
                   k0(subconfiguration(eta, static_cast<std::uint32_t>(mask))) *
                   pow_int(z_t, static_cast<std::size_t>(n - kept));
          }
          return sum;
        },
        bound);
  }

  // Scaled form: e^{-tm|eta|} (e((sigma/m)(e^{tm}-1)) * k0)(eta).
  const double c_t = rho * (std::exp(t * m) - 1.0);
  return SetFunction(
      [k0 = std::move(k0), m, t, c_t](const Configuration& eta) {
        require_cap(eta);
        const std::uint64_t total = std::uint64_t{1} << eta.size();
        const int n = static_cast<int>(eta.size());
        double sum = 0.0;
        for (std::uint64_t mask = 0; mask < total; ++mask) {
          const int kept = std::popcount(mask);
          sum += k0(subconfiguration(eta, static_cast<std::uint32_t>(mask))) *
                 pow_int(c_t, static_cast<std::size_t>(n - kept));
        }
        return std::exp(-t * m * n) * sum;
      },
      bound);
}

double SubPoissonBound::uniform(int n) const {
  return k0_norm * pow_int(std::max(C, params.invariant_intensity()),
                           static_cast<std::size_t>(n));
}

double SubPoissonBound::at_time(double t, int n) const {
  const double decay = std::exp(-t * params.m);
  const double mixed = C * decay + params.invariant_intensity() * (1.0 - decay);
  return k0_norm * pow_int(mixed, static_cast<std::size_t>(n));
}

SubPoissonBound sub_poisson_bound(double k0_norm, double C, const ModelParams& params) {
  if (!(C > 0.0)) throw DomainError("sub_poisson_bound: C must be > 0");
  return SubPoissonBound{k0_norm, C, params};
}

namespace {

double semigroup_value(const SetFunction& G, double t, const ModelParams& params,
                       const LPIntegralSpec& spec, const Configuration& eta) {
  if (G.support_cap() && eta.size() > *G.support_cap()) return 0.0;
  const double m = params.m;
  const double c = params.invariant_intensity() * (1.0 - std::exp(-t * m));
  std::optional<GrowthBound> bound;
  if (G.bound())
    bound = GrowthBound{
        G.bound()->norm_estimate * pow_int(G.bound()->growth_constant, eta.size()),
        G.bound()->growth_constant * c};
  std::optional<std::size_t> cap;
  if (G.support_cap()) cap = *G.support_cap() - eta.size();
  SetFunction integrand(
      [&G, &eta, c](const Configuration& xi) {
        return G(union_with_separation(eta, xi)) * pow_int(c, xi.size());
      },
      bound, cap);
  return std::exp(-t * m * static_cast<double>(eta.size())) *
         lp_integrate(integrand, spec).value;
}

}  // namespace

SetFunction semigroup_quasi(SetFunction G, double t, const ModelParams& params,
                            LPIntegralSpec spec) {
  if (t < 0.0) throw DomainError("semigroup_quasi: t must be >= 0");
  spec.z = 1.0;
  return SetFunction([G = std::move(G), t, params, spec](const Configuration& eta) {
    return semigroup_value(G, t, params, spec, eta);
  });
}

SetFunction resolvent_dual(SetFunction k, double z, const ModelParams& params) {
  if (!(z > 0.0)) throw DomainError("resolvent_dual: z must be > 0");
  const double m = params.m;
  const double rho = params.invariant_intensity();
  return SetFunction([k = std::move(k), z, m, rho](const Configuration& eta) {
    require_cap(eta);
    const int n = static_cast<int>(eta.size());
    // B(z/m + n - j, j + 1) depends only on |xi| = j.
    std::vector<double> beta(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) beta[j] = euler_beta(z / m + n - j, j + 1.0);
    const std::uint64_t total = std::uint64_t{1} << eta.size();
    const std::uint32_t full = static_cast<std::uint32_t>(total - 1);
    double sum = 0.0;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      const int j = std::popcount(mask);
      sum += pow_int(rho, static_cast<std::size_t>(j)) * beta[j] *
             k(subconfiguration(eta, full & ~static_cast<std::uint32_t>(mask)));
    }
    return sum / m;
  });
}

SetFunction resolvent_quasi(SetFunction G, double z, const ModelParams& params,
                            LPIntegralSpec spec) {
  if (!(z > 0.0)) throw DomainError("resolvent_quasi: z must be > 0");
  spec.z = 1.0;
  const double m = params.m;
  const double rho = params.invariant_intensity();
  return SetFunction([G = std::move(G), z, m, rho, spec](const Configuration& eta) {
    if (G.support_cap() && eta.size() > *G.support_cap()) return 0.0;
    const double n = static_cast<double>(eta.size());
    std::optional<std::size_t> cap;
    if (G.support_cap()) cap = *G.support_cap() - eta.size();
    SetFunction integrand(
        [&](const Configuration& xi) {
          return G(union_with_separation(eta, xi)) * pow_int(rho, xi.size()) *
                 euler_beta(z / m + n, static_cast<double>(xi.size()) + 1.0);
        },
        std::nullopt, cap);
    return lp_integrate(integrand, spec).value / m;
  });
}

SetFunction invariant_correlation(const ModelParams& params) {
  return coherent_state(params.invariant_intensity());
}

ErgodicBound::ErgodicBound(SetFunction k0, double C, const ModelParams& params,
                           NormContext probes, std::optional<double> analytic_norm_diff)
    : k0_(std::move(k0)), C_(C), params_(params), probes_(std::move(probes)) {
  if (!(C > params.invariant_intensity()))
    throw DomainError("ErgodicBound: requires C > sigma/m");
  probes_.C = C;
  if (analytic_norm_diff) {
    norm_diff_ = *analytic_norm_diff;
  } else {
    SetFunction k_inv = invariant_correlation(params_);
    SetFunction diff([k0 = k0_, k_inv](const Configuration& eta) {
      return k0(eta) - k_inv(eta);
    });
    norm_diff_ = probes_.empirical_norm(diff);
  }
}

double ErgodicBound::bound(double t) const {
  const double rate = 1.0 - params_.sigma / (C_ * params_.m);
  return norm_diff_ * std::exp(-params_.m * t) / rate;
}

double ErgodicBound::empirical_sup(double t) const {
  SetFunction k_t = evolve_correlation(k0_, t, params_);
  SetFunction k_inv = invariant_correlation(params_);
  SetFunction diff(
      [k_t, k_inv](const Configuration& eta) { return k_t(eta) - k_inv(eta); });
  return probes_.empirical_norm(diff);
}

ProjectionDensity projection_density(SetFunction k, const Window& window, LPIntegralSpec spec) {
  spec.window = window;
  spec.z = 1.0;
  const bool certified = k.bound().has_value();
  SetFunction density([k = std::move(k), spec](const Configuration& eta) {
    std::optional<GrowthBound> bound;
    if (k.bound())
      bound = GrowthBound{
          k.bound()->norm_estimate * pow_int(k.bound()->growth_constant, eta.size()),
          k.bound()->growth_constant};
    SetFunction integrand(
        [&](const Configuration& xi) {
          const double sign = (xi.size() % 2 == 0) ? 1.0 : -1.0;
          return sign * k(union_with_separation(eta, xi));
        },
        bound);
    return lp_integrate(integrand, spec).value;
  });
  return {std::move(density), certified};
}

double projection_ergodic_bound(double k0_norm_diff, double C, const ModelParams& params,
                                const Window& window, double t) {
  if (!(C > params.invariant_intensity()))
    throw DomainError("projection_ergodic_bound: requires C > sigma/m");
  const double A = k0_norm_diff / (1.0 - params.sigma / (C * params.m));
  return A * std::exp(-t * params.m) * std::exp(C * window.volume());
}

double correlation_gap(const SetFunction& k, const Configuration& eta, const Point& y) {
  if (eta.contains(y)) throw DuplicatePoint("correlation_gap: y must not lie in eta");
  return k(eta.with_point(y)) - k(eta) * k(Configuration::single(y));
}

GapFunction evolve_gap(GapFunction v0, double t, const ModelParams& params) {
  if (t < 0.0) throw DomainError("evolve_gap: t must be >= 0");
  const double m = params.m;
  const double decay = std::exp(-t * m);
  const double z_t = params.invariant_intensity() * (1.0 - decay);
  return [v0 = std::move(v0), decay, z_t](const Configuration& eta, const Point& y) {
    require_cap(eta);
    const std::uint64_t total = std::uint64_t{1} << eta.size();
    const int n = static_cast<int>(eta.size());
    double sum = 0.0;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      const int kept = std::popcount(mask);
      sum += pow_int(decay, static_cast<std::size_t>(kept) + 1) *
             v0(subconfiguration(eta, static_cast<std::uint32_t>(mask)), y) *
             pow_int(z_t, static_cast<std::size_t>(n - kept));
    }
    return sum;
  };
}

double gap_norm_bound(const GapFunction& v0, const Point& y, double t, const ModelParams& params,
                      const NormContext& probes) {
  SetFunction slice([&v0, y](const Configuration& eta) { return v0(eta, y); });
  return probes.empirical_norm(slice) * std::exp(-t * params.m);
}

SetFunction evolve_ursell(SetFunction u0, double t, const ModelParams& params) {
  if (t < 0.0) throw DomainError("evolve_ursell: t must be >= 0");
  if (std::abs(u0(Configuration::empty())) > 1e-9)
    throw PreconditionViolated("evolve_ursell: u0(emptyset) must equal 0");
  const double m = params.m;
  const double singleton_shift = params.invariant_intensity() * (1.0 - std::exp(-t * m));
  return SetFunction([u0 = std::move(u0), m, t, singleton_shift](const Configuration& eta) {
    double value = std::exp(-t * m * static_cast<double>(eta.size())) * u0(eta);
    if (eta.size() == 1) value += singleton_shift;
    return value;
  });
}

double TestFunction::mean(int points_per_dim) const {
  if (integral) return *integral;
  return integrate_window(eval, support, points_per_dim);
}

double TestFunction::l1(int points_per_dim) const {
  if (l1_norm) return *l1_norm;
  return integrate_window([this](const Point& x) { return std::abs(eval(x)); }, support,
                          points_per_dim);
}

TestFunction TestFunction::scaled(double factor) const {
  TestFunction out;
  out.eval = [f = eval, factor](const Point& x) { return factor * f(x); };
  out.support = support;
  if (integral) out.integral = factor * *integral;
  if (l1_norm) out.l1_norm = std::abs(factor) * *l1_norm;
  return out;
}

double bogolyubov_evolve(const BogolyubovFunctional& B0, const TestFunction& theta, double t,
                         const ModelParams& params) {
  if (t < 0.0) throw DomainError("bogolyubov_evolve: t must be >= 0");
  const double decay = std::exp(-t * params.m);
  const double noise = params.invariant_intensity() * (1.0 - decay);
  return std::exp(noise * theta.mean()) * B0(theta.scaled(decay));
}

double bogolyubov_from_correlation(const SetFunction& k, const TestFunction& theta,
                                   LPIntegralSpec spec) {
  spec.z = 1.0;
  spec.window = theta.support;
  SetFunction integrand([&k, &theta](const Configuration& eta) {
    double prod = 1.0;
    for (const Point& x : eta) prod *= theta.eval(x);
    return prod * k(eta);
  });
  return lp_integrate(integrand, spec).value;
}

double bogolyubov_invariant(const TestFunction& theta, const ModelParams& params) {
  return std::exp(params.invariant_intensity() * theta.mean());
}

double bogolyubov_distance_bound(double k0_norm_diff, double C, const ModelParams& params,
                                 const TestFunction& theta, double t) {
  if (!(C > params.invariant_intensity()))
    throw DomainError("bogolyubov_distance_bound: requires C > sigma/m");
  return std::exp(-t * params.m) * k0_norm_diff * std::exp(C * theta.l1()) /
         (1.0 - params.sigma / (C * params.m));
}

double ball_norm_estimate(const BogolyubovFunctional& B, const std::vector<TestFunction>& thetas,
                          double alpha) {
  double sup = 0.0;
  for (const TestFunction& theta : thetas) {
    double v = std::abs(B(theta)) * std::exp(-alpha * theta.l1());
    if (v > sup) sup = v;
  }
  return sup;
}

namespace {

double simpson_time_average(const std::function<double(double)>& f, double t, int steps) {
  // Composite Simpson over [0, t] with an even step count, divided by t.
  if (steps % 2 == 1) ++steps;
  const double h = t / steps;
  double sum = f(0.0) + f(t);
  for (int i = 1; i < steps; ++i) sum += f(i * h) * ((i % 2 == 1) ? 4.0 : 2.0);
  return sum * h / 3.0 / t;
}

}  // namespace

SetFunction mean_ergodic_average(SetFunction G, double t, const ModelParams& params,
                                 LPIntegralSpec spec, int time_steps) {
  if (!(t > 0.0)) throw DomainError("mean_ergodic_average: t must be > 0");
  if (time_steps < 2) time_steps = 2;
  spec.z = 1.0;
  return SetFunction([G = std::move(G), t, params, spec, time_steps](const Configuration& eta) {
    auto at = [&](double s) { return semigroup_value(G, s, params, spec, eta); };
    int steps = time_steps;
    double value = simpson_time_average(at, t, steps);
    for (int refine = 0; refine < 6; ++refine) {
      steps *= 2;
      double next = simpson_time_average(at, t, steps);
      bool converged = std::abs(next - value) < 1e-6;
      value = next;
      if (converged) break;
    }
    return value;
  });
}

MeanErgodicTarget mean_ergodic_target(const SetFunction& G, const ModelParams& params,
                                      LPIntegralSpec spec) {
  spec.z = 1.0;
  SetFunction k_inv = invariant_correlation(params);
  SetFunction integrand([&G, k_inv](const Configuration& xi) { return G(xi) * k_inv(xi); },
                        G.bound() ? std::optional<GrowthBound>(GrowthBound{
                                        G.bound()->norm_estimate,
                                        G.bound()->growth_constant *
                                            std::max(params.invariant_intensity(), 1e-300)})
                                  : std::nullopt,
                        G.support_cap());
  const double integral = lp_integrate(integrand, spec).value;
  SetFunction limit([integral](const Configuration& eta) {
    return eta.is_empty() ? integral : 0.0;
  });
  return {integral, std::move(limit)};
}

}  // namespace dimlab
