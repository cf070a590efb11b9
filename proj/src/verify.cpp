#include "dimlab/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "dimlab/estimators.hpp"
#include "dimlab/evolution.hpp"
#include "dimlab/rng.hpp"
#include "dimlab/simulate.hpp"

namespace dimlab::verify {

namespace {

// ---------------------------------------------------------------- helpers

// tanh-sinh rule on (0,1); robust to endpoint singularities, used as the
// independent route for the Laplace-transform comparison.
double integrate01(const std::function<double(double)>& f) {
  const double h = 1.0 / 96.0;
  const double half_pi = std::numbers::pi / 2.0;
  double sum = 0.0;
  for (int k = -384; k <= 384; ++k) {
    const double u = k * h;
    const double sh = std::sinh(u);
    const double x = 0.5 * (1.0 + std::tanh(half_pi * sh));
    if (x <= 0.0 || x >= 1.0) continue;
    const double ch = std::cosh(half_pi * sh);
    const double w = 0.5 * half_pi * std::cosh(u) / (ch * ch);
    sum += h * w * f(x);
  }
  return sum;
}

double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double pow_int(double base, std::size_t n) {
  double r = 1.0;
  for (; n > 0; --n) r *= base;
  return r;
}

double frac(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

// Smooth pseudo-random point function with |f| <= amp.
PointFunction wavy_point_fn(std::uint64_t seed, double amp) {
  const double a = 0.8 + 1.4 * frac(mix64(seed));
  const double b = 6.28 * frac(mix64(seed + 1));
  return [a, b, amp](const Point& x) { return amp * std::sin(a * x[0] + b); };
}

// Multiplicative perturbation of the vacuum: k({}) = 1, |k| <= (1+amp)^n.
SetFunction product_state(std::uint64_t seed, double amp) {
  PointFunction f = wavy_point_fn(seed, amp);
  return SetFunction(
      [f](const Configuration& eta) {
        double prod = 1.0;
        for (const Point& x : eta) prod *= 1.0 + f(x);
        return prod;
      },
      GrowthBound{1.0, 1.0 + amp});
}

// Smooth symmetric function of the configuration, not of product form.
SetFunction wavy_set_function(std::uint64_t seed) {
  const double p1 = 6.28 * frac(mix64(seed + 11));
  const double p2 = 6.28 * frac(mix64(seed + 12));
  return SetFunction(
      [p1, p2](const Configuration& eta) {
        double s1 = 0.0, s2 = 0.0;
        for (const Point& x : eta) {
          s1 += std::sin(1.3 * x[0] + p1);
          s2 += x[0] * x[0];
        }
        return 0.4 + 0.3 * std::cos(s1 + p2) + 0.2 * std::sin(0.9 * s2);
      },
      GrowthBound{0.9, 1.0});
}

std::vector<Configuration> sampled_probes(const Window& w, int max_size, int per_size,
                                          std::uint64_t seed) {
  return NormContext::sampled(w, 1.0, max_size, per_size, seed).probes;
}

struct Ratio {
  double worst = 0.0;
  std::string where;

  void update(double value, const std::string& label) {
    if (value > worst) {
      worst = value;
      where = label;
    }
  }
};

CheckResult finish(std::string name, std::string description, const Ratio& r) {
  CheckResult out;
  out.name = std::move(name);
  out.description = std::move(description);
  out.observed = r.worst;
  out.tolerance = 1.0;
  out.pass = r.worst <= 1.0;
  out.detail = "worst at " + (r.where.empty() ? std::string("-") : r.where);
  return out;
}

std::string fmt(double x) {
  std::ostringstream ss;
  ss << x;
  return ss.str();
}

// ---------------------------------------------------------------- checks

CheckResult check_poisson_preservation(const VerifyOptions&) {
  const double tol = 1e-12;
  Ratio r;
  const Window w({0.0}, {1.0});
  const struct {
    double m, sigma, A;
  } cases[] = {{1.0, 2.0, 1.0}, {0.5, 0.1, 3.0}, {2.0, 0.0, 1.0}};
  for (const auto& c : cases) {
    ModelParams params(c.m, c.sigma, 1);
    const double rho = params.invariant_intensity();
    SetFunction k0 = coherent_state(c.A);
    for (double t : {0.0, 0.3, 1.0, 5.0}) {
      SetFunction kt = evolve_correlation(k0, t, params);
      const double rho_t = (c.A - rho) * std::exp(-t * c.m) + rho;
      for (const Configuration& eta : sampled_probes(w, 6, 3, 71)) {
        double err = std::abs(kt(eta) - pow_int(rho_t, eta.size()));
        r.update(err / tol, "m=" + fmt(c.m) + " sigma=" + fmt(c.sigma) + " t=" + fmt(t) +
                                " n=" + fmt(static_cast<double>(eta.size())));
      }
    }
  }
  return finish("poisson_preservation",
                "closed-form evolution of Poisson data stays Poisson with intensity "
                "(A - sigma/m) e^{-tm} + sigma/m",
                r);
}

CheckResult check_semigroup_law(const VerifyOptions&) {
  const double tol = 1e-10;
  Ratio r;
  const Window w({0.0}, {1.0});
  ModelParams params(1.0, 2.0, 1);
  SetFunction k0 = product_state(5, 0.3);
  auto probes = sampled_probes(w, 5, 3, 72);
  for (double s : {0.3, 0.7, 1.5}) {
    SetFunction ks = evolve_correlation(k0, s, params);
    for (double t : {0.3, 0.7, 1.5}) {
      SetFunction k_comp = evolve_correlation(ks, t, params);
      SetFunction k_direct = evolve_correlation(k0, s + t, params);
      for (const Configuration& eta : probes)
        r.update(std::abs(k_comp(eta) - k_direct(eta)) / tol,
                 "composition s=" + fmt(s) + " t=" + fmt(t));
    }
    SetFunction thinned = evolve_correlation(k0, s, params, EvolutionForm::Thinned);
    SetFunction scaled = evolve_correlation(k0, s, params, EvolutionForm::Scaled);
    for (const Configuration& eta : probes)
      r.update(std::abs(thinned(eta) - scaled(eta)) / tol, "form equivalence t=" + fmt(s));
  }
  return finish("semigroup_law",
                "two-parameter composition of the correlation evolution and agreement of its "
                "two closed forms",
                r);
}

CheckResult check_generator_resolvent(const VerifyOptions&) {
  Ratio r;
  const Window w({0.0}, {1.0});
  ModelParams params(1.0, 2.0, 1);
  const double rho = params.invariant_intensity();
  SetFunction k = product_state(9, 0.3);

  // (a) finite-difference time derivative vs dual generator, rel tol 1e-5
  {
    const double tau = 0.5, h = 1e-4, tol = 1e-5;
    SetFunction k_tau = evolve_correlation(k, tau, params);
    SetFunction k_plus = evolve_correlation(k, tau + h, params);
    SetFunction k_minus = evolve_correlation(k, tau - h, params);
    SetFunction gen = apply_dual_generator(k_tau, params);
    for (const Configuration& eta : sampled_probes(w, 4, 3, 73)) {
      const double fd = (k_plus(eta) - k_minus(eta)) / (2.0 * h);
      const double exact = gen(eta);
      const double rel = std::abs(fd - exact) / std::max(std::abs(exact), 1e-12);
      r.update(rel / tol, "time derivative n=" + fmt(static_cast<double>(eta.size())));
    }
  }

  // (b) (z - L*) R_z = identity, rel tol 1e-8
  for (double z : {0.5, 1.0, 3.0}) {
    const double tol = 1e-8;
    SetFunction Rk = resolvent_dual(k, z, params);
    SetFunction LRk = apply_dual_generator(Rk, params);
    for (const Configuration& eta : sampled_probes(w, 5, 3, 74)) {
      const double lhs = z * Rk(eta) - LRk(eta);
      const double rel = std::abs(lhs - k(eta)) / std::max(std::abs(k(eta)), 1e-12);
      r.update(rel / tol, "resolvent identity z=" + fmt(z));
    }
  }

  // (c) term-by-term numerical Laplace transform of the dual semigroup
  for (double z : {0.5, 1.0, 3.0}) {
    const double tol = 1e-8;
    SetFunction Rk = resolvent_dual(k, z, params);
    for (const Configuration& eta : sampled_probes(w, 4, 2, 75)) {
      const std::uint64_t total = std::uint64_t{1} << eta.size();
      const std::uint32_t full = static_cast<std::uint32_t>(total - 1);
      const int n = static_cast<int>(eta.size());
      double numeric = 0.0;
      for (std::uint64_t mask = 0; mask < total; ++mask) {
        const int j = std::popcount(static_cast<std::uint32_t>(mask));
        Configuration kept = subconfiguration(eta, full & ~static_cast<std::uint32_t>(mask));
        const double a = z / params.m + (n - j);
        const double time_integral =
            integrate01([a, j](double s) { return std::pow(s, a - 1.0) * pow_int(1.0 - s, j); }) /
            params.m;
        numeric += k(kept) * pow_int(rho, static_cast<std::size_t>(j)) * time_integral;
      }
      const double rel = std::abs(numeric - Rk(eta)) / std::max(std::abs(numeric), 1e-12);
      r.update(rel / tol, "laplace z=" + fmt(z) + " n=" + fmt(static_cast<double>(n)));
    }
  }

  return finish("generator_resolvent_consistency",
                "time derivative matches the dual generator; the beta-function resolvent "
                "inverts (z - L*) and equals the numerical Laplace transform",
                r);
}

CheckResult check_invariance_ergodic(const VerifyOptions& opts) {
  Ratio r;
  const Window w({0.0}, {1.0});
  ModelParams params(1.0, 2.0, 1);
  const double rho = params.invariant_intensity();

  // (a) L* annihilates the invariant correlation function, tol 1e-12
  {
    const double tol = 1e-12;
    const double used_rho = opts.corrupt_invariant ? rho / 2.0 : rho;
    SetFunction k_inv = coherent_state(used_rho);
    SetFunction gen = apply_dual_generator(k_inv, params);
    for (const Configuration& eta : sampled_probes(w, 6, 3, 76))
      r.update(std::abs(gen(eta)) / tol, "invariance n=" + fmt(static_cast<double>(eta.size())));
  }

  // (b) contraction bound dominates the observed weighted sup
  const double A = 1.0;
  SetFunction k0 = coherent_state(A);
  for (double mult : {1.5, 2.0, 4.0}) {
    const double C = mult * rho;
    double analytic_norm = 0.0;
    for (int n = 0; n <= 80; ++n)
      analytic_norm =
          std::max(analytic_norm, std::abs(pow_int(A, n) - pow_int(rho, n)) / pow_int(C, n));
    NormContext ctx = NormContext::sampled(w, C, 5, 4, 77);
    ErgodicBound eb(k0, C, params, ctx, analytic_norm);
    for (double t : {0.5, 1.0, 2.0, 4.0})
      r.update(eb.empirical_sup(t) / eb.bound(t), "bound C=" + fmt(C) + " t=" + fmt(t));
  }

  // (c) fitted decay rate of the observed sup within 5% of m
  {
    NormContext ctx = NormContext::sampled(w, 2.0 * rho, 5, 4, 78);
    ErgodicBound eb(k0, 2.0 * rho, params, ctx);
    std::vector<double> ts{1.0, 2.0, 3.0, 4.0, 5.0}, logs;
    for (double t : ts) logs.push_back(std::log(eb.empirical_sup(t)));
    const double slope = fit_slope(ts, logs);
    r.update(std::abs(slope + params.m) / (0.05 * params.m), "decay exponent fit");
  }

  return finish("invariance_ergodic_rate",
                "L* k_inv = 0, exponential contraction bound never violated, observed decay "
                "rate equals m within 5%",
                r);
}

CheckResult check_gap_decay(const VerifyOptions&) {
  Ratio r;
  const Window w({0.0}, {1.0});
  ModelParams params(1.0, 2.0, 1);

  // Non-Poisson initial state: pairwise-correlated multiplicative weights.
  const double A = 1.0, eps = 0.25, ell = 0.5;
  auto phi = [ell](const Point& a, const Point& b) {
    const double d = a[0] - b[0];
    return std::exp(-d * d / (ell * ell));
  };
  SetFunction k0([A, eps, phi](const Configuration& eta) {
    double prod = pow_int(A, eta.size());
    for (std::size_t i = 0; i < eta.size(); ++i)
      for (std::size_t j = i + 1; j < eta.size(); ++j)
        prod *= 1.0 + eps * phi(eta[i], eta[j]);
    return prod;
  });
  GapFunction v0 = [k0](const Configuration& eta, const Point& y) {
    return correlation_gap(k0, eta, y);
  };

  const Point y{0.37};
  auto probes = sampled_probes(w, 4, 3, 79);

  // (a) evolve-then-gap equals the closed subset-sum gap evolution, tol 1e-10
  {
    const double tol = 1e-10;
    for (double t : {0.5, 1.0, 2.0}) {
      SetFunction kt = evolve_correlation(k0, t, params);
      GapFunction vt = evolve_gap(v0, t, params);
      for (const Configuration& eta : probes) {
        if (eta.contains(y)) continue;
        r.update(std::abs(correlation_gap(kt, eta, y) - vt(eta, y)) / tol,
                 "gap closed form t=" + fmt(t));
      }
    }
  }

  // (b) weighted norm of the evolved gap below a(y) e^{-tm}
  {
    NormContext ctx = NormContext::sampled(w, 2.0 * params.invariant_intensity(), 5, 4, 80);
    for (double t : {0.5, 1.0, 2.0}) {
      GapFunction vt = evolve_gap(v0, t, params);
      SetFunction vt_slice([&vt, y](const Configuration& eta) { return vt(eta, y); });
      const double bound = gap_norm_bound(v0, y, t, params, ctx);
      r.update(ctx.empirical_norm(vt_slice) / bound, "gap norm bound t=" + fmt(t));
    }
  }

  return finish("correlation_gap_decay",
                "pair gap k(eta u y) - k(eta) k(y) evolves by the closed subset sum and its "
                "weighted norm contracts at rate e^{-tm}",
                r);
}

CheckResult check_algebra_identities(const VerifyOptions&) {
  const double tol = 1e-12;
  Ratio r;
  const Window w({0.0}, {1.0});
  PointFunction f = wavy_point_fn(21, 0.6);
  PointFunction g = wavy_point_fn(22, 0.5);
  SetFunction G1 = wavy_set_function(23);
  SetFunction G2 = wavy_set_function(24);

  for (const Configuration& eta : sampled_probes(w, 5, 3, 81)) {
    // K-transform roundtrips
    SetFunction KG([&G1](const Configuration& gamma) { return k_transform(G1, gamma); });
    r.update(std::abs(k_inverse(KG, eta) - G1(eta)) / tol, "K then K^-1");
    SetFunction K_inv_G([&G1](const Configuration& gamma) { return k_inverse(G1, gamma); });
    r.update(std::abs(k_transform(K_inv_G, eta) - G1(eta)) / tol, "K^-1 then K");

    // coherent-state homomorphisms
    SetFunction star = star_convolution(coherent_state(f), coherent_state(g));
    SetFunction star_expected = coherent_state(
        [f, g](const Point& x) { return f(x) + g(x) + f(x) * g(x); });
    r.update(std::abs(star(eta) - star_expected(eta)) / tol, "coherent star product");

    SetFunction ast = ast_convolution(coherent_state(f), coherent_state(g));
    SetFunction ast_expected =
        coherent_state([f, g](const Point& x) { return f(x) + g(x); });
    r.update(std::abs(ast(eta) - ast_expected(eta)) / tol, "coherent ast sum");
  }

  // multiplicativity under K on slightly larger configurations
  SetFunction G1_star_G2 = star_convolution(G1, G2);
  for (const Configuration& gamma : sampled_probes(w, 6, 2, 82)) {
    const double lhs = k_transform(G1_star_G2, gamma);
    const double rhs = k_transform(G1, gamma) * k_transform(G2, gamma);
    r.update(std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)) / tol, "K multiplicativity");
  }

  return finish("lattice_algebra_identities",
                "K-transform roundtrips, K turns the triple-partition product into pointwise "
                "multiplication, coherent states are homomorphisms",
                r);
}

CheckResult check_minlos_identity(const VerifyOptions&) {
  Ratio r;
  const Window w({0.0}, {1.0});
  LPIntegralSpec spec{w, 1.0, 10, QuadratureMethod{6}, false};

  // separable integrand: both sides equal the truncated exponential series
  {
    const double tol = 1e-5;
    const double a = 0.4, b = 0.3;
    auto H = [a, b](const Configuration& xi, const Configuration& eta, const Configuration&) {
      return pow_int(a, xi.size()) * pow_int(b, eta.size());
    };
    MinlosResult res = minlos_check(H, spec);
    double closed = 0.0, term = 1.0;
    for (int n = 0; n <= spec.truncation; ++n) {
      closed += term;
      term *= (a + b) * w.volume() / (n + 1);
    }
    r.update(std::abs(res.lhs - closed) / std::abs(closed) / tol, "separable lhs");
    r.update(std::abs(res.rhs - closed) / std::abs(closed) / tol, "separable rhs");
  }

  // smooth non-separable integrand: two-sided agreement within combined tails
  {
    PointFunction f = wavy_point_fn(31, 0.5);
    PointFunction g = wavy_point_fn(32, 0.4);
    auto H = [f, g](const Configuration& xi, const Configuration& eta,
                    const Configuration& zeta) {
      double prod = 1.0;
      for (const Point& x : xi) prod *= f(x);
      for (const Point& x : eta) prod *= g(x);
      double s = 0.0;
      for (const Point& x : zeta) s += x[0];
      return prod * (1.0 + 0.1 * std::sin(s));
    };
    MinlosResult res = minlos_check(H, spec);
    const double combined_tail =
        2.0 * lp_tail_bound(GrowthBound{1.1, 0.9}, spec.z, w.volume(), spec.truncation);
    r.update(std::abs(res.lhs - res.rhs) / (combined_tail + 1e-8), "smooth integrand");
  }

  return finish("minlos_identity",
                "splitting a configuration integral over subsets equals the double product "
                "integral, on the shared discretization",
                r);
}

CheckResult check_bogolyubov(const VerifyOptions&) {
  Ratio r;
  ModelParams params(1.0, 2.0, 1);
  const double rho = params.invariant_intensity();
  const Window support({-1.0}, {1.0});

  std::vector<TestFunction> thetas;
  thetas.push_back({[](const Point& x) { return 0.8 * std::exp(-2.0 * x[0] * x[0]); },
                    support, std::nullopt, std::nullopt});
  thetas.push_back({[](const Point& x) { return 0.5 * std::cos(std::numbers::pi * x[0] / 2.0); },
                    support, std::nullopt, std::nullopt});
  thetas.push_back({[](const Point& x) { return -0.4 * std::exp(-x[0] * x[0]); }, support,
                    std::nullopt, std::nullopt});

  const double A = 1.0;
  SetFunction k0 = coherent_state(A);
  BogolyubovFunctional B0 = [A](const TestFunction& theta) {
    return std::exp(A * theta.mean());
  };

  // (a) closed-form evolution vs quadrature of e(theta) k_t, rel tol 1e-4
  {
    const double tol = 1e-4, t = 0.7;
    SetFunction kt = evolve_correlation(k0, t, params);
    LPIntegralSpec spec{support, 1.0, 10, QuadratureMethod{8}, false};
    int which = 0;
    for (const TestFunction& theta : thetas) {
      const double closed = bogolyubov_evolve(B0, theta, t, params);
      const double quad = bogolyubov_from_correlation(kt, theta, spec);
      r.update(std::abs(closed - quad) / std::abs(closed) / tol,
               "closed vs quadrature theta#" + fmt(which++));
    }
  }

  // (b) the invariant functional is a fixed point, tol 1e-10
  {
    const double tol = 1e-10;
    BogolyubovFunctional B_inv = [&params](const TestFunction& theta) {
      return bogolyubov_invariant(theta, params);
    };
    for (const TestFunction& theta : thetas) {
      for (double t : {0.5, 2.0}) {
        const double evolved = bogolyubov_evolve(B_inv, theta, t, params);
        const double target = bogolyubov_invariant(theta, params);
        r.update(std::abs(evolved - target) / std::abs(target) / tol, "fixed point t=" + fmt(t));
      }
    }
  }

  // (c) evolution does not expand sampled balls for alpha >= sigma/m
  {
    std::vector<TestFunction> draws;
    draws.push_back({[](const Point&) { return 0.0; }, support, 0.0, 0.0});
    for (int i = 0; i < 50; ++i) {
      CounterRng rng(909, static_cast<std::uint64_t>(i));
      const double amp = rng.uniform(-0.9, 0.9);
      const double width = rng.uniform(0.5, 3.0);
      const double center = rng.uniform(-0.5, 0.5);
      draws.push_back({[amp, width, center](const Point& x) {
                         const double u = x[0] - center;
                         return amp * std::exp(-width * u * u);
                       },
                       support, std::nullopt, std::nullopt});
    }
    for (double alpha : {rho, rho + 1.0}) {
      const double a0 = std::min(alpha, rho);  // initial datum inside the alpha-ball
      BogolyubovFunctional B_init = [a0](const TestFunction& theta) {
        return std::exp(a0 * theta.mean());
      };
      const double norm0 = ball_norm_estimate(B_init, draws, alpha);
      for (double t : {0.5, 2.0}) {
        BogolyubovFunctional B_t = [&](const TestFunction& theta) {
          return bogolyubov_evolve(B_init, theta, t, params);
        };
        const double norm_t = ball_norm_estimate(B_t, draws, alpha);
        r.update(norm_t / (norm0 + 1e-12), "ball alpha=" + fmt(alpha) + " t=" + fmt(t));
      }
    }
  }

  return finish("bogolyubov_functional",
                "generating functional evolves by exp{(sigma/m)(1-e^{-tm})<theta>} "
                "B0(e^{-tm} theta); invariant fixed point; ball contraction",
                r);
}

CheckResult check_simulation(const VerifyOptions& opts) {
  Ratio r;
  ModelParams params(1.0, 2.0, 1);
  const Window w({0.0}, {10.0}, BoundaryMode::Periodic);
  const double t = 1.0;
  const double rho_t = (1.0 - params.invariant_intensity()) * std::exp(-t) +
                       params.invariant_intensity();  // A = 1

  SimConfig cfg;
  cfg.params = params;
  cfg.window = w;
  cfg.initial = InitialLaw::poisson(1.0);
  cfg.t_end = t;
  cfg.replicas = 10000;
  cfg.seed = 20240812;

  cfg.scheme = SamplingScheme::ExactDecomposition;
  SampleEnsemble exact = sample_exact(cfg, opts.threads);
  cfg.scheme = SamplingScheme::Gillespie;
  SampleEnsemble gillespie = sample_gillespie(cfg, opts.threads);

  for (int j : {1, 2}) {
    const double target = pow_int(rho_t, static_cast<std::size_t>(j));
    MomentEstimate e = factorial_moment(exact, j);
    MomentEstimate g = factorial_moment(gillespie, j);
    r.update(std::abs(e.estimate - target) / (3.0 * e.std_error), "exact moment j=" + fmt(j));
    r.update(std::abs(g.estimate - target) / (3.0 * g.std_error), "gillespie moment j=" + fmt(j));
    const double comb = std::sqrt(e.std_error * e.std_error + g.std_error * g.std_error);
    r.update(std::abs(e.estimate - g.estimate) / (3.0 * comb), "cross-sampler j=" + fmt(j));
  }

  std::vector<double> edges;
  for (int i = 0; i <= 8; ++i) edges.push_back(0.25 * i);
  for (const GapBin& bin : gap_estimator(exact, edges)) {
    if (bin.empty) continue;
    r.update(std::abs(bin.v_hat) / (3.0 * bin.std_error), "pair gap r=" + fmt(bin.r_mid));
  }

  return finish("simulation_agreement",
                "factorial-moment estimates from both samplers match the closed forms and "
                "each other; the pair gap of evolved Poisson data is statistically zero",
                r);
}

CheckResult check_mean_ergodic(const VerifyOptions&) {
  Ratio r;
  ModelParams params(1.0, 2.0, 1);
  const Window w({0.0}, {1.0});
  PointFunction g = [](const Point& x) { return std::exp(-x[0] * x[0]); };
  SetFunction G = SetFunction(
                      [g](const Configuration& eta) {
                        double prod = 1.0;
                        for (const Point& x : eta) prod *= g(x);
                        return prod;
                      },
                      GrowthBound{1.0, 1.0})
                      .with_support(2);

  LPIntegralSpec spec{w, 1.0, 6, QuadratureMethod{10}, false};
  MeanErgodicTarget target = mean_ergodic_target(G, params, spec);
  auto probes = sampled_probes(w, 3, 3, 83);

  std::vector<double> log_t, log_err;
  for (double t : {5.0, 10.0, 20.0, 40.0}) {
    SetFunction avg = mean_ergodic_average(G, t, params, spec, 64);
    double sup = 0.0;
    for (const Configuration& eta : probes)
      sup = std::max(sup, std::abs(avg(eta) - target.limit(eta)));
    log_t.push_back(std::log(t));
    log_err.push_back(std::log(sup));
  }
  const double slope = fit_slope(log_t, log_err);
  r.update(std::abs(slope + 1.0) / 0.15, "1/t convergence exponent");

  return finish("mean_ergodic_average",
                "time averages of the quasi-observable semigroup approach the invariant "
                "pairing at rate 1/t",
                r);
}

struct CheckEntry {
  const char* name;
  CheckResult (*run)(const VerifyOptions&);
};

constexpr CheckEntry kChecks[] = {
    {"poisson_preservation", check_poisson_preservation},
    {"semigroup_law", check_semigroup_law},
    {"generator_resolvent_consistency", check_generator_resolvent},
    {"invariance_ergodic_rate", check_invariance_ergodic},
    {"correlation_gap_decay", check_gap_decay},
    {"lattice_algebra_identities", check_algebra_identities},
    {"minlos_identity", check_minlos_identity},
    {"bogolyubov_functional", check_bogolyubov},
    {"simulation_agreement", check_simulation},
    {"mean_ergodic_average", check_mean_ergodic},
};

}  // namespace

std::vector<std::string> check_names() {
  std::vector<std::string> names;
  for (const CheckEntry& c : kChecks) names.emplace_back(c.name);
  return names;
}

std::vector<CheckResult> run_checks(const VerifyOptions& opts) {
  std::vector<CheckResult> results;
  for (const CheckEntry& c : kChecks) {
    if (!opts.only.empty() &&
        std::find(opts.only.begin(), opts.only.end(), c.name) == opts.only.end())
      continue;
    results.push_back(c.run(opts));
  }
  return results;
}

}  // namespace dimlab::verify
