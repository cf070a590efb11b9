#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dimlab/lp_integral.hpp"
#include "dimlab/quadrature.hpp"
#include "dimlab/rng.hpp"
#include "dimlab/subset_algebra.hpp"

using namespace dimlab;

namespace {

const Window unit_window({0.0}, {1.0});

// Truncated exponential series sum_{n<=N} x^n / n!.
double exp_partial(double x, int N) {
  double sum = 0.0, term = 1.0;
  for (int n = 0; n <= N; ++n) {
    sum += term;
    term *= x / (n + 1);
  }
  return sum;
}

}  // namespace

TEST_CASE("gauss-legendre rules") {
  // degree-3 polynomial integrated exactly by the 2-point rule
  QuadratureRule rule = gauss_legendre_on(0.0, 1.0, 2);
  double sum = 0.0;
  for (int i = 0; i < 2; ++i) sum += rule.weights[i] * std::pow(rule.nodes[i], 3);
  CHECK(sum == doctest::Approx(0.25).epsilon(1e-14));

  // smooth integrand, 16 nodes: essentially exact
  double s = integrate_window([](const Point& x) { return std::exp(-x[0] * x[0]); },
                              unit_window, 16);
  CHECK(s == doctest::Approx(0.7468241328124270).epsilon(1e-12));
}

TEST_CASE("pairwise summation is chunk-independent") {
  std::vector<double> xs;
  CounterRng rng(4);
  for (int i = 0; i < 1000; ++i) xs.push_back(rng.uniform(-1.0, 1.0));
  PairwiseAccumulator acc;
  for (double x : xs) acc.add(x);
  CHECK(acc.total() == pairwise_sum(xs));
}

TEST_CASE("lp_integrate of coherent states") {
  SUBCASE("constant intensity reaches exp of the mean") {
    LPIntegralSpec spec{unit_window, 1.0, 10, QuadratureMethod{12}, false};
    LPResult res = lp_integrate(coherent_state(0.5), spec);
    CHECK(res.value == doctest::Approx(std::exp(0.5)).epsilon(1e-6));
    REQUIRE(res.tail_bound.has_value());
    CHECK(*res.tail_bound < 1e-6);
  }
  SUBCASE("empty indicator integrates to one") {
    for (double z : {0.5, 1.0, 3.0}) {
      LPIntegralSpec spec{Window({0.0}, {2.0}), z, 6, QuadratureMethod{8}, false};
      CHECK(lp_integrate(empty_indicator(), spec).value == doctest::Approx(1.0));
    }
  }
  SUBCASE("cardinality integrand matches the independent series") {
    SetFunction count([](const Configuration& eta) {
      return static_cast<double>(eta.size());
    });
    const Window w({0.0}, {2.0});
    LPIntegralSpec spec{w, 1.0, 12, QuadratureMethod{12}, false};
    // independent oracle: sum_n n (z|W|)^n / n!
    double expected = 0.0, term = 1.0;
    for (int n = 0; n <= spec.truncation; ++n) {
      expected += n * term;
      term *= 2.0 / (n + 1);
    }
    CHECK(lp_integrate(count, spec).value == doctest::Approx(expected).epsilon(1e-10));
    // deep truncation approaches |W| e^{|W|} = 2 e^2
    CHECK(lp_integrate(count, spec).value ==
          doctest::Approx(2.0 * std::exp(2.0)).epsilon(1e-3));
  }
}

TEST_CASE("certified tails") {
  SetFunction bounded =
      SetFunction([](const Configuration&) { return 0.3; }, GrowthBound{0.3, 1.0});
  LPIntegralSpec spec{unit_window, 1.0, 6, QuadratureMethod{8}, true};
  CHECK_NOTHROW(lp_integrate(bounded, spec));

  SetFunction unbounded([](const Configuration&) { return 0.3; });
  CHECK_THROWS_AS(lp_integrate(unbounded, spec), TruncationUnsound);
  spec.require_certified_tail = false;
  CHECK_FALSE(lp_integrate(unbounded, spec).tail_bound.has_value());

  // tail formula decreases in the truncation order
  double prev = lp_tail_bound(GrowthBound{1.0, 2.0}, 1.0, 1.0, 2);
  for (int N = 3; N <= 10; ++N) {
    double cur = lp_tail_bound(GrowthBound{1.0, 2.0}, 1.0, 1.0, N);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("quadrature agrees with monte carlo within 3 SE") {
  PointFunction f = [](const Point& x) { return 0.6 * std::exp(-x[0]); };
  SetFunction G = coherent_state(f, 0.6);
  LPIntegralSpec quad{unit_window, 1.0, 8, QuadratureMethod{16}, false};
  LPIntegralSpec mc{unit_window, 1.0, 8, MonteCarloMethod{40000, 33}, false};
  LPResult rq = lp_integrate(G, quad);
  LPResult rm = lp_integrate(G, mc);
  REQUIRE(rm.std_error.has_value());
  CHECK(std::abs(rq.value - rm.value) <= 3.0 * *rm.std_error);
}

TEST_CASE("product integrands factorize through the multiset rule") {
  // sum over node multisets with multiplicity weights must reproduce
  // sum_n (z q)^n / n!, q the one-dimensional quadrature of f; exact for
  // constant f, accurate to the diagonal separation scale otherwise
  const int p = 9;
  const double z = 1.3;
  QuadratureRule rule = gauss_legendre_on(0.0, 1.0, p);
  auto factorized = [&](const PointFunction& f, int N) {
    double q = 0.0;
    for (int i = 0; i < p; ++i) q += rule.weights[i] * f(Point{rule.nodes[i]});
    double expected = 0.0, term = 1.0;
    for (int n = 0; n <= N; ++n) {
      expected += term;
      term *= z * q / (n + 1);
    }
    return expected;
  };
  LPIntegralSpec spec{unit_window, z, 9, QuadratureMethod{p}, false};

  PointFunction constant = [](const Point&) { return 0.7; };
  CHECK(lp_integrate(coherent_state(constant), spec).value ==
        doctest::Approx(factorized(constant, spec.truncation)).epsilon(1e-13));

  PointFunction smooth = [](const Point& x) { return 0.4 + 0.3 * std::sin(2.0 * x[0]); };
  CHECK(lp_integrate(coherent_state(smooth), spec).value ==
        doctest::Approx(factorized(smooth, spec.truncation)).epsilon(1e-8));
}

TEST_CASE("truncation error decreases monotonically for coherent states") {
  const double closed = std::exp(0.8);
  double prev_err = 1e9;
  for (int N = 1; N <= 9; ++N) {
    LPIntegralSpec spec{unit_window, 1.0, N, QuadratureMethod{12}, false};
    double err = std::abs(lp_integrate(coherent_state(0.8), spec).value - closed);
    CHECK(err <= prev_err + 1e-12);
    prev_err = err;
  }
}

TEST_CASE("lp_integrate is linear with shared grids and seeds") {
  SetFunction G1 = coherent_state(0.4);
  SetFunction G2([](const Configuration& eta) {
    double s = 0.0;
    for (const Point& x : eta) s += std::sin(x[0]);
    return std::cos(s);
  });
  const double a = 1.7, b = -0.6;
  SetFunction combo([&](const Configuration& eta) { return a * G1(eta) + b * G2(eta); });
  for (LPMethod method : {LPMethod{QuadratureMethod{10}}, LPMethod{MonteCarloMethod{5000, 7}}}) {
    LPIntegralSpec spec{unit_window, 1.0, 6, method, false};
    double lhs = lp_integrate(combo, spec).value;
    double rhs = a * lp_integrate(G1, spec).value + b * lp_integrate(G2, spec).value;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("quadrature path rejects unsupported setups") {
  LPIntegralSpec spec{Window({0.0, 0.0}, {1.0, 1.0}), 1.0, 4, QuadratureMethod{8}, false};
  CHECK_THROWS_AS(lp_integrate(empty_indicator(), spec), DomainError);
  LPIntegralSpec deep{unit_window, 1.0, 13, QuadratureMethod{8}, false};
  CHECK_THROWS_AS(lp_integrate(empty_indicator(), deep), DomainError);
  // d >= 2 works through Monte Carlo
  LPIntegralSpec mc{Window({0.0, 0.0}, {1.0, 1.0}), 1.0, 5, MonteCarloMethod{2000, 1}, false};
  CHECK(lp_integrate(coherent_state(0.0), mc).value == doctest::Approx(1.0));
}

TEST_CASE("minlos identity") {
  LPIntegralSpec spec{unit_window, 1.0, 10, QuadratureMethod{6}, false};

  SUBCASE("zero integrand") {
    auto H = [](const Configuration&, const Configuration&, const Configuration&) {
      return 0.0;
    };
    MinlosResult res = minlos_check(H, spec);
    CHECK(res.lhs == 0.0);
    CHECK(res.rhs == 0.0);
  }
  SUBCASE("separable integrand has the binomial closed form") {
    const double a = 0.4, b = 0.3;
    auto H = [a, b](const Configuration& xi, const Configuration& eta, const Configuration&) {
      return std::pow(a, static_cast<double>(xi.size())) *
             std::pow(b, static_cast<double>(eta.size()));
    };
    MinlosResult res = minlos_check(H, spec);
    const double closed = exp_partial((a + b) * unit_window.volume(), spec.truncation);
    CHECK(res.lhs == doctest::Approx(closed).epsilon(1e-5));
    CHECK(res.rhs == doctest::Approx(closed).epsilon(1e-5));
  }
  SUBCASE("smooth non-separable integrand balances within combined tails") {
    auto H = [](const Configuration& xi, const Configuration& eta, const Configuration& zeta) {
      double p = 1.0;
      for (const Point& x : xi) p *= 0.5 * std::cos(x[0]);
      for (const Point& x : eta) p *= 0.4 * std::sin(x[0] + 0.3);
      double s = 0.0;
      for (const Point& x : zeta) s += x[0];
      return p * (1.0 + 0.2 * std::cos(s));
    };
    MinlosResult res = minlos_check(H, spec);
    const double combined_tail =
        2.0 * lp_tail_bound(GrowthBound{1.2, 0.9}, spec.z, 1.0, spec.truncation);
    CHECK(std::abs(res.lhs - res.rhs) <= combined_tail + 1e-8);
  }
}

TEST_CASE("positive-definiteness quadratic forms") {
  LPIntegralSpec spec{unit_window, 1.0, 6, QuadratureMethod{10}, false};

  // probes supported on at most two points inside the window
  auto probe = [](std::uint64_t seed) {
    CounterRng rng(seed);
    const double a0 = rng.uniform(-1.0, 1.0);
    const double a1 = rng.uniform(-1.0, 1.0);
    const double a2 = rng.uniform(-1.0, 1.0);
    const double ph = rng.uniform(0.0, 6.28);
    return SetFunction([a0, a1, a2, ph](const Configuration& eta) {
             if (eta.is_empty()) return a0;
             double s = 0.0;
             for (const Point& x : eta) s += x[0];
             return (eta.size() == 1 ? a1 : a2) * std::cos(s + ph);
           })
        .with_support(2);
  };
  std::vector<SetFunction> probes;
  for (std::uint64_t i = 0; i < 8; ++i) probes.push_back(probe(400 + i));

  SUBCASE("Poisson correlation functions are positive definite") {
    for (double c : {0.5, 1.0, 2.0}) {
      for (double v : posdef_check(coherent_state(c), probes, spec)) CHECK(v >= -1e-8);
    }
  }
  SUBCASE("Lenard-positive direction built from a nonnegative cylinder square") {
    // F(gamma) = (sum psi - c)^2 >= 0; K^-1 F = psi1 x psi1 - 2c psi1 + c^2 1*
    PointFunction psi = [](const Point& x) { return 0.7 + 0.3 * std::sin(3.0 * x[0]); };
    SetFunction psi1 = SetFunction([psi](const Configuration& eta) {
                         return eta.size() == 1 ? psi(eta[0]) : 0.0;
                       }).with_support(1);
    const double c = 0.6;
    SetFunction quad = star_convolution(psi1, psi1);
    SetFunction direction = SetFunction([quad, psi1, c](const Configuration& eta) {
                              return quad(eta) - 2.0 * c * psi1(eta) +
                                     c * c * (eta.is_empty() ? 1.0 : 0.0);
                            }).with_support(2);
    SetFunction k = coherent_state(1.0);
    SetFunction weighted = SetFunction([direction, k](const Configuration& eta) {
                             return direction(eta) * k(eta);
                           }).with_support(2);
    CHECK(lp_integrate(weighted, spec).value >= -1e-8);
  }
  SUBCASE("a non-correlation function fails some probe") {
    SetFunction fake([](const Configuration& eta) {
      if (eta.is_empty()) return 1.0;
      return eta.size() == 1 ? -1.0 : 0.0;
    });
    double min_value = 1e9;
    for (double v : posdef_check(fake, probes, spec)) min_value = std::min(min_value, v);
    CHECK(min_value < 0.0);
  }
}

TEST_CASE("union separation resolves collisions") {
  Configuration a = Configuration(std::vector<Point>{Point{0.5}, Point{1.0}});
  Configuration b = Configuration(std::vector<Point>{Point{0.5}});
  Configuration u = union_with_separation(a, b);
  CHECK(u.size() == 3);
  // the nudged copy stays within a few ulps
  bool close = false;
  for (const Point& x : u) close = close || (x[0] != 0.5 && std::abs(x[0] - 0.5) < 1e-10);
  CHECK(close);
}
