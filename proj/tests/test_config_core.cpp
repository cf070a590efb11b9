#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "dimlab/rng.hpp"
#include "dimlab/subset_algebra.hpp"

using namespace dimlab;

namespace {

Configuration conf(std::initializer_list<double> xs) {
  std::vector<Point> pts;
  for (double x : xs) pts.push_back(Point{x});
  return Configuration(std::move(pts));
}

Configuration random_conf(int n, std::uint64_t seed) {
  CounterRng rng(seed);
  std::vector<Point> pts;
  for (int i = 0; i < n; ++i) pts.push_back(Point{rng.uniform(-2.0, 2.0)});
  return Configuration(std::move(pts));
}

// Smooth deterministic pseudo-random set function; bounded by ~1.
SetFunction test_function(std::uint64_t seed) {
  const double p1 = 6.28 * (static_cast<double>(mix64(seed) >> 11) * 0x1.0p-53);
  const double p2 = 6.28 * (static_cast<double>(mix64(seed + 1) >> 11) * 0x1.0p-53);
  return SetFunction([p1, p2](const Configuration& eta) {
    double s1 = 0.0, s2 = 0.0;
    for (const Point& x : eta) {
      s1 += std::sin(1.1 * x[0] + p1);
      s2 += std::cos(0.7 * x[0]);
    }
    return 0.3 + 0.4 * std::cos(s1) + 0.3 * std::sin(s2 + p2);
  });
}

// Independent oracle: recursive subset enumeration (no bitmasks).
void naive_subsets(const std::vector<Point>& pts, std::size_t i, std::vector<Point>& in,
                   std::vector<Point>& out,
                   const std::function<void(const Configuration&, const Configuration&)>& f) {
  if (i == pts.size()) {
    f(Configuration(in), Configuration(out));
    return;
  }
  in.push_back(pts[i]);
  naive_subsets(pts, i + 1, in, out, f);
  in.pop_back();
  out.push_back(pts[i]);
  naive_subsets(pts, i + 1, in, out, f);
  out.pop_back();
}

double naive_k_transform(const SetFunction& G, const Configuration& gamma) {
  double sum = 0.0;
  std::vector<Point> in, out;
  naive_subsets(gamma.points(), 0, in, out,
                [&](const Configuration& xi, const Configuration&) { sum += G(xi); });
  return sum;
}

double naive_ast(const SetFunction& G1, const SetFunction& G2, const Configuration& eta) {
  double sum = 0.0;
  std::vector<Point> in, out;
  naive_subsets(eta.points(), 0, in, out,
                [&](const Configuration& xi, const Configuration& rest) {
                  sum += G1(xi) * G2(rest);
                });
  return sum;
}

// Independent oracle for the triple-partition product: three nested loops
// over labels, no base-3 masks.
double naive_star(const SetFunction& G1, const SetFunction& G2, const Configuration& eta) {
  const std::size_t n = eta.size();
  std::vector<int> label(n, 0);
  double sum = 0.0;
  for (;;) {
    std::vector<Point> a, b;
    for (std::size_t i = 0; i < n; ++i) {
      if (label[i] <= 1) a.push_back(eta[i]);
      if (label[i] >= 1) b.push_back(eta[i]);
    }
    sum += G1(Configuration(a)) * G2(Configuration(b));
    std::size_t i = 0;
    for (; i < n; ++i) {
      if (++label[i] <= 2) break;
      label[i] = 0;
    }
    if (i == n) break;
  }
  return sum;
}

}  // namespace

TEST_CASE("configuration construction") {
  CHECK(Configuration::empty().size() == 0);
  CHECK(conf({1.0, 2.0}).size() == 2);
  CHECK_THROWS_AS(conf({1.0, 1.0}), DuplicatePoint);
  // canonical order
  Configuration eta = conf({3.0, -1.0, 2.0});
  CHECK(eta[0][0] == -1.0);
  CHECK(eta[2][0] == 3.0);
  CHECK_THROWS_AS(eta.with_point(Point{2.0}), DuplicatePoint);
  CHECK(eta.with_point(Point{0.5}).size() == 4);
  CHECK_THROWS_AS(conf({1.0}).union_with(conf({1.0})), DuplicatePoint);
}

TEST_CASE("subset enumeration") {
  SUBCASE("empty lattice") {
    auto range = subsets(Configuration::empty());
    int count = 0;
    for (auto it = range.begin(); it != range.end(); ++it) {
      auto [xi, rest] = *it;
      CHECK(xi.is_empty());
      CHECK(rest.is_empty());
      ++count;
    }
    CHECK(count == 1);
  }
  SUBCASE("singleton") {
    Configuration eta = conf({1.5});
    std::vector<std::pair<std::size_t, std::size_t>> sizes;
    for (auto it = subsets(eta).begin(); it != subsets(eta).end(); ++it)
      sizes.emplace_back((*it).subset.size(), (*it).complement.size());
    REQUIRE(sizes.size() == 2);
    CHECK(sizes[0] == std::pair<std::size_t, std::size_t>{0, 1});
    CHECK(sizes[1] == std::pair<std::size_t, std::size_t>{1, 0});
  }
  SUBCASE("three points give 8 partition pairs") {
    Configuration eta = conf({0.0, 1.0, 2.0});
    int count = 0;
    for (auto it = subsets(eta).begin(); it != subsets(eta).end(); ++it) {
      auto [xi, rest] = *it;
      CHECK(xi.union_with(rest) == eta);  // disjoint by construction or union throws
      ++count;
    }
    CHECK(count == 8);
  }
  SUBCASE("lattice partition count up to 8 points") {
    for (int n = 0; n <= 8; ++n) {
      Configuration eta = random_conf(n, 100 + static_cast<std::uint64_t>(n));
      std::size_t count = 0;
      for (auto it = subsets(eta).begin(); it != subsets(eta).end(); ++it) ++count;
      CHECK(count == (std::size_t{1} << n));
    }
  }
  SUBCASE("cap enforced") {
    std::vector<Point> pts;
    for (int i = 0; i < 23; ++i) pts.push_back(Point{static_cast<double>(i)});
    Configuration big(pts);
    CHECK_THROWS_AS(subsets(big), CapExceeded);
    CHECK_THROWS_AS(k_transform(empty_indicator(), big), CapExceeded);
  }
}

TEST_CASE("k-transform") {
  SUBCASE("unit of the subset sum") {
    for (int n : {0, 2, 4})
      CHECK(k_transform(empty_indicator(), random_conf(n, 7)) == doctest::Approx(1.0));
  }
  SUBCASE("coherent states map to products of 1+f") {
    PointFunction f = [](const Point& x) { return 0.4 * std::sin(x[0]); };
    SetFunction ef = coherent_state(f);
    Configuration gamma = random_conf(4, 8);
    double expected = 1.0;
    for (const Point& x : gamma) expected *= 1.0 + f(x);
    CHECK(k_transform(ef, gamma) == doctest::Approx(expected).epsilon(1e-12));
  }
  SUBCASE("matches direct 8-term sum on three points") {
    SetFunction G = test_function(3);
    Configuration gamma = random_conf(3, 9);
    CHECK(k_transform(G, gamma) == doctest::Approx(naive_k_transform(G, gamma)).epsilon(1e-13));
  }
}

TEST_CASE("k-inverse") {
  SUBCASE("constant one inverts to the empty indicator") {
    SetFunction one([](const Configuration&) { return 1.0; });
    CHECK(k_inverse(one, Configuration::empty()) == doctest::Approx(1.0));
    for (int n : {1, 2, 5})
      CHECK(k_inverse(one, random_conf(n, 11)) == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("roundtrip both ways up to six points") {
    SetFunction G = test_function(4);
    for (int n = 0; n <= 6; ++n) {
      Configuration eta = random_conf(n, 20 + static_cast<std::uint64_t>(n));
      SetFunction KG([&G](const Configuration& gamma) { return k_transform(G, gamma); });
      CHECK(k_inverse(KG, eta) == doctest::Approx(G(eta)).epsilon(1e-12));
      SetFunction KinvG([&G](const Configuration& gamma) { return k_inverse(G, gamma); });
      CHECK(k_transform(KinvG, eta) == doctest::Approx(G(eta)).epsilon(1e-12));
    }
  }
  SUBCASE("inverse of the product form is the coherent state") {
    PointFunction f = [](const Point& x) { return 0.3 * std::cos(x[0]); };
    SetFunction prod([f](const Configuration& eta) {
      double p = 1.0;
      for (const Point& x : eta) p *= 1.0 + f(x);
      return p;
    });
    SetFunction ef = coherent_state(f);
    for (int n : {0, 1, 3, 5}) {
      Configuration eta = random_conf(n, 31 + static_cast<std::uint64_t>(n));
      CHECK(k_inverse(prod, eta) == doctest::Approx(ef(eta)).epsilon(1e-12));
    }
  }
}

TEST_CASE("triple-partition convolution") {
  PointFunction f = [](const Point& x) { return 0.5 * std::sin(1.3 * x[0]); };
  PointFunction g = [](const Point& x) { return 0.4 * std::cos(0.9 * x[0]); };

  SUBCASE("coherent homomorphism f+g+fg") {
    SetFunction lhs = star_convolution(coherent_state(f), coherent_state(g));
    SetFunction rhs =
        coherent_state([f, g](const Point& x) { return f(x) + g(x) + f(x) * g(x); });
    for (int n = 0; n <= 5; ++n) {
      Configuration eta = random_conf(n, 40 + static_cast<std::uint64_t>(n));
      CHECK(lhs(eta) == doctest::Approx(rhs(eta)).epsilon(1e-12));
    }
  }
  SUBCASE("empty indicator is the unit") {
    SetFunction G = test_function(5);
    SetFunction conv = star_convolution(G, empty_indicator());
    for (int n : {0, 1, 3}) {
      Configuration eta = random_conf(n, 50 + static_cast<std::uint64_t>(n));
      CHECK(conv(eta) == doctest::Approx(G(eta)).epsilon(1e-12));
    }
  }
  SUBCASE("matches the direct 9-term sum on two points") {
    SetFunction G1 = test_function(6), G2 = test_function(7);
    Configuration eta = random_conf(2, 55);
    CHECK(star_convolution(G1, G2)(eta) ==
          doctest::Approx(naive_star(G1, G2, eta)).epsilon(1e-13));
  }
  SUBCASE("cap enforced") {
    std::vector<Point> pts;
    for (int i = 0; i < 15; ++i) pts.push_back(Point{static_cast<double>(i)});
    CHECK_THROWS_AS(star_convolution(test_function(1), test_function(2))(Configuration(pts)),
                    CapExceeded);
  }
}

TEST_CASE("subset-partition convolution") {
  PointFunction f = [](const Point& x) { return 0.5 * std::sin(x[0]); };
  PointFunction g = [](const Point& x) { return 0.3 * std::cos(x[0]); };

  SUBCASE("coherent homomorphism f+g") {
    SetFunction lhs = ast_convolution(coherent_state(f), coherent_state(g));
    SetFunction rhs = coherent_state([f, g](const Point& x) { return f(x) + g(x); });
    for (int n = 0; n <= 5; ++n) {
      Configuration eta = random_conf(n, 60 + static_cast<std::uint64_t>(n));
      CHECK(lhs(eta) == doctest::Approx(rhs(eta)).epsilon(1e-12));
    }
  }
  SUBCASE("unit element") {
    SetFunction G = test_function(8);
    SetFunction conv = ast_convolution(G, empty_indicator());
    for (int n : {0, 2, 4}) {
      Configuration eta = random_conf(n, 70 + static_cast<std::uint64_t>(n));
      CHECK(conv(eta) == doctest::Approx(G(eta)).epsilon(1e-12));
    }
  }
  SUBCASE("coherent factors distribute over the convolution") {
    SetFunction G1 = test_function(9), G2 = test_function(10);
    SetFunction ef = coherent_state(f);
    SetFunction lhs([&](const Configuration& eta) {
      return ef(eta) * ast_convolution(G1, G2)(eta);
    });
    SetFunction rhs = ast_convolution(
        SetFunction([&](const Configuration& eta) { return ef(eta) * G1(eta); }),
        SetFunction([&](const Configuration& eta) { return ef(eta) * G2(eta); }));
    for (int n = 0; n <= 5; ++n) {
      Configuration eta = random_conf(n, 80 + static_cast<std::uint64_t>(n));
      CHECK(lhs(eta) == doctest::Approx(rhs(eta)).epsilon(1e-12));
    }
  }
  SUBCASE("matches naive recursion") {
    SetFunction G1 = test_function(11), G2 = test_function(12);
    Configuration eta = random_conf(4, 85);
    CHECK(ast_convolution(G1, G2)(eta) ==
          doctest::Approx(naive_ast(G1, G2, eta)).epsilon(1e-13));
  }
}

TEST_CASE("convolutions are commutative and associative") {
  SetFunction A = test_function(13), B = test_function(14), C = test_function(15);
  for (int n = 0; n <= 5; ++n) {
    Configuration eta = random_conf(n, 90 + static_cast<std::uint64_t>(n));
    CHECK(ast_convolution(A, B)(eta) ==
          doctest::Approx(ast_convolution(B, A)(eta)).epsilon(1e-12));
    CHECK(ast_convolution(ast_convolution(A, B), C)(eta) ==
          doctest::Approx(ast_convolution(A, ast_convolution(B, C))(eta)).epsilon(1e-12));
    if (n <= 4) {
      CHECK(star_convolution(A, B)(eta) ==
            doctest::Approx(star_convolution(B, A)(eta)).epsilon(1e-12));
      CHECK(star_convolution(star_convolution(A, B), C)(eta) ==
            doctest::Approx(star_convolution(A, star_convolution(B, C))(eta)).epsilon(1e-12));
    }
  }
}

TEST_CASE("coherent states") {
  CHECK(coherent_state(2.0)(conf({1.0, 4.0, 9.0})) == doctest::Approx(8.0));
  CHECK(coherent_state(0.0)(Configuration::empty()) == doctest::Approx(1.0));
  CHECK(coherent_state(0.0)(conf({1.0})) == doctest::Approx(0.0));
  SetFunction id_prod = coherent_state([](const Point& x) { return x[0]; });
  CHECK(id_prod(conf({2.0, 3.0})) == doctest::Approx(6.0));
}

TEST_CASE("ursell log/exp") {
  SUBCASE("Poisson states have first-order Ursell functions only") {
    // exp* of a singleton-supported function, cross-checked by brute force.
    const double c = 0.7;
    SetFunction u = ursell_log(coherent_state(c));
    CHECK(u(Configuration::empty()) == doctest::Approx(0.0));
    CHECK(u(conf({1.3})) == doctest::Approx(c).epsilon(1e-12));
    for (int n = 2; n <= 4; ++n)
      CHECK(u(random_conf(n, 200 + static_cast<std::uint64_t>(n))) ==
            doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("roundtrip on a random state") {
    SetFunction base = test_function(16);
    SetFunction k([base](const Configuration& eta) {
      return eta.is_empty() ? 1.0 : base(eta);
    });
    SetFunction back = ursell_exp(ursell_log(k));
    for (int n = 0; n <= 5; ++n) {
      Configuration eta = random_conf(n, 210 + static_cast<std::uint64_t>(n));
      CHECK(back(eta) == doctest::Approx(k(eta)).epsilon(1e-10));
    }
  }
  SUBCASE("zero ursell function gives the empty indicator plus vacuum") {
    SetFunction zero([](const Configuration&) { return 0.0; });
    SetFunction k = ursell_exp(zero);
    CHECK(k(Configuration::empty()) == doctest::Approx(1.0));
    CHECK(k(conf({1.0})) == doctest::Approx(0.0));
    CHECK(k(conf({1.0, 2.0})) == doctest::Approx(0.0));
  }
  SUBCASE("series definition agrees with the recursion") {
    // exp* u = sum_n u^{*n}/n!, *-powers built with the independent naive
    // convolution; terminates because u({}) = 0.
    SetFunction base = test_function(17);
    SetFunction u([base](const Configuration& eta) {
      return eta.is_empty() ? 0.0 : base(eta);
    });
    Configuration eta = random_conf(4, 230);
    std::vector<SetFunction> powers;
    powers.push_back(empty_indicator());  // u^{*0}
    double series = powers[0](eta), factorial = 1.0;
    for (int n = 1; n <= 4; ++n) {
      SetFunction prev = powers.back();
      powers.push_back(SetFunction([prev, u](const Configuration& xi) {
        return naive_ast(prev, u, xi);
      }));
      factorial *= n;
      series += powers.back()(eta) / factorial;
    }
    CHECK(ursell_exp(u)(eta) == doctest::Approx(series).epsilon(1e-10));
  }
  SUBCASE("preconditions enforced") {
    SetFunction not_normalized([](const Configuration&) { return 2.0; });
    CHECK_THROWS_AS(ursell_log(not_normalized)(conf({1.0})), PreconditionViolated);
    SetFunction not_zero([](const Configuration&) { return 1.0; });
    CHECK_THROWS_AS(ursell_exp(not_zero)(conf({1.0})), PreconditionViolated);
  }
}

TEST_CASE("growth bounds propagate and hold on samples") {
  SetFunction a = coherent_state(1.5);
  SetFunction b = coherent_state(0.5);
  SetFunction c = ast_convolution(a, b);
  REQUIRE(c.bound().has_value());
  for (int n = 0; n <= 5; ++n) {
    Configuration eta = random_conf(n, 300 + static_cast<std::uint64_t>(n));
    CHECK(std::abs(c(eta)) <= c.bound()->at(eta.size()) * (1.0 + 1e-12));
  }
}
