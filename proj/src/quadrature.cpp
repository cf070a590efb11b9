#include "dimlab/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "dimlab/errors.hpp"

namespace dimlab {

QuadratureRule gauss_legendre(int p) {
  if (p < 1 || p > 128) throw DomainError("gauss_legendre: node count out of range");
  QuadratureRule rule;
  rule.nodes.resize(p);
  rule.weights.resize(p);
  // Newton iteration on P_p, symmetric pairs filled from the upper half.
  const int half = (p + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (p + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      if (p == 1) p1 = x;  // recurrence below starts at degree 2
      for (int k = 2; k <= p; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double pl = (p == 1) ? x : p1;
      double plm1 = (p == 1) ? 1.0 : p0;
      dp = p * (x * pl - plm1) / (x * x - 1.0);
      double dx = pl / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[p - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[i] = w;
    rule.weights[p - 1 - i] = w;
  }
  if (p % 2 == 1) rule.nodes[p / 2] = 0.0;
  return rule;
}

QuadratureRule gauss_legendre_on(double a, double b, int p) {
  QuadratureRule rule = gauss_legendre(p);
  const double mid = 0.5 * (a + b), halfw = 0.5 * (b - a);
  for (int i = 0; i < p; ++i) {
    rule.nodes[i] = mid + halfw * rule.nodes[i];
    rule.weights[i] *= halfw;
  }
  return rule;
}

double integrate_window(const std::function<double(const Point&)>& f, const Window& w,
                        int points_per_dim) {
  const std::size_t d = w.dim();
  if (d > 3) throw DomainError("integrate_window: tensor quadrature limited to d <= 3");
  std::vector<QuadratureRule> rules;
  rules.reserve(d);
  for (std::size_t i = 0; i < d; ++i)
    rules.push_back(gauss_legendre_on(w.lower()[i], w.upper()[i], points_per_dim));

  std::vector<double> terms;
  std::vector<std::size_t> idx(d, 0);
  std::vector<double> coords(d);
  while (true) {
    double weight = 1.0;
    for (std::size_t i = 0; i < d; ++i) {
      coords[i] = rules[i].nodes[idx[i]];
      weight *= rules[i].weights[idx[i]];
    }
    terms.push_back(weight * f(Point(coords)));
    std::size_t i = 0;
    for (; i < d; ++i) {
      if (++idx[i] < rules[i].nodes.size()) break;
      idx[i] = 0;
    }
    if (i == d) break;
  }
  return pairwise_sum(terms);
}

double pairwise_sum(std::span<const double> xs) {
  if (xs.size() <= 8) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

}  // namespace dimlab
