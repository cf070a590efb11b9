#include "dimlab/lp_integral.hpp"

#include <cmath>

#include "dimlab/rng.hpp"
#include "dimlab/subset_algebra.hpp"

namespace dimlab {

namespace {

// Relative separation applied to coincident grid nodes; far below any
// Gauss-Legendre node gap, far above double rounding.
constexpr double kSeparationScale = 1e-9;

struct LevelVisit {
  // One n-point quadrature atom: configuration plus z^n * weights / mult!.
  const Configuration& config;
  double coefficient;
};

// Enumerates the level-n quadrature atoms of the 1-d rule: non-decreasing
// node index tuples, weight product divided by the multiplicity factorials
// (orderings of equal indices), z^n folded in.  Repeated nodes are offset by
// multiples of delta so every atom is a valid configuration.
class LevelEnumerator {
 public:
  LevelEnumerator(const QuadratureRule& rule, double z, double delta)
      : rule_(rule), z_(z), delta_(delta) {}

  template <typename Visitor>
  void enumerate(int n, Visitor&& visit) {
    n_ = n;
    points_.assign(static_cast<std::size_t>(n), Point{0.0});
    visit_ = [&visit](const LevelVisit& v) { visit(v); };
    recurse(0, 0, 0, 1.0);
  }

 private:
  void recurse(int pos, std::size_t start, int run, double coeff) {
    if (pos == n_) {
      Configuration eta = Configuration::from_sorted_unchecked(points_);
      visit_({eta, coeff});
      return;
    }
    for (std::size_t j = start; j < rule_.nodes.size(); ++j) {
      const int new_run = (pos > 0 && j == start && run > 0) ? run + 1 : 1;
      double c = coeff * z_ * rule_.weights[j] / new_run;
      points_[static_cast<std::size_t>(pos)] =
          Point{rule_.nodes[j] + (new_run - 1) * delta_};
      recurse(pos + 1, j, new_run, c);
    }
  }

  const QuadratureRule& rule_;
  double z_;
  double delta_;
  int n_ = 0;
  std::vector<Point> points_;
  std::function<void(const LevelVisit&)> visit_;
};

void validate_spec(const LPIntegralSpec& spec) {
  if (spec.truncation < 0) throw DomainError("lp_integrate: truncation must be >= 0");
  if (!(spec.z > 0.0)) throw DomainError("lp_integrate: activity z must be > 0");
  if (std::holds_alternative<QuadratureMethod>(spec.method)) {
    if (spec.window.dim() != 1)
      throw DomainError("lp_integrate: quadrature requires d = 1; use MonteCarloMethod");
    if (spec.truncation > 12)
      throw DomainError("lp_integrate: truncation > 12 not supported for quadrature");
  }
}

// Declared support caps truncate the level sum exactly; the dropped tail is
// then identically zero.
int effective_truncation(const SetFunction& G, const LPIntegralSpec& spec) {
  if (G.support_cap() && *G.support_cap() < static_cast<std::size_t>(spec.truncation))
    return static_cast<int>(*G.support_cap());
  return spec.truncation;
}

std::optional<double> maybe_tail(const SetFunction& G, const LPIntegralSpec& spec) {
  if (G.support_cap() && *G.support_cap() <= static_cast<std::size_t>(spec.truncation))
    return 0.0;
  if (G.bound()) return lp_tail_bound(*G.bound(), spec.z, spec.window.volume(), spec.truncation);
  if (spec.require_certified_tail)
    throw TruncationUnsound("lp_integrate: integrand has no declared growth bound");
  return std::nullopt;
}

LPResult integrate_quadrature(const SetFunction& G, const LPIntegralSpec& spec,
                              const QuadratureMethod& method) {
  const Window& w = spec.window;
  QuadratureRule rule = gauss_legendre_on(w.lower()[0], w.upper()[0], method.points_per_dim);
  const double delta = kSeparationScale * w.side(0);

  LPResult result;
  result.value = G(Configuration::empty());
  LevelEnumerator levels(rule, spec.z, delta);
  for (int n = 1; n <= effective_truncation(G, spec); ++n) {
    PairwiseAccumulator acc;
    levels.enumerate(n, [&](const LevelVisit& v) { acc.add(v.coefficient * G(v.config)); });
    result.value += acc.total();
  }
  result.tail_bound = maybe_tail(G, spec);
  return result;
}

Configuration draw_level_config(const Window& w, int n, std::uint64_t seed, int level,
                                long sample) {
  // Collisions of continuum draws have probability zero; re-key on the
  // (never observed) exception path anyway.
  for (std::uint64_t attempt = 0;; ++attempt) {
    CounterRng rng(seed, static_cast<std::uint64_t>(level) * 0x10001ULL + attempt,
                   static_cast<std::uint64_t>(sample));
    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pts.push_back(rng.uniform_point(w));
    try {
      return Configuration(std::move(pts));
    } catch (const DuplicatePoint&) {
      continue;
    }
  }
}

LPResult integrate_monte_carlo(const SetFunction& G, const LPIntegralSpec& spec,
                               const MonteCarloMethod& method) {
  if (method.samples < 2) throw DomainError("lp_integrate: need at least 2 MC samples");
  LPResult result;
  result.value = G(Configuration::empty());
  double variance = 0.0;
  double log_volume = std::log(spec.window.volume());
  for (int n = 1; n <= effective_truncation(G, spec); ++n) {
    // (z^n / n!) * |window|^n, computed in log space.
    const double coeff =
        std::exp(n * std::log(spec.z) + n * log_volume - std::lgamma(n + 1.0));
    PairwiseAccumulator sum, sum_sq;
    for (long s = 0; s < method.samples; ++s) {
      double g = G(draw_level_config(spec.window, n, method.seed, n, s));
      sum.add(g);
      sum_sq.add(g * g);
    }
    const double S = static_cast<double>(method.samples);
    const double mean = sum.total() / S;
    const double var = std::max(0.0, (sum_sq.total() / S - mean * mean)) / (S - 1.0) * S;
    result.value += coeff * mean;
    variance += coeff * coeff * var / S;
  }
  result.std_error = std::sqrt(variance);
  result.tail_bound = maybe_tail(G, spec);
  return result;
}

}  // namespace

LPResult lp_integrate(const SetFunction& G, const LPIntegralSpec& spec) {
  if (!G.valid()) throw DomainError("lp_integrate: empty integrand");
  validate_spec(spec);
  if (const auto* q = std::get_if<QuadratureMethod>(&spec.method))
    return integrate_quadrature(G, spec, *q);
  return integrate_monte_carlo(G, spec, std::get<MonteCarloMethod>(spec.method));
}

double lp_tail_bound(const GrowthBound& bound, double z, double volume, int truncation) {
  const double a = bound.growth_constant * z * volume;
  if (a <= 0.0) return 0.0;
  // sum_{n>N} a^n/n! <= a^{N+1}/(N+1)! * e^a
  return bound.norm_estimate *
         std::exp((truncation + 1) * std::log(a) - std::lgamma(truncation + 2.0) + a);
}

MinlosResult minlos_check(const TripleIntegrand& H, const LPIntegralSpec& spec) {
  validate_spec(spec);
  MinlosResult out;

  SetFunction lhs_integrand([&H](const Configuration& eta) {
    if (eta.size() > kMaxSubsetPoints) throw CapExceeded("minlos_check: |eta| exceeds cap");
    const std::uint64_t total = std::uint64_t{1} << eta.size();
    const std::uint32_t full = static_cast<std::uint32_t>(total - 1);
    double sum = 0.0;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      auto m = static_cast<std::uint32_t>(mask);
      sum += H(subconfiguration(eta, m), subconfiguration(eta, full & ~m), eta);
    }
    return sum;
  });
  out.lhs = lp_integrate(lhs_integrand, spec).value;

  // Double integral truncated at total degree |xi| + |eta| <= N, matching the
  // single-integral truncation level by level.
  const int N = spec.truncation;
  if (const auto* q = std::get_if<QuadratureMethod>(&spec.method)) {
    const Window& w = spec.window;
    QuadratureRule rule = gauss_legendre_on(w.lower()[0], w.upper()[0], q->points_per_dim);
    const double delta = kSeparationScale * w.side(0);
    LevelEnumerator outer(rule, spec.z, delta), inner(rule, spec.z, delta);
    double total = 0.0;
    for (int j = 0; j <= N; ++j) {
      PairwiseAccumulator acc;
      for (int k = 0; j + k <= N; ++k) {
        auto add_pair = [&](const Configuration& xi, double cxi) {
          auto inner_visit = [&](const LevelVisit& v) {
            acc.add(cxi * v.coefficient * H(xi, v.config, union_with_separation(xi, v.config)));
          };
          if (k == 0) {
            inner_visit({Configuration::empty(), 1.0});
          } else {
            inner.enumerate(k, inner_visit);
          }
        };
        if (j == 0) {
          add_pair(Configuration::empty(), 1.0);
        } else {
          outer.enumerate(j, [&](const LevelVisit& v) { add_pair(v.config, v.coefficient); });
        }
      }
      total += acc.total();
    }
    out.rhs = total;
  } else {
    const auto& mc = std::get<MonteCarloMethod>(spec.method);
    double log_volume = std::log(spec.window.volume());
    double total = 0.0;
    for (int j = 0; j <= N; ++j) {
      for (int k = 0; j + k <= N; ++k) {
        const double coeff = std::exp((j + k) * std::log(spec.z) + (j + k) * log_volume -
                                      std::lgamma(j + 1.0) - std::lgamma(k + 1.0));
        PairwiseAccumulator acc;
        for (long s = 0; s < mc.samples; ++s) {
          Configuration xi = draw_level_config(spec.window, j, mc.seed, 100 + j, s);
          Configuration eta = draw_level_config(spec.window, k, mc.seed, 200 + k, s);
          acc.add(H(xi, eta, union_with_separation(xi, eta)));
        }
        total += coeff * acc.total() / static_cast<double>(mc.samples);
      }
    }
    out.rhs = total;
  }
  return out;
}

std::vector<double> posdef_check(const SetFunction& k, const std::vector<SetFunction>& probes,
                                 const LPIntegralSpec& spec) {
  std::vector<double> values;
  values.reserve(probes.size());
  for (const SetFunction& G : probes) {
    SetFunction quad_form = star_convolution(G, G);
    SetFunction integrand(
        [quad_form, k](const Configuration& eta) { return quad_form(eta) * k(eta); },
        std::nullopt, quad_form.support_cap());
    values.push_back(lp_integrate(integrand, spec).value);
  }
  return values;
}

Configuration union_with_separation(const Configuration& a, const Configuration& b) {
  try {
    return a.union_with(b);  // single merge when nothing collides
  } catch (const DuplicatePoint&) {
  }
  Configuration out = a;
  for (const Point& x : b) {
    Point y = x;
    bool inserted = false;
    for (int attempt = 0; attempt < 64 && !inserted; ++attempt) {
      try {
        out = out.with_point(y);
        inserted = true;
      } catch (const DuplicatePoint&) {
        y = y.shifted(0, (std::abs(y[0]) + 1.0) * 1e-13 * (attempt + 1));
      }
    }
    if (!inserted) throw DuplicatePoint("union_with_separation: could not separate point");
  }
  return out;
}

}  // namespace dimlab
