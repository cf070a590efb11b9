#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "dimlab/quadrature.hpp"
#include "dimlab/set_function.hpp"

namespace dimlab {

// Tensor Gauss-Legendre over node multisets (d = 1 only).  Coincident nodes
// of the n-fold grid are separated by a deterministic sub-resolution offset,
// so product integrands factorize exactly and the discrete integral obeys
// the same combinatorial identities as the continuum one.
struct QuadratureMethod {
  int points_per_dim = 16;
};

// Per-level i.i.d. uniform sampling, any d.  Draws are keyed by
// (seed, level, sample index): results do not depend on evaluation order.
struct MonteCarloMethod {
  long samples = 20000;
  std::uint64_t seed = 1;
};

using LPMethod = std::variant<QuadratureMethod, MonteCarloMethod>;

// Truncated Lebesgue-Poisson integral over configurations in a window:
//   sum_{n=0}^{N} (z^n / n!) \int_{window^n} G({x_1..x_n}) dx.
struct LPIntegralSpec {
  Window window;
  double z = 1.0;
  int truncation = 8;
  LPMethod method = QuadratureMethod{};
  bool require_certified_tail = false;
};

struct LPResult {
  double value = 0.0;
  // Certified bound on the dropped n > N mass, from the declared growth
  // bound of the integrand; absent when no bound was declared.
  std::optional<double> tail_bound;
  // Monte Carlo standard error; absent for quadrature.
  std::optional<double> std_error;
};

LPResult lp_integrate(const SetFunction& G, const LPIntegralSpec& spec);

// Both sides of the partition identity
//   \int sum_{xi subset eta} H(xi, eta\xi, eta) dl(eta)
//     = \int\int H(xi, eta, eta u xi) dl(xi) dl(eta),
// evaluated with the same grid/sample stream so the identity survives
// discretization.
using TripleIntegrand =
    std::function<double(const Configuration&, const Configuration&, const Configuration&)>;

struct MinlosResult {
  double lhs = 0.0;
  double rhs = 0.0;
};

MinlosResult minlos_check(const TripleIntegrand& H, const LPIntegralSpec& spec);

// For each probe G: \int (G * conj(G))(eta) k(eta) dl(eta) with * the
// triple-partition convolution.  Positive definiteness of k means every
// returned value is >= 0 (up to truncation and tolerance).
std::vector<double> posdef_check(const SetFunction& k, const std::vector<SetFunction>& probes,
                                 const LPIntegralSpec& spec);

// Union that resolves exact collisions by nudging the incoming point a few
// ulps; integration grids may hit probe points exactly.
Configuration union_with_separation(const Configuration& a, const Configuration& b);

// Tail of the LP exponential series: norm * sum_{n>N} (c z V)^n / n!.
double lp_tail_bound(const GrowthBound& bound, double z, double volume, int truncation);

}  // namespace dimlab
