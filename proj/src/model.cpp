#include "dimlab/model.hpp"

#include <cmath>

#include "dimlab/rng.hpp"
#include "dimlab/subset_algebra.hpp"

namespace dimlab {

NormContext NormContext::sampled(const Window& window, double C, int n_probe,
                                 int configs_per_size, std::uint64_t seed) {
  if (!(C > 0.0)) throw DomainError("NormContext: C must be > 0");
  NormContext ctx;
  ctx.C = C;
  ctx.n_probe = n_probe;
  ctx.probes.push_back(Configuration::empty());
  for (int n = 1; n <= n_probe; ++n) {
    for (int c = 0; c < configs_per_size; ++c) {
      CounterRng rng(seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(c));
      std::vector<Point> pts;
      pts.reserve(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) pts.push_back(rng.uniform_point(window));
      ctx.probes.emplace_back(std::move(pts));
    }
  }
  return ctx;
}

double NormContext::empirical_norm(const SetFunction& f) const {
  double sup = 0.0;
  for (const Configuration& eta : probes) {
    const std::uint64_t total = std::uint64_t{1} << eta.size();
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      Configuration xi = subconfiguration(eta, static_cast<std::uint32_t>(mask));
      double v = std::abs(f(xi)) * std::pow(C, -static_cast<double>(xi.size()));
      if (v > sup) sup = v;
    }
  }
  return sup;
}


}  // namespace dimlab
