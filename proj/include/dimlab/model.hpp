#pragma once

#include <cstdint>
#include <vector>

#include "dimlab/errors.hpp"
#include "dimlab/set_function.hpp"

namespace dimlab {

// Death rate m (per point), immigration intensity sigma (per unit volume),
// dimension d.  sigma/m is the invariant intensity.
struct ModelParams {
  double m = 1.0;
  double sigma = 0.0;
  int d = 1;

  ModelParams() = default;
  ModelParams(double m_, double sigma_, int d_) : m(m_), sigma(sigma_), d(d_) {
    if (!(m > 0.0)) throw DomainError("ModelParams: m must be > 0");
    if (sigma < 0.0) throw DomainError("ModelParams: sigma must be >= 0");
    if (d < 1) throw DomainError("ModelParams: d must be >= 1");
  }

  double invariant_intensity() const { return sigma / m; }
};

// Geometric weight C of the dual norm pair plus a probe family over which
// empirical sups are taken.  The true norm sup_eta C^{-|eta|} |f(eta)| is not
// computable on a continuum; empirical_norm is a lower bound of it, taken
// over the probes and all of their subsets (subset closure keeps the
// contraction estimates exact on the probe family).
struct NormContext {
  double C = 1.0;
  int n_probe = 5;
  std::vector<Configuration> probes;

  static NormContext sampled(const Window& window, double C, int n_probe, int configs_per_size,
                             std::uint64_t seed);

  double empirical_norm(const SetFunction& f) const;
};

}  // namespace dimlab
