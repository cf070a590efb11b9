#pragma once

#include <cstdint>
#include <vector>

#include "dimlab/configuration.hpp"
#include "dimlab/model.hpp"

namespace dimlab {

// Simulation restricted to a bounded window is exact, not an approximation:
// points neither move nor interact, so the dynamics inside the window has the
// same law as the projection of the whole-space process.
enum class SamplingScheme { ExactDecomposition, Gillespie };

struct InitialLaw {
  enum class Kind { Poisson, Fixed, Empty };
  Kind kind = Kind::Empty;
  double intensity = 0.0;        // Poisson
  Configuration fixed_config;    // Fixed

  static InitialLaw poisson(double intensity);
  static InitialLaw fixed(Configuration eta);
  static InitialLaw empty() { return {}; }
};

struct SimConfig {
  ModelParams params;
  Window window = Window(Point{0.0}, Point{1.0});
  InitialLaw initial;
  double t_end = 1.0;
  int replicas = 1;
  std::uint64_t seed = 0;
  SamplingScheme scheme = SamplingScheme::ExactDecomposition;
};

// End-time states of independent replicas.  Each replica draws from its own
// counter-RNG stream keyed by (seed, replica), so the ensemble is
// bit-identical for a fixed SimConfig regardless of worker count.
struct SampleEnsemble {
  std::vector<Configuration> configs;
  double t = 0.0;
  SimConfig meta;
};

// Exact one-shot sampler: thin the initial configuration with survival
// probability e^{-m t}, then superpose a Poisson sample with intensity
// (sigma/m)(1 - e^{-m t}) uniform on the window.
SampleEnsemble sample_exact(const SimConfig& cfg, int threads = 0);

// Event-driven sampler: total rate m|gamma| + sigma|window|; each event is a
// uniformly chosen death or a uniform immigration.
SampleEnsemble sample_gillespie(const SimConfig& cfg, int threads = 0);

// Dispatch on cfg.scheme.
SampleEnsemble sample(const SimConfig& cfg, int threads = 0);

}  // namespace dimlab
