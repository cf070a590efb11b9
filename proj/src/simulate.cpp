#include "dimlab/simulate.hpp"

#include <cmath>
#include <thread>

#include "dimlab/rng.hpp"

namespace dimlab {

InitialLaw InitialLaw::poisson(double intensity) {
  if (intensity < 0.0) throw DomainError("InitialLaw: Poisson intensity must be >= 0");
  InitialLaw law;
  law.kind = Kind::Poisson;
  law.intensity = intensity;
  return law;
}

InitialLaw InitialLaw::fixed(Configuration eta) {
  InitialLaw law;
  law.kind = Kind::Fixed;
  law.fixed_config = std::move(eta);
  return law;
}

namespace {

void validate(const SimConfig& cfg) {
  if (cfg.replicas < 1) throw DomainError("SimConfig: replicas must be >= 1");
  if (cfg.t_end < 0.0) throw DomainError("SimConfig: t_end must be >= 0");
  if (cfg.initial.kind == InitialLaw::Kind::Fixed) {
    for (const Point& x : cfg.initial.fixed_config)
      if (!cfg.window.contains(x))
        throw DomainError("SimConfig: fixed initial configuration must lie in the window");
  }
}

// Duplicate draws have probability zero; on the (never observed) collision
// the configuration is redrawn from a fresh sub-stream.
Configuration collect_points(std::vector<Point> pts, CounterRng& rng, const Window& w) {
  for (;;) {
    try {
      return Configuration(std::move(pts));
    } catch (const DuplicatePoint&) {
      std::size_t n = pts.size();
      pts.clear();
      for (std::size_t i = 0; i < n; ++i) pts.push_back(rng.uniform_point(w));
    }
  }
}

std::vector<Point> draw_initial(const SimConfig& cfg, CounterRng& rng) {
  std::vector<Point> pts;
  switch (cfg.initial.kind) {
    case InitialLaw::Kind::Empty:
      break;
    case InitialLaw::Kind::Fixed:
      pts = cfg.initial.fixed_config.points();
      break;
    case InitialLaw::Kind::Poisson: {
      long n = rng.poisson(cfg.initial.intensity * cfg.window.volume());
      pts.reserve(static_cast<std::size_t>(n));
      for (long i = 0; i < n; ++i) pts.push_back(rng.uniform_point(cfg.window));
      break;
    }
  }
  return pts;
}

Configuration replica_exact(const SimConfig& cfg, int replica) {
  CounterRng rng(cfg.seed, static_cast<std::uint64_t>(replica), 0);
  std::vector<Point> pts = draw_initial(cfg, rng);

  const double survival = std::exp(-cfg.params.m * cfg.t_end);
  std::vector<Point> kept;
  kept.reserve(pts.size());
  for (Point& x : pts)
    if (rng.uniform01() < survival) kept.push_back(std::move(x));

  const double z_t = cfg.params.invariant_intensity() * (1.0 - survival);
  long immigrants = rng.poisson(z_t * cfg.window.volume());
  for (long i = 0; i < immigrants; ++i) kept.push_back(rng.uniform_point(cfg.window));

  return collect_points(std::move(kept), rng, cfg.window);
}

Configuration replica_gillespie(const SimConfig& cfg, int replica) {
  CounterRng rng(cfg.seed, static_cast<std::uint64_t>(replica), 1);
  std::vector<Point> pts = draw_initial(cfg, rng);

  const double immigration_rate = cfg.params.sigma * cfg.window.volume();
  double t = 0.0;
  for (;;) {
    const double total_rate = cfg.params.m * static_cast<double>(pts.size()) + immigration_rate;
    if (total_rate <= 0.0) break;
    t += rng.exponential(total_rate);
    if (t > cfg.t_end) break;
    const double death_prob = cfg.params.m * static_cast<double>(pts.size()) / total_rate;
    if (rng.uniform01() < death_prob) {
      std::size_t i = static_cast<std::size_t>(rng.uniform01() * static_cast<double>(pts.size()));
      if (i >= pts.size()) i = pts.size() - 1;
      pts[i] = std::move(pts.back());
      pts.pop_back();
    } else {
      pts.push_back(rng.uniform_point(cfg.window));
    }
  }

  return collect_points(std::move(pts), rng, cfg.window);
}

template <typename Replica>
SampleEnsemble run_replicas(const SimConfig& cfg, int threads, Replica&& one) {
  validate(cfg);
  SampleEnsemble ens;
  ens.t = cfg.t_end;
  ens.meta = cfg;
  ens.configs.resize(static_cast<std::size_t>(cfg.replicas));

  unsigned n_threads = threads > 0 ? static_cast<unsigned>(threads)
                                   : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(cfg.replicas));
  if (n_threads <= 1) {
    for (int r = 0; r < cfg.replicas; ++r)
      ens.configs[static_cast<std::size_t>(r)] = one(cfg, r);
    return ens;
  }

  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (unsigned w = 0; w < n_threads; ++w) {
    pool.emplace_back([&, w]() {
      for (int r = static_cast<int>(w); r < cfg.replicas; r += static_cast<int>(n_threads))
        ens.configs[static_cast<std::size_t>(r)] = one(cfg, r);
    });
  }
  for (auto& th : pool) th.join();
  return ens;
}

}  // namespace

SampleEnsemble sample_exact(const SimConfig& cfg, int threads) {
  if (cfg.scheme != SamplingScheme::ExactDecomposition)
    throw DomainError("sample_exact: cfg.scheme mismatch");
  return run_replicas(cfg, threads, replica_exact);
}

SampleEnsemble sample_gillespie(const SimConfig& cfg, int threads) {
  if (cfg.scheme != SamplingScheme::Gillespie)
    throw DomainError("sample_gillespie: cfg.scheme mismatch");
  return run_replicas(cfg, threads, replica_gillespie);
}

SampleEnsemble sample(const SimConfig& cfg, int threads) {
  return cfg.scheme == SamplingScheme::ExactDecomposition ? sample_exact(cfg, threads)
                                                          : sample_gillespie(cfg, threads);
}

}  // namespace dimlab
