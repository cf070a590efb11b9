#pragma once

#include <vector>

#include "dimlab/simulate.hpp"

namespace dimlab {

struct MomentEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

// Order-j factorial moment density: mean over replicas of
// N(N-1)...(N-j+1) / |window|^j, which estimates the window average of the
// j-point correlation function.  Requires >= 100 replicas; j <= 4.
MomentEstimate factorial_moment(const SampleEnsemble& ens, int order);

struct GapBin {
  double r_lo = 0.0;
  double r_hi = 0.0;
  double r_mid = 0.0;
  double v_hat = 0.0;       // two-point gap estimate k2(r) - rho^2
  double std_error = 0.0;   // jackknife over replicas
  long pair_count = 0;
  bool empty = false;
};

// Binned pair-gap estimator on a periodic window (torus distance), edges
// given by r_edges (increasing).  Zero for a Poisson ensemble.
std::vector<GapBin> gap_estimator(const SampleEnsemble& ens, const std::vector<double>& r_edges);

}  // namespace dimlab
