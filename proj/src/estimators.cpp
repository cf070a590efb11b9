#include "dimlab/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dimlab/quadrature.hpp"

namespace dimlab {

MomentEstimate factorial_moment(const SampleEnsemble& ens, int order) {
  if (order < 1 || order > 4)
    throw DomainError("factorial_moment: order must be in 1..4 (variance explodes beyond)");
  if (ens.configs.size() < 100)
    throw InsufficientReplicas("factorial_moment: need at least 100 replicas");

  const double volume_power =
      std::pow(ens.meta.window.volume(), static_cast<double>(order));
  std::vector<double> values;
  values.reserve(ens.configs.size());
  for (const Configuration& gamma : ens.configs) {
    double ff = 1.0;
    const double n = static_cast<double>(gamma.size());
    for (int j = 0; j < order; ++j) ff *= n - j;
    values.push_back(ff / volume_power);
  }
  const double R = static_cast<double>(values.size());
  const double mean = pairwise_sum(values) / R;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (R - 1.0) / R)};
}

namespace {

double shell_volume(std::size_t d, double a, double b) {
  switch (d) {
    case 1:
      return 2.0 * (b - a);
    case 2:
      return std::numbers::pi * (b * b - a * a);
    case 3:
      return 4.0 / 3.0 * std::numbers::pi * (b * b * b - a * a * a);
    default:
      throw DomainError("gap_estimator: d <= 3 only");
  }
}

}  // namespace

std::vector<GapBin> gap_estimator(const SampleEnsemble& ens, const std::vector<double>& r_edges) {
  const Window& w = ens.meta.window;
  if (w.boundary() != BoundaryMode::Periodic)
    throw DomainError("gap_estimator: requires a periodic window");
  if (r_edges.size() < 2 || !std::is_sorted(r_edges.begin(), r_edges.end()))
    throw DomainError("gap_estimator: need increasing bin edges");
  double min_side = w.side(0);
  for (std::size_t i = 1; i < w.dim(); ++i) min_side = std::min(min_side, w.side(i));
  if (r_edges.back() > 0.5 * min_side)
    throw DomainError("gap_estimator: edges must not exceed half the shortest side");
  const std::size_t R = ens.configs.size();
  if (R < 2) throw InsufficientReplicas("gap_estimator: need at least 2 replicas");

  const std::size_t B = r_edges.size() - 1;
  std::vector<std::vector<double>> pairs(R, std::vector<double>(B, 0.0));
  std::vector<double> counts(R, 0.0);
  for (std::size_t i = 0; i < R; ++i) {
    const Configuration& gamma = ens.configs[i];
    counts[i] = static_cast<double>(gamma.size());
    for (std::size_t a = 0; a < gamma.size(); ++a) {
      for (std::size_t b = a + 1; b < gamma.size(); ++b) {
        const double r = w.distance(gamma[a], gamma[b]);
        auto it = std::upper_bound(r_edges.begin(), r_edges.end(), r);
        if (it == r_edges.begin() || it == r_edges.end()) continue;
        pairs[i][static_cast<std::size_t>(it - r_edges.begin()) - 1] += 2.0;  // ordered pairs
      }
    }
  }

  std::vector<double> pair_total(B, 0.0);
  double count_total = 0.0;
  for (std::size_t i = 0; i < R; ++i) {
    count_total += counts[i];
    for (std::size_t b = 0; b < B; ++b) pair_total[b] += pairs[i][b];
  }

  const double V = w.volume();
  std::vector<GapBin> out(B);
  for (std::size_t b = 0; b < B; ++b) {
    GapBin& bin = out[b];
    bin.r_lo = r_edges[b];
    bin.r_hi = r_edges[b + 1];
    bin.r_mid = 0.5 * (bin.r_lo + bin.r_hi);
    bin.pair_count = static_cast<long>(pair_total[b]);
    bin.empty = pair_total[b] == 0.0;
    const double shell = shell_volume(w.dim(), bin.r_lo, bin.r_hi);
    const double Rd = static_cast<double>(R);
    const double k2 = pair_total[b] / (Rd * V * shell);
    const double rho = count_total / (Rd * V);
    bin.v_hat = k2 - rho * rho;

    // Leave-one-replica-out jackknife of the full statistic.
    double jk_mean = 0.0;
    std::vector<double> jk(R, 0.0);
    for (std::size_t i = 0; i < R; ++i) {
      const double k2_i = (pair_total[b] - pairs[i][b]) / ((Rd - 1.0) * V * shell);
      const double rho_i = (count_total - counts[i]) / ((Rd - 1.0) * V);
      jk[i] = k2_i - rho_i * rho_i;
      jk_mean += jk[i];
    }
    jk_mean /= Rd;
    double ss = 0.0;
    for (double v : jk) ss += (v - jk_mean) * (v - jk_mean);
    bin.std_error = std::sqrt((Rd - 1.0) / Rd * ss);
  }
  return out;
}

}  // namespace dimlab
