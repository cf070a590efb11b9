#include "dimlab/subset_algebra.hpp"

#include <bit>
#include <cmath>
#include <vector>

namespace dimlab {

namespace {

void require_subset_cap(const Configuration& eta) {
  if (eta.size() > kMaxSubsetPoints)
    throw CapExceeded("subset enumeration: |eta| exceeds cap of 22");
}

void require_star_cap(const Configuration& eta) {
  if (eta.size() > kMaxTriplePartitionPoints)
    throw CapExceeded("triple-partition enumeration: |eta| exceeds cap of 14");
}

}  // namespace

Configuration subconfiguration(const Configuration& eta, std::uint32_t mask) {
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(std::popcount(mask)));
  for (std::size_t i = 0; i < eta.size(); ++i)
    if (mask & (std::uint32_t{1} << i)) pts.push_back(eta[i]);
  return Configuration::from_sorted_unchecked(std::move(pts));
}

SubsetRange::SubsetRange(const Configuration& eta) : eta_(&eta) { require_subset_cap(eta); }

SubsetRange::Pair SubsetRange::iterator::operator*() const {
  auto mask = static_cast<std::uint32_t>(mask_);
  std::uint32_t full = (eta_->size() == 32) ? ~std::uint32_t{0}
                                            : ((std::uint32_t{1} << eta_->size()) - 1);
  return {subconfiguration(*eta_, mask), subconfiguration(*eta_, full & ~mask)};
}

SubsetRange subsets(const Configuration& eta) { return SubsetRange(eta); }

double k_transform(const SetFunction& G, const Configuration& gamma) {
  require_subset_cap(gamma);
  const std::uint64_t total = std::uint64_t{1} << gamma.size();
  double sum = 0.0;
  for (std::uint64_t mask = 0; mask < total; ++mask)
    sum += G(subconfiguration(gamma, static_cast<std::uint32_t>(mask)));
  return sum;
}

double k_inverse(const SetFunction& F, const Configuration& eta) {
  require_subset_cap(eta);
  const std::uint64_t total = std::uint64_t{1} << eta.size();
  const int n = static_cast<int>(eta.size());
  double sum = 0.0;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    int dropped = n - std::popcount(mask);
    double term = F(subconfiguration(eta, static_cast<std::uint32_t>(mask)));
    sum += (dropped % 2 == 0) ? term : -term;
  }
  return sum;
}

SetFunction coherent_state(PointFunction f, std::optional<double> sup_abs) {
  std::optional<GrowthBound> bound;
  if (sup_abs) bound = GrowthBound{1.0, *sup_abs};
  return SetFunction(
      [f = std::move(f)](const Configuration& eta) {
        double prod = 1.0;
        for (const Point& x : eta) prod *= f(x);
        return prod;
      },
      bound);
}

SetFunction coherent_state(double constant) {
  return SetFunction(
      [constant](const Configuration& eta) {
        return std::pow(constant, static_cast<double>(eta.size()));
      },
      GrowthBound{1.0, std::abs(constant) > 0.0 ? std::abs(constant) : 1.0});
}

SetFunction empty_indicator() {
  return SetFunction([](const Configuration& eta) { return eta.is_empty() ? 1.0 : 0.0; },
                     GrowthBound{1.0, 1.0}, 0);
}

namespace {

std::optional<std::size_t> summed_caps(const SetFunction& G1, const SetFunction& G2) {
  if (G1.support_cap() && G2.support_cap()) return *G1.support_cap() + *G2.support_cap();
  return std::nullopt;
}

}  // namespace

SetFunction ast_convolution(SetFunction G1, SetFunction G2) {
  std::optional<GrowthBound> bound;
  if (G1.bound() && G2.bound())
    bound = GrowthBound{G1.bound()->norm_estimate * G2.bound()->norm_estimate,
                        G1.bound()->growth_constant + G2.bound()->growth_constant};
  std::optional<std::size_t> cap = summed_caps(G1, G2);
  return SetFunction(
      [G1 = std::move(G1), G2 = std::move(G2)](const Configuration& eta) {
        require_subset_cap(eta);
        const std::uint32_t full = (std::uint32_t{1} << eta.size()) - 1;
        double sum = 0.0;
        for (std::uint64_t mask = 0; mask <= full; ++mask) {
          auto m = static_cast<std::uint32_t>(mask);
          sum += G1(subconfiguration(eta, m)) * G2(subconfiguration(eta, full & ~m));
        }
        return sum;
      },
      bound, cap);
}

namespace {

double star_sum(const SetFunction& G1, const SetFunction& G2, const Configuration& eta,
                std::size_t i, std::uint32_t mask_a, std::uint32_t mask_b) {
  if (i == eta.size())
    return G1(subconfiguration(eta, mask_a)) * G2(subconfiguration(eta, mask_b));
  const std::uint32_t bit = std::uint32_t{1} << i;
  return star_sum(G1, G2, eta, i + 1, mask_a | bit, mask_b) +
         star_sum(G1, G2, eta, i + 1, mask_a | bit, mask_b | bit) +
         star_sum(G1, G2, eta, i + 1, mask_a, mask_b | bit);
}

}  // namespace

SetFunction star_convolution(SetFunction G1, SetFunction G2) {
  std::optional<GrowthBound> bound;
  if (G1.bound() && G2.bound()) {
    double c1 = G1.bound()->growth_constant, c2 = G2.bound()->growth_constant;
    bound = GrowthBound{G1.bound()->norm_estimate * G2.bound()->norm_estimate, c1 + c2 + c1 * c2};
  }
  std::optional<std::size_t> cap = summed_caps(G1, G2);
  return SetFunction(
      [G1 = std::move(G1), G2 = std::move(G2)](const Configuration& eta) {
        require_star_cap(eta);
        return star_sum(G1, G2, eta, 0, 0, 0);
      },
      bound, cap);
}

namespace {

// Distinguished-element recursion shared by ursell_log / ursell_exp.  With
// x the lowest-indexed point of eta and rest = eta \ x:
//   k(eta) = sum over subsets s of rest of u(s u x) * k(rest \ s),
// i.e. the block containing x times a partition of the remainder.
std::vector<double> tabulate(const SetFunction& f, const Configuration& eta) {
  const std::uint64_t total = std::uint64_t{1} << eta.size();
  std::vector<double> vals(total);
  for (std::uint64_t mask = 0; mask < total; ++mask)
    vals[mask] = f(subconfiguration(eta, static_cast<std::uint32_t>(mask)));
  return vals;
}

}  // namespace

SetFunction ursell_log(SetFunction k) {
  return SetFunction([k = std::move(k)](const Configuration& eta) {
    require_subset_cap(eta);
    std::vector<double> ks = tabulate(k, eta);
    if (std::abs(ks[0] - 1.0) > 1e-9)
      throw PreconditionViolated("ursell_log: k(emptyset) must equal 1");
    const std::uint64_t total = std::uint64_t{1} << eta.size();
    std::vector<double> u(total, 0.0);
    for (std::uint64_t mask = 1; mask < total; ++mask) {
      const std::uint64_t x = mask & (~mask + 1);
      const std::uint64_t rest = mask ^ x;
      double val = ks[mask];
      if (rest != 0) {
        for (std::uint64_t s = (rest - 1) & rest;; s = (s - 1) & rest) {
          val -= u[s | x] * ks[rest ^ s];
          if (s == 0) break;
        }
      }
      u[mask] = val;
    }
    return u[total - 1];
  });
}

SetFunction ursell_exp(SetFunction u) {
  return SetFunction([u = std::move(u)](const Configuration& eta) {
    require_subset_cap(eta);
    std::vector<double> uv = tabulate(u, eta);
    if (std::abs(uv[0]) > 1e-9)
      throw PreconditionViolated("ursell_exp: u(emptyset) must equal 0");
    const std::uint64_t total = std::uint64_t{1} << eta.size();
    std::vector<double> kv(total, 0.0);
    kv[0] = 1.0;
    for (std::uint64_t mask = 1; mask < total; ++mask) {
      const std::uint64_t x = mask & (~mask + 1);
      const std::uint64_t rest = mask ^ x;
      double val = 0.0;
      for (std::uint64_t s = rest;; s = (s - 1) & rest) {
        val += uv[s | x] * kv[rest ^ s];
        if (s == 0) break;
      }
      kv[mask] = val;
    }
    return kv[total - 1];
  });
}

}  // namespace dimlab
