#pragma once

#include <cstdint>
#include <utility>

#include "dimlab/set_function.hpp"

namespace dimlab {

// Enumeration caps keep a single evaluation under ~1e7 terms: 2^n subset sums
// and 3^n triple-partition sums.
inline constexpr std::size_t kMaxSubsetPoints = 22;
inline constexpr std::size_t kMaxTriplePartitionPoints = 14;

// Points of eta selected by the bits of mask (eta is sorted, so the result is).
Configuration subconfiguration(const Configuration& eta, std::uint32_t mask);

// All 2^|eta| ordered pairs (subset, complement), bitmask ascending.
class SubsetRange {
 public:
  struct Pair {
    Configuration subset;
    Configuration complement;
  };

  explicit SubsetRange(const Configuration& eta);

  class iterator {
   public:
    iterator(const Configuration* eta, std::uint64_t mask) : eta_(eta), mask_(mask) {}
    Pair operator*() const;
    iterator& operator++() {
      ++mask_;
      return *this;
    }
    bool operator!=(const iterator& o) const { return mask_ != o.mask_; }

   private:
    const Configuration* eta_;
    std::uint64_t mask_;
  };

  iterator begin() const { return {eta_, 0}; }
  iterator end() const { return {eta_, std::uint64_t{1} << eta_->size()}; }

 private:
  const Configuration* eta_;
};

SubsetRange subsets(const Configuration& eta);

// K-transform (KG)(gamma) = sum over all subsets eta of gamma of G(eta), and
// its inverse (K^-1 F)(eta) = sum over xi of (-1)^{|eta \ xi|} F(xi).
double k_transform(const SetFunction& G, const Configuration& gamma);
double k_inverse(const SetFunction& F, const Configuration& eta);

// Coherent state e(f, eta) = prod_{x in eta} f(x), e(f, {}) = 1.  When the
// sup of |f| is known, pass it so the result carries a growth bound.
SetFunction coherent_state(PointFunction f, std::optional<double> sup_abs = std::nullopt);
SetFunction coherent_state(double constant);

// Indicator of the empty configuration, 0^|eta|: unit of both convolutions.
SetFunction empty_indicator();

// (G1 * G2)(eta) = sum over subsets xi of G1(xi) G2(eta \ xi).
SetFunction ast_convolution(SetFunction G1, SetFunction G2);

// (G1 x G2)(eta) = sum over ordered partitions eta = p1 u p2 u p3 of
// G1(p1 u p2) G2(p2 u p3); realizes pointwise multiplication under K.
SetFunction star_convolution(SetFunction G1, SetFunction G2);

// Mutually inverse exp/log in the *-algebra.  ursell_log requires k({}) = 1,
// ursell_exp requires u({}) = 0; both run the distinguished-element
// recursion over the subset lattice of the argument.
SetFunction ursell_log(SetFunction k);
SetFunction ursell_exp(SetFunction u);

}  // namespace dimlab
