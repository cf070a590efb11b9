#pragma once

#include <functional>
#include <optional>
#include <utility>

#include "dimlab/configuration.hpp"
#include "dimlab/errors.hpp"

namespace dimlab {

// Declared geometric growth bound: |f(eta)| <= norm_estimate * growth_constant^|eta|.
// Certified truncation tails of Lebesgue-Poisson integrals hang off this.
struct GrowthBound {
  double norm_estimate = 0.0;
  double growth_constant = 1.0;

  double at(std::size_t n) const {
    double b = norm_estimate;
    for (std::size_t i = 0; i < n; ++i) b *= growth_constant;
    return b;
  }
};

// Evaluatable real-valued function on finite configurations.  Symmetry is
// structural (the argument is a set).  Evaluation must stay pure: instances
// are shared across threads with no internal mutable state.
//
// A declared support cap (f(eta) = 0 whenever |eta| > cap) marks the
// bounded-support class; integrators truncate at the cap and short-circuit
// above it.
class SetFunction {
 public:
  using Eval = std::function<double(const Configuration&)>;

  SetFunction() = default;
  SetFunction(Eval eval, std::optional<GrowthBound> bound = std::nullopt,
              std::optional<std::size_t> support_cap = std::nullopt)
      : eval_(std::move(eval)), bound_(bound), support_cap_(support_cap) {}

  double operator()(const Configuration& eta) const {
    if (support_cap_ && eta.size() > *support_cap_) return 0.0;
    return eval_(eta);
  }
  bool valid() const { return static_cast<bool>(eval_); }
  const std::optional<GrowthBound>& bound() const { return bound_; }
  const std::optional<std::size_t>& support_cap() const { return support_cap_; }

  SetFunction with_bound(GrowthBound b) const { return SetFunction(eval_, b, support_cap_); }
  SetFunction with_support(std::size_t cap) const { return SetFunction(eval_, bound_, cap); }

 private:
  Eval eval_;
  std::optional<GrowthBound> bound_;
  std::optional<std::size_t> support_cap_;
};

using PointFunction = std::function<double(const Point&)>;

}  // namespace dimlab
