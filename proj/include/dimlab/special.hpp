#pragma once

#include <cmath>

#include "dimlab/errors.hpp"

namespace dimlab {

inline double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma: requires x > 0");
  return std::lgamma(x);
}

// Euler beta through log-gamma; stays finite where the factorial form of
// B(x, y) = Gamma(x)Gamma(y)/Gamma(x+y) would overflow.
inline double euler_beta(double x, double y) {
  return std::exp(log_gamma(x) + log_gamma(y) - log_gamma(x + y));
}

}  // namespace dimlab
