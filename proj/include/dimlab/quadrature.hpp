#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "dimlab/geometry.hpp"

namespace dimlab {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre rule with p nodes, exact for polynomials of degree 2p-1.
QuadratureRule gauss_legendre(int p);
QuadratureRule gauss_legendre_on(double a, double b, int p);

// Tensor Gauss-Legendre integral of f over a window, d <= 3.
double integrate_window(const std::function<double(const Point&)>& f, const Window& w,
                        int points_per_dim);

// Deterministic pairwise (tree) summation; result independent of chunking.
double pairwise_sum(std::span<const double> xs);

// Streaming pairwise summation (binary-counter tree, O(log n) memory).  For a
// fixed insertion order the result is bit-reproducible.
class PairwiseAccumulator {
 public:
  void add(double x) {
    std::size_t i = 0;
    std::uint64_t c = count_;
    while (c & 1) {
      x += slots_[i];
      c >>= 1;
      ++i;
    }
    if (i == slots_.size())
      slots_.push_back(x);
    else
      slots_[i] = x;
    ++count_;
  }

  double total() const {
    double s = 0.0;
    std::uint64_t c = count_;
    for (std::size_t i = 0; c; ++i, c >>= 1)
      if (c & 1) s += slots_[i];
    return s;
  }

 private:
  std::vector<double> slots_;
  std::uint64_t count_ = 0;
};

}  // namespace dimlab
