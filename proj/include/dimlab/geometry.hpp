#pragma once

#include <array>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "dimlab/errors.hpp"

namespace dimlab {

// A point in R^d, d <= 4, stored inline: configurations and subset sums copy
// points in hot loops.  Coordinates are required to be finite; comparison is
// exact and lexicographic, which gives configurations their canonical order.
class Point {
 public:
  static constexpr std::size_t kMaxDim = 4;

  Point() = default;
  explicit Point(std::span<const double> c) { assign(c); }
  explicit Point(const std::vector<double>& c) { assign(c); }
  Point(std::initializer_list<double> c) { assign(std::span(c.begin(), c.size())); }

  std::size_t dim() const { return n_; }
  double operator[](std::size_t i) const { return c_[i]; }

  Point shifted(std::size_t i, double delta) const {
    Point out = *this;
    out.c_[i] += delta;
    return out;
  }

  std::vector<double> to_vector() const { return {c_.begin(), c_.begin() + n_}; }

  friend bool operator==(const Point& a, const Point& b) {
    if (a.n_ != b.n_) return false;
    for (std::size_t i = 0; i < a.n_; ++i)
      if (a.c_[i] != b.c_[i]) return false;
    return true;
  }
  friend std::strong_ordering operator<=>(const Point& a, const Point& b) {
    const std::size_t n = a.n_ < b.n_ ? a.n_ : b.n_;
    for (std::size_t i = 0; i < n; ++i) {
      if (a.c_[i] < b.c_[i]) return std::strong_ordering::less;
      if (a.c_[i] > b.c_[i]) return std::strong_ordering::greater;
    }
    return a.n_ <=> b.n_;
  }

 private:
  void assign(std::span<const double> c) {
    if (c.size() > kMaxDim) throw DomainError("Point: dimension exceeds 4");
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (!std::isfinite(c[i])) throw DomainError("Point: non-finite coordinate");
      c_[i] = c[i];
    }
    n_ = static_cast<std::uint8_t>(c.size());
  }

  std::array<double, kMaxDim> c_{};
  std::uint8_t n_ = 0;
};

enum class BoundaryMode { Plain, Periodic };

// Axis-aligned box with strictly positive volume.  The Periodic mode only
// affects the distance metric (torus wrap), used by pair statistics.
class Window {
 public:
  Window(Point lower, Point upper, BoundaryMode boundary = BoundaryMode::Plain);

  const Point& lower() const { return lower_; }
  const Point& upper() const { return upper_; }
  BoundaryMode boundary() const { return boundary_; }
  std::size_t dim() const { return lower_.dim(); }
  double side(std::size_t i) const { return upper_[i] - lower_[i]; }
  double volume() const { return volume_; }

  bool contains(const Point& x) const;

  // Euclidean distance; component-wise minimal-image wrap when Periodic.
  double distance(const Point& a, const Point& b) const;

 private:
  Point lower_, upper_;
  BoundaryMode boundary_;
  double volume_;
};

}  // namespace dimlab
