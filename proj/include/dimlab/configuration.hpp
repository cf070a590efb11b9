#pragma once

#include <cstddef>
#include <vector>

#include "dimlab/geometry.hpp"

namespace dimlab {

// A finite set of pairwise-distinct points, stored in canonical lexicographic
// order.  Equality is exact coordinate equality; coincident points are
// rejected at construction rather than deduplicated, so estimator bugs that
// produce duplicates surface immediately.
class Configuration {
 public:
  Configuration() = default;
  explicit Configuration(std::vector<Point> points);

  static Configuration empty() { return {}; }
  static Configuration single(Point x);

  // Fast path for callers that already guarantee sorted, distinct points of
  // equal dimension (subset enumeration, quadrature grids).
  static Configuration from_sorted_unchecked(std::vector<Point> points);

  std::size_t size() const { return points_.size(); }
  bool is_empty() const { return points_.empty(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<Point>& points() const { return points_; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  bool contains(const Point& x) const;

  // Set insertion/union; throw DuplicatePoint on collision.
  Configuration with_point(const Point& x) const;
  Configuration union_with(const Configuration& other) const;
  Configuration without_index(std::size_t i) const;

  friend bool operator==(const Configuration& a, const Configuration& b) {
    return a.points_ == b.points_;
  }

 private:
  std::vector<Point> points_;
};

}  // namespace dimlab
