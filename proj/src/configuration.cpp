#include "dimlab/configuration.hpp"

#include <algorithm>

#include "dimlab/errors.hpp"

namespace dimlab {

namespace {

void check_uniform_dim(const std::vector<Point>& pts) {
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (pts[i].dim() != pts[0].dim())
      throw DomainError("Configuration: points of mixed dimension");
}

}  // namespace

Configuration::Configuration(std::vector<Point> points) {
  check_uniform_dim(points);
  std::sort(points.begin(), points.end());
  for (std::size_t i = 1; i < points.size(); ++i)
    if (points[i] == points[i - 1])
      throw DuplicatePoint("Configuration: coincident points");
  points_ = std::move(points);
}

Configuration Configuration::single(Point x) {
  Configuration eta;
  eta.points_.push_back(std::move(x));
  return eta;
}

Configuration Configuration::from_sorted_unchecked(std::vector<Point> points) {
  Configuration eta;
  eta.points_ = std::move(points);
  return eta;
}

bool Configuration::contains(const Point& x) const {
  return std::binary_search(points_.begin(), points_.end(), x);
}

Configuration Configuration::with_point(const Point& x) const {
  if (!points_.empty() && x.dim() != points_[0].dim())
    throw DomainError("with_point: dimension mismatch");
  auto it = std::lower_bound(points_.begin(), points_.end(), x);
  if (it != points_.end() && *it == x) throw DuplicatePoint("with_point: point already present");
  std::vector<Point> pts;
  pts.reserve(points_.size() + 1);
  pts.insert(pts.end(), points_.begin(), it);
  pts.push_back(x);
  pts.insert(pts.end(), it, points_.end());
  return from_sorted_unchecked(std::move(pts));
}

Configuration Configuration::union_with(const Configuration& other) const {
  std::vector<Point> pts;
  pts.reserve(size() + other.size());
  std::merge(points_.begin(), points_.end(), other.points_.begin(), other.points_.end(),
             std::back_inserter(pts));
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (pts[i] == pts[i - 1]) throw DuplicatePoint("union_with: overlapping configurations");
  return from_sorted_unchecked(std::move(pts));
}

Configuration Configuration::without_index(std::size_t i) const {
  std::vector<Point> pts = points_;
  pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(i));
  return from_sorted_unchecked(std::move(pts));
}

}  // namespace dimlab
