#include "dimlab/geometry.hpp"

namespace dimlab {

Window::Window(Point lower, Point upper, BoundaryMode boundary)
    : lower_(std::move(lower)), upper_(std::move(upper)), boundary_(boundary) {
  if (lower_.dim() == 0 || lower_.dim() != upper_.dim())
    throw DomainError("Window: lower/upper dimension mismatch");
  volume_ = 1.0;
  for (std::size_t i = 0; i < lower_.dim(); ++i) {
    if (!(lower_[i] < upper_[i])) throw DomainError("Window: lower must be < upper componentwise");
    volume_ *= upper_[i] - lower_[i];
  }
}

bool Window::contains(const Point& x) const {
  if (x.dim() != dim()) return false;
  for (std::size_t i = 0; i < dim(); ++i)
    if (x[i] < lower_[i] || x[i] > upper_[i]) return false;
  return true;
}

double Window::distance(const Point& a, const Point& b) const {
  double s = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) {
    double d = std::abs(a[i] - b[i]);
    if (boundary_ == BoundaryMode::Periodic) {
      double L = side(i);
      d = std::fmod(d, L);
      if (d > 0.5 * L) d = L - d;
    }
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace dimlab
