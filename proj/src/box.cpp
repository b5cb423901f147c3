#include "boxqi/box.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace boxqi {

Box::Box(std::vector<double> lo, std::vector<double> hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_.size() != hi_.size()) throw std::invalid_argument("box corners differ in dimension");
  for (std::size_t i = 0; i < lo_.size(); ++i) {
    if (!std::isfinite(lo_[i]) || !std::isfinite(hi_[i]))
      throw std::invalid_argument("box corners must be finite");
    if (lo_[i] > hi_[i]) throw std::invalid_argument("box requires lo <= hi");
  }
}

Box Box::unit(std::size_t n) { return Box(std::vector<double>(n, 0.0), std::vector<double>(n, 1.0)); }

std::vector<double> Box::size() const {
  std::vector<double> h(dimension());
  for (std::size_t i = 0; i < h.size(); ++i) h[i] = hi_[i] - lo_[i];
  return h;
}

std::vector<double> Box::center() const {
  std::vector<double> c(dimension());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = 0.5 * (lo_[i] + hi_[i]);
  return c;
}

double Box::measure() const {
  double m = 1.0;
  for (std::size_t i = 0; i < dimension(); ++i) m *= hi_[i] - lo_[i];
  return m;
}

double Box::diameter() const {
  double s = 0.0;
  for (std::size_t i = 0; i < dimension(); ++i) s += (hi_[i] - lo_[i]) * (hi_[i] - lo_[i]);
  return std::sqrt(s);
}

bool Box::has_interior() const {
  for (std::size_t i = 0; i < dimension(); ++i)
    if (!(hi_[i] > lo_[i])) return false;
  return true;
}

bool Box::contains(const Box& other, double tol) const {
  if (other.dimension() != dimension()) throw std::invalid_argument("box dimension mismatch");
  for (std::size_t i = 0; i < dimension(); ++i)
    if (other.lo_[i] < lo_[i] - tol || other.hi_[i] > hi_[i] + tol) return false;
  return true;
}

bool Box::contains_point(std::span<const double> x, double tol) const {
  if (x.size() != dimension()) throw std::invalid_argument("point dimension mismatch");
  for (std::size_t i = 0; i < dimension(); ++i)
    if (x[i] < lo_[i] - tol || x[i] > hi_[i] + tol) return false;
  return true;
}

bool Box::interiors_intersect(const Box& other, double tol) const {
  if (other.dimension() != dimension()) throw std::invalid_argument("box dimension mismatch");
  for (std::size_t i = 0; i < dimension(); ++i)
    if (std::min(hi_[i], other.hi_[i]) - std::max(lo_[i], other.lo_[i]) <= tol) return false;
  return true;
}

std::optional<Box> Box::intersection(const Box& other) const {
  if (other.dimension() != dimension()) throw std::invalid_argument("box dimension mismatch");
  std::vector<double> lo(dimension()), hi(dimension());
  for (std::size_t i = 0; i < dimension(); ++i) {
    lo[i] = std::max(lo_[i], other.lo_[i]);
    hi[i] = std::min(hi_[i], other.hi_[i]);
    if (lo[i] > hi[i]) return std::nullopt;
  }
  return Box(std::move(lo), std::move(hi));
}

Box bounding_box(std::span<const Box> boxes) {
  if (boxes.empty()) throw std::invalid_argument("bounding_box of nothing");
  std::vector<double> lo = boxes[0].lo(), hi = boxes[0].hi();
  for (const auto& b : boxes) {
    if (b.dimension() != lo.size()) throw std::invalid_argument("box dimension mismatch");
    for (std::size_t i = 0; i < lo.size(); ++i) {
      lo[i] = std::min(lo[i], b.lo(i));
      hi[i] = std::max(hi[i], b.hi(i));
    }
  }
  return Box(std::move(lo), std::move(hi));
}

TruncatedBox::TruncatedBox(Box outer) : outer_(std::move(outer)) {}

TruncatedBox::TruncatedBox(Box outer, Box corner) : outer_(std::move(outer)) {
  const std::size_t n = outer_.dimension();
  if (corner.dimension() != n) throw std::invalid_argument("corner dimension mismatch");
  if (!corner.has_interior()) throw std::invalid_argument("corner must have interior");
  if (!outer_.contains(corner)) throw std::invalid_argument("corner must lie inside the outer box");
  bool proper = false;
  for (std::size_t i = 0; i < n; ++i) {
    const bool at_lo = corner.lo(i) == outer_.lo(i);
    const bool at_hi = corner.hi(i) == outer_.hi(i);
    if (!at_lo && !at_hi) throw std::invalid_argument("corner must share a vertex with the outer box");
    if (!(at_lo && at_hi)) proper = true;
  }
  if (!proper) throw std::invalid_argument("corner must be a proper sub-box");
  // A corner spanning all axes but one cuts off a slab; the rest is a box.
  std::size_t partial = n, partial_count = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (!(corner.lo(i) == outer_.lo(i) && corner.hi(i) == outer_.hi(i))) {
      partial = i;
      ++partial_count;
    }
  if (partial_count == 1) {
    std::vector<double> lo = outer_.lo(), hi = outer_.hi();
    if (corner.lo(partial) == lo[partial])
      lo[partial] = corner.hi(partial);
    else
      hi[partial] = corner.lo(partial);
    outer_ = Box(std::move(lo), std::move(hi));
    return;
  }
  corner_ = std::move(corner);
}

double TruncatedBox::measure() const {
  return outer_.measure() - (corner_ ? corner_->measure() : 0.0);
}

bool TruncatedBox::contains(const Box& b, double tol) const {
  if (!outer_.contains(b, tol)) return false;
  if (!corner_) return true;
  return !corner_->interiors_intersect(b, tol);
}

int classify_truncated_box(const TruncatedBox& tb) {
  if (!tb.corner()) return -1;
  const Box& c = *tb.corner();
  int spanning = 0;
  for (std::size_t i = 0; i < tb.dimension(); ++i)
    if (c.lo(i) == tb.outer().lo(i) && c.hi(i) == tb.outer().hi(i)) ++spanning;
  return spanning;
}

int truncated_box_type_count(std::size_t n) {
  int p = 1;
  for (std::size_t i = 0; i < n; ++i) p *= 3;
  return p - 2 * static_cast<int>(n);
}

}  // namespace boxqi
