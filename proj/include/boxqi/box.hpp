#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace boxqi {

// Closed axis-aligned box [lo, hi].
class Box {
 public:
  Box() = default;
  Box(std::vector<double> lo, std::vector<double> hi);
  static Box unit(std::size_t n);

  std::size_t dimension() const { return lo_.size(); }
  const std::vector<double>& lo() const { return lo_; }
  const std::vector<double>& hi() const { return hi_; }
  double lo(std::size_t i) const { return lo_[i]; }
  double hi(std::size_t i) const { return hi_[i]; }
  double width(std::size_t i) const { return hi_[i] - lo_[i]; }

  std::vector<double> size() const;
  std::vector<double> center() const;
  double measure() const;
  double diameter() const;
  bool has_interior() const;

  bool contains(const Box& other, double tol = 0.0) const;
  bool contains_point(std::span<const double> x, double tol = 0.0) const;
  bool interiors_intersect(const Box& other, double tol = 0.0) const;
  std::optional<Box> intersection(const Box& other) const;

  bool operator==(const Box&) const = default;

 private:
  std::vector<double> lo_, hi_;
};

Box bounding_box(std::span<const Box> boxes);

// Closure of outer \ corner, where corner is a proper sub-box of outer that
// shares a vertex with it.
class TruncatedBox {
 public:
  TruncatedBox() = default;
  explicit TruncatedBox(Box outer);
  // Throws std::invalid_argument on a malformed corner. A corner that spans
  // all axes but one leaves a plain box, which is stored as such.
  TruncatedBox(Box outer, Box corner);

  const Box& outer() const { return outer_; }
  const std::optional<Box>& corner() const { return corner_; }
  const Box& bbox() const { return outer_; }
  std::size_t dimension() const { return outer_.dimension(); }
  std::vector<double> size() const { return outer_.size(); }
  double measure() const;
  bool contains(const Box& b, double tol = 0.0) const;

  bool operator==(const TruncatedBox&) const = default;

 private:
  Box outer_;
  std::optional<Box> corner_;
};

// -1 for a plain box, otherwise the dimension of the largest face of the
// outer box that the truncated box does not touch.
int classify_truncated_box(const TruncatedBox& tb);

// Number of distinct truncated-box types in dimension n, plain box included.
int truncated_box_type_count(std::size_t n);

}  // namespace boxqi
