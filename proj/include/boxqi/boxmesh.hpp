#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "boxqi/box.hpp"

namespace boxqi {

// Finite set of boxes with pairwise disjoint interiors, kept sorted
// lexicographically by lower corner.
class BoxMesh {
 public:
  BoxMesh() = default;
  // Throws std::invalid_argument on empty input, degenerate boxes, mixed
  // dimensions or overlapping interiors.
  explicit BoxMesh(std::vector<Box> elements);
  // Tensor product of per-axis breakpoint lists (strictly increasing).
  static BoxMesh tensor(const std::vector<std::vector<double>>& breakpoints);

  std::size_t size() const { return elements_.size(); }
  std::size_t dimension() const { return domain_.dimension(); }
  const Box& element(std::size_t i) const { return elements_[i]; }
  const std::vector<Box>& elements() const { return elements_; }
  // Bounding box of all elements.
  const Box& domain() const { return domain_; }
  double measure() const;
  // Geometric comparison tolerance, 1e-12 times the domain diameter.
  double tolerance() const { return tol_; }

  std::vector<std::size_t> elements_within(const Box& region) const;
  std::vector<std::size_t> elements_within(const TruncatedBox& region) const;
  std::vector<std::size_t> elements_overlapping(const Box& region) const;
  // Element containing x, preferring the one to the upper right at shared
  // faces.
  std::optional<std::size_t> locate(std::span<const double> x) const;
  // Distinct element corner coordinates per axis, sorted.
  const std::vector<std::vector<double>>& breakpoints() const { return breakpoints_; }

 private:
  struct Unchecked {};
  BoxMesh(std::vector<Box> elements, Unchecked);
  void index();
  std::pair<std::size_t, std::size_t> candidate_range(double lo0, double hi0) const;

  std::vector<Box> elements_;
  Box domain_;
  double tol_ = 0.0;
  double max_width0_ = 0.0;
  std::vector<std::vector<double>> breakpoints_;
};

// Elements of the mesh contained in a truncated box.
std::vector<Box> elements_in(const BoxMesh& mesh, const TruncatedBox& region);

}  // namespace boxqi
