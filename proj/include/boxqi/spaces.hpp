#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "boxqi/box.hpp"
#include "boxqi/boxmesh.hpp"
#include "boxqi/bspline.hpp"
#include "boxqi/multiindex.hpp"

namespace boxqi {

enum class SpaceKind { tps, thb, lr };

struct ShapeTerm {
  double coefficient;
  TensorBSpline spline;
};

struct Generator {
  // B-spline that defines the dual functional (untruncated for THB).
  TensorBSpline spline;
  // The generator as evaluated: one unit term unless truncated.
  std::vector<ShapeTerm> shape;
  int level = 0;
  // Mesh elements where the generator does not vanish identically.
  std::vector<std::size_t> support_elements;
  Box support_box;

  double value(std::span<const double> x) const;
  double derivative(std::span<const double> x, const MultiIndex& sigma) const;
  // One-sided from inside `element`.
  double derivative_in(std::span<const double> x, const MultiIndex& sigma, const Box& element) const;
};

// Level of a hierarchical space: its global knots and the subdomain it
// refines, as a union of boxes aligned with the previous level's elements.
// The domain of the first level is ignored.
struct THBLevel {
  std::vector<OpenKnotVector> knots;
  std::vector<Box> domain;
};

// Axis-aligned segment at x_axis = position; span_lo/span_hi give the extent
// along the remaining axes in increasing axis order. Overlapping segments
// combine by maximum multiplicity.
struct MeshlineInsertion {
  std::size_t axis = 0;
  double position = 0.0;
  std::vector<double> span_lo;
  std::vector<double> span_hi;
  int multiplicity = 1;
};

struct SplineSpace {
  SpaceKind kind = SpaceKind::tps;
  MultiIndex degree;
  Box domain;
  BoxMesh mesh;
  std::vector<Generator> generators;
  // Hierarchy level per mesh element; zero except for THB.
  std::vector<int> element_level;

  std::size_t dimension() const { return domain.dimension(); }
  std::vector<TensorBSpline> splines() const;
};

SplineSpace build_tps(const std::vector<OpenKnotVector>& knots);

// Throws std::invalid_argument for non-nested knots, misaligned or
// non-nested subdomains.
SplineSpace build_thb(const std::vector<THBLevel>& levels);

// Smallest k such that on every element the supports of the untruncated
// generators span at most k consecutive levels.
int thb_admissibility(const SplineSpace& space);

// Starts from the Bernstein generators on omega and splits every generator
// whose support a meshline crosses completely, until no such split remains.
// Segment ends must lie on existing meshline positions. Throws
// std::invalid_argument on malformed segments.
SplineSpace build_lr(const MultiIndex& degree, const Box& omega,
                     const std::vector<MeshlineInsertion>& insertions);

}  // namespace boxqi
