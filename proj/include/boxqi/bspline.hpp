#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "boxqi/box.hpp"
#include "boxqi/multiindex.hpp"

namespace boxqi {

// Local knot vector of one univariate B-spline of degree d: d+2
// nondecreasing knots with a nonempty support.
class KnotVector {
 public:
  KnotVector() = default;
  KnotVector(std::vector<double> knots, int degree);

  int degree() const { return degree_; }
  const std::vector<double>& knots() const { return knots_; }
  double operator[](std::size_t i) const { return knots_[i]; }
  double front() const { return knots_.front(); }
  double back() const { return knots_.back(); }
  double width() const { return knots_.back() - knots_.front(); }
  // Interior knots theta_2 .. theta_{d+1}.
  std::span<const double> interior() const;

  auto operator<=>(const KnotVector&) const = default;
  bool operator==(const KnotVector&) const = default;

 private:
  std::vector<double> knots_;
  int degree_ = 0;
};

// Global knot vector of a spline space on an interval.
class OpenKnotVector {
 public:
  OpenKnotVector() = default;
  // Requires end multiplicity d+1 and interior multiplicity <= d+1.
  OpenKnotVector(std::vector<double> knots, int degree);
  static OpenKnotVector from_breakpoints(std::span<const double> breaks, int degree);

  int degree() const { return degree_; }
  const std::vector<double>& knots() const { return knots_; }
  std::size_t basis_size() const { return knots_.size() - degree_ - 1; }
  KnotVector basis(std::size_t i) const;
  std::vector<double> breakpoints() const;
  // Inserts the midpoint of every nonempty knot interval once.
  OpenKnotVector bisected() const;

  bool operator==(const OpenKnotVector&) const = default;

 private:
  std::vector<double> knots_;
  int degree_ = 0;
};

class TensorBSpline {
 public:
  TensorBSpline() = default;
  explicit TensorBSpline(std::vector<KnotVector> axes);

  std::size_t dimension() const { return axes_.size(); }
  const KnotVector& axis(std::size_t i) const { return axes_[i]; }
  const std::vector<KnotVector>& axes() const { return axes_; }
  MultiIndex degree() const;
  Box support() const;
  std::vector<double> support_size() const;

  double operator()(std::span<const double> x) const;
  double derivative(std::span<const double> x, const MultiIndex& order) const;
  // Value of the polynomial piece on `element`, also at its upper faces.
  double derivative_in(std::span<const double> x, const MultiIndex& order, const Box& element) const;

  auto operator<=>(const TensorBSpline&) const = default;
  bool operator==(const TensorBSpline&) const = default;

 private:
  std::vector<KnotVector> axes_;
};

// Right-continuous, except that the left limit is taken at the right end of
// the support.
double bspline_eval(const KnotVector& phi, double x);
double bspline_derivative(const KnotVector& phi, double x, int order);
// Explicit side: the left limit when left_limit is set, else the right limit.
double bspline_derivative(const KnotVector& phi, double x, int order, bool left_limit);
double bspline_integral(const KnotVector& phi);

struct KnotInsertion {
  double a;
  KnotVector hat;  // drops the last knot
  double b;
  KnotVector tilde;  // drops the first knot
};

// phi = a * hat + b * tilde after inserting t in the open support.
KnotInsertion knot_insert(const KnotVector& phi, double t);

struct TensorKnotInsertion {
  double a;
  TensorBSpline hat;
  double b;
  TensorBSpline tilde;
};
TensorKnotInsertion knot_insert(const TensorBSpline& phi, std::size_t axis, double t);

// min over l of (theta_l - theta_{l-k}) for l = k+1 .. d+2 on one axis.
double knot_differences(const TensorBSpline& phi, std::size_t axis, int k);
// max over axes of Delta_{d+1} / Delta_{d-sigma+1}; infinity if a
// denominator vanishes.
double knot_regularity(const TensorBSpline& phi, const MultiIndex& sigma);

struct NormBounds {
  double lower;
  double upper;
};
NormBounds norm_bounds(const TensorBSpline& phi, double p);

// Bound on sup |d^sigma phi|.
double derivative_bound(const TensorBSpline& phi, const MultiIndex& sigma);

// Coefficients of the coarse B-spline in the basis defined by the refined
// knot sequence `fine`, which must contain the coarse knots and only extra
// knots inside the open support. Entry j belongs to fine[j .. j+d+1].
std::vector<double> refinement_coefficients(const KnotVector& coarse, std::span<const double> fine);

// If phi is obtained from psi by knot insertion, the positive coefficient
// of phi in the refinement of psi. Throws on degree mismatch.
std::optional<double> nesting_relation(const TensorBSpline& phi, const TensorBSpline& psi);

}  // namespace boxqi
