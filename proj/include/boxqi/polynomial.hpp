#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "boxqi/box.hpp"
#include "boxqi/bspline.hpp"
#include "boxqi/multiindex.hpp"

namespace boxqi {

// Sparse polynomial in the monomial basis x^alpha.
class Polynomial {
 public:
  explicit Polynomial(std::size_t n);
  Polynomial(std::size_t n, std::map<MultiIndex, double> terms);

  static Polynomial monomial(const MultiIndex& alpha, double coefficient = 1.0);

  std::size_t dimension() const { return dimension_; }
  const std::map<MultiIndex, double>& terms() const { return terms_; }
  void add_term(const MultiIndex& alpha, double coefficient);
  double coefficient(const MultiIndex& alpha) const;
  // Componentwise maximal exponent; zero for the zero polynomial.
  MultiIndex degree() const;
  // Max absolute coefficient.
  double coefficient_norm() const;

  double operator()(std::span<const double> x) const;
  Polynomial derivative(const MultiIndex& sigma) const;

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial operator*(double s) const;

 private:
  std::size_t dimension_;
  std::map<MultiIndex, double> terms_;
};

double poly_eval(const Polynomial& g, std::span<const double> x);

// Elementary symmetric polynomial e_k of the values.
double elementary_symmetric(std::span<const double> values, int k);

// Polar form of g evaluated at the interior knots of phi, axis by axis.
// Throws std::invalid_argument if g has a term exceeding the degree of phi.
double blossom(const Polynomial& g, const TensorBSpline& phi);

// prod_{i=2}^{d+1} (y - theta_i).
double marsden_coeff(double y, const KnotVector& phi);

// The (d_i+1) B-splines per axis on [lo_i^{d+1}, hi_i^{d+1}].
std::vector<TensorBSpline> bernstein_generators(const MultiIndex& dvec, const Box& omega);

}  // namespace boxqi
