#pragma once

#include <cstddef>
#include <vector>

#include "boxqi/box.hpp"
#include "boxqi/bspline.hpp"
#include "boxqi/function_oracle.hpp"

namespace boxqi {

using Breakpoints = std::vector<std::vector<double>>;

// G_{phi,eta}(f) = mu(eta)^{-1} int_eta prod_i w_i(x_i) f(x) dx, with the
// weights fixed by G(t^r) = blossom of t^r against phi on every axis.
class GFunctional {
 public:
  GFunctional() = default;
  // Requires eta inside supp phi with nonempty interior.
  GFunctional(TensorBSpline phi, Box eta);

  const TensorBSpline& spline() const { return phi_; }
  const Box& domain() const { return eta_; }
  // Coefficients a_j of w_i = sum_j a_j L_j(t) in the orthonormal Legendre
  // basis of [0, 1], t = (x - min eta_i) / |eta_i|. a_j is the blossom of L_j.
  const std::vector<double>& weight_coefficients(std::size_t axis) const { return coeffs_[axis]; }
  double weight(std::size_t axis, double x) const;

  // Integrates cell by cell, splitting eta at the given lines.
  double apply(const ScalarField& f, const Breakpoints& lines = {}) const;

 private:
  TensorBSpline phi_;
  Box eta_;
  std::vector<std::vector<double>> coeffs_;
};

GFunctional build_G(const TensorBSpline& phi, const Box& eta);

// The same weight on one axis in monomials t^j, solved through the exact
// inverse Hilbert matrix. Loses accuracy quickly with the degree.
std::vector<double> monomial_weight_coefficients(const TensorBSpline& phi, const Box& eta, std::size_t axis);

struct FunctionalTerm {
  double coefficient;
  GFunctional functional;
};

// Finite linear combination of G functionals. A single term with
// coefficient 1 is the plain G_{phi,eta} case.
class DualFunctional {
 public:
  DualFunctional() = default;
  explicit DualFunctional(GFunctional g);
  explicit DualFunctional(std::vector<FunctionalTerm> terms);

  bool is_simple() const;
  const std::vector<FunctionalTerm>& terms() const { return terms_; }
  // Bounding box of the member integration domains.
  Box support() const;

 private:
  std::vector<FunctionalTerm> terms_;
};

double apply_functional(const DualFunctional& lambda, const ScalarField& f,
                        const Breakpoints& lines = {});

// Bound on ||G||_{*p} ||phi||_p.
double functional_norm_bound(const GFunctional& g, double p);
// Triangle-inequality aggregate over the terms; each term is measured
// against its own spline, which dominates the generator in norm.
double functional_norm_bound(const DualFunctional& lambda, double p);

}  // namespace boxqi
