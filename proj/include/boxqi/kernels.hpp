#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "boxqi/function_oracle.hpp"
#include "boxqi/multiindex.hpp"
#include "boxqi/quasi_interpolant.hpp"

namespace boxqi {

// Parallel kernels use OpenMP and merge per-element partial results in
// element order, so both modes return bit-identical values.
enum class Exec { serial, parallel };

// Coefficients lambda_phi(f) in generator order.
std::vector<double> apply_quasi_interp(const QuasiInterpolant& q, const ScalarField& f,
                                       Exec exec = Exec::parallel);

// sum_phi c_phi d^sigma phi(x), taking the polynomial piece of the element
// that mesh.locate selects.
double eval_quasi_interp(const QuasiInterpolant& q, std::span<const double> coeffs,
                         std::span<const double> x, const MultiIndex& sigma);

// d^sigma of the spline on the tensor grid nodes[0] x ... x nodes[n-1]
// inside one element, last axis fastest. Points on the upper faces take
// the limit from inside the element.
std::vector<double> eval_on_element(const QuasiInterpolant& q, std::span<const double> coeffs,
                                    std::size_t element, const std::vector<std::vector<double>>& nodes,
                                    const MultiIndex& sigma);

// Same values as eval_on_element, one point at a time through the
// generators' own evaluation.
std::vector<double> eval_on_element_reference(const QuasiInterpolant& q, std::span<const double> coeffs,
                                              std::size_t element,
                                              const std::vector<std::vector<double>>& nodes,
                                              const MultiIndex& sigma);

// count equispaced points on [lo, hi], both ends included.
std::vector<double> lattice(double lo, double hi, int count);

// Points per axis of the max-norm lattice: (2d+4)*density + 1, where d is
// the maximal degree. density = 1 gives 2d+5.
int lattice_count(const MultiIndex& degree, int density = 1);

// Gauss-Legendre points per axis for p < infinity: max degree + 3.
int error_quadrature_order(const MultiIndex& degree);

// ||d^sigma (f - sum c_phi phi)||_p over the mesh.
double error_norm(const FunctionOracle& f, const QuasiInterpolant& q, std::span<const double> coeffs,
                  double p, const MultiIndex& sigma, Exec exec = Exec::parallel, int density = 1);

// Serial, pointwise version of error_norm for cross-checking.
double error_norm_reference(const FunctionOracle& f, const QuasiInterpolant& q,
                            std::span<const double> coeffs, double p, const MultiIndex& sigma,
                            int density = 1);

enum class SeminormWeight {
  // rho_{k,sigma} on omega = max over E_omega of h_esupp^{k - sigma + nu_-}.
  rho,
  // h_Phi^k with h_Phi the componentwise max of h_esupp over E_omega.
  anisotropic,
};

// sum_{k in K} ||w_k d^k f||_q with the chosen piecewise constant weight.
double rhs_seminorm(const FunctionOracle& f, const QuasiInterpolant& q, const IndexSet& K,
                    const MultiIndex& sigma, double p, double q_exp, SeminormWeight weight,
                    Exec exec = Exec::parallel);

}  // namespace boxqi
