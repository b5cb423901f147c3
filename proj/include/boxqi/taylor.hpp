#pragma once

#include <span>

#include "boxqi/box.hpp"
#include "boxqi/function_oracle.hpp"
#include "boxqi/multiindex.hpp"
#include "boxqi/polynomial.hpp"

namespace boxqi {

enum class TaylorWeight {
  // mu(eta)^{-1} on eta; needs derivatives of f up to the orders in A.
  constant,
  // Normalized prod u^m (1-u)^m mapped onto eta, m = (max A)_i + 1;
  // integrates by parts so only values of f are used.
  bump,
};

// Averaged Taylor polynomial T_{A,psi} f in P_A, monomials in x.
// Requires A downward closed and eta with interior.
Polynomial averaged_taylor_polynomial(const IndexSet& A, TaylorWeight weight, const Box& eta,
                                      const FunctionOracle& f);

double averaged_taylor(const IndexSet& A, TaylorWeight weight, const Box& eta,
                       const FunctionOracle& f, std::span<const double> x);

// Weight psi_eta of the bump mode and its derivatives.
double bump_weight(const IndexSet& A, const Box& eta, const MultiIndex& alpha, std::span<const double> y);

// Whether (1/q, 1/p) lies in the region where averaged Taylor expansion of
// order r in dimension n is bounded from W^{r,q} to L^p.
bool sobolev_region_contains(int r, int n, double p, double q);

}  // namespace boxqi
