#include "boxqi/taylor.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "boxqi/quadrature.hpp"

namespace boxqi {

namespace {

// k-th derivative of u^m (1-u)^m by the Leibniz rule.
double bump_1d(int m, int k, double u) {
  auto falling = [](int a, int r) {
    double c = 1.0;
    for (int t = 0; t < r; ++t) c *= a - t;
    return c;
  };
  double s = 0.0;
  for (int j = 0; j <= k; ++j) {
    if (j > m || k - j > m) continue;
    const double left = falling(m, j) * std::pow(u, m - j);
    const double right = falling(m, k - j) * std::pow(1.0 - u, m - k + j) * (((k - j) % 2) ? -1.0 : 1.0);
    s += static_cast<double>(binomial(k, j)) * left * right;
  }
  return s;
}

// Composite Gauss rule: `panels` equal pieces per axis, `order` nodes each.
QuadratureRule composite_rule(int order, int panels, const Box& eta) {
  const std::size_t n = eta.dimension();
  QuadratureRule out;
  std::vector<int> cell(n, 0);
  while (true) {
    std::vector<double> lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = eta.lo(i) + eta.width(i) * cell[i] / panels;
      hi[i] = eta.lo(i) + eta.width(i) * (cell[i] + 1) / panels;
    }
    QuadratureRule r = gauss_legendre(order, Box(lo, hi));
    out.nodes.insert(out.nodes.end(), r.nodes.begin(), r.nodes.end());
    out.weights.insert(out.weights.end(), r.weights.begin(), r.weights.end());
    std::size_t i = n;
    while (i > 0 && ++cell[i - 1] == panels) cell[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

void check_inputs(const IndexSet& A, const Box& eta) {
  if (A.empty() || !A.is_downward_closed()) throw std::invalid_argument("index set must be nonempty and downward closed");
  if (A.dimension() != eta.dimension()) throw std::invalid_argument("index set and box differ in dimension");
  if (!eta.has_interior()) throw std::invalid_argument("averaging box needs interior");
}

}  // namespace

double bump_weight(const IndexSet& A, const Box& eta, const MultiIndex& alpha, std::span<const double> y) {
  const MultiIndex top = A.max_entries();
  double v = 1.0 / eta.measure();
  for (std::size_t i = 0; i < eta.dimension(); ++i) {
    const int m = top[i] + 1;
    const double h = eta.width(i);
    const double u = (y[i] - eta.lo(i)) / h;
    if (u < 0.0 || u > 1.0) return 0.0;
    const double normal = factorial(2 * m + 1) / (factorial(m) * factorial(m));
    v *= normal * bump_1d(m, alpha[i], u) * std::pow(h, -alpha[i]);
  }
  return v;
}

Polynomial averaged_taylor_polynomial(const IndexSet& A, TaylorWeight weight, const Box& eta,
                                      const FunctionOracle& f) {
  check_inputs(A, eta);
  const std::size_t n = eta.dimension();
  const int top = A.max_entries().max_entry();
  // The constant-mode rule does not depend on A for moderate degrees, so
  // derivatives commute with the discrete averages as well.
  const int panels = n <= 2 ? 4 : (n == 3 ? 2 : 1);
  const QuadratureRule rule = weight == TaylorWeight::constant
                                  ? composite_rule(std::max(16, top + 8), panels, eta)
                                  : composite_rule(3 * top + 8, panels, eta);

  // Accumulate in powers of (x - c), c the centre of eta: the terms then stay
  // of the size of the result instead of growing like width^-|alpha|.
  const std::vector<double> c = eta.center();
  std::map<MultiIndex, double> local;
  std::vector<double> shift(n), exps(n);
  for (std::size_t k = 0; k < rule.weights.size(); ++k) {
    const auto& y = rule.nodes[k];
    for (std::size_t i = 0; i < n; ++i) shift[i] = c[i] - y[i];
    const double fy = weight == TaylorWeight::bump ? f(y) : 0.0;
    for (const auto& alpha : A) {
      double v = rule.weights[k] / factorial(alpha);
      if (weight == TaylorWeight::constant)
        v *= f.d(alpha, y) / eta.measure();
      else
        v *= taylor_weight_coefficient(alpha, A) * bump_weight(A, eta, alpha, y) * fy;
      if (v == 0.0) continue;
      // (x - y)^alpha = sum_{gamma <= alpha} C(alpha, gamma) (x - c)^gamma (c - y)^{alpha - gamma}
      for (const auto& gamma : A) {
        if (!gamma.dominated_by(alpha)) continue;
        const MultiIndex rest = alpha - gamma;
        for (std::size_t i = 0; i < n; ++i) exps[i] = rest[i];
        local[gamma] += v * static_cast<double>(mi_binomial(alpha, gamma)) * vec_pow(shift, exps);
      }
    }
  }
  // Back to monomials in x.
  std::vector<double> neg_c(n);
  for (std::size_t i = 0; i < n; ++i) neg_c[i] = -c[i];
  std::map<MultiIndex, double> coeffs;
  for (const auto& [gamma, b] : local)
    for (const auto& beta : A) {
      if (!beta.dominated_by(gamma)) continue;
      const MultiIndex rest = gamma - beta;
      for (std::size_t i = 0; i < n; ++i) exps[i] = rest[i];
      coeffs[beta] += b * static_cast<double>(mi_binomial(gamma, beta)) * vec_pow(neg_c, exps);
    }
  return Polynomial(n, std::move(coeffs));
}

double averaged_taylor(const IndexSet& A, TaylorWeight weight, const Box& eta, const FunctionOracle& f,
                       std::span<const double> x) {
  return averaged_taylor_polynomial(A, weight, eta, f)(x);
}

bool sobolev_region_contains(int r, int n, double p, double q) {
  if (n < 1 || r < 0) throw std::invalid_argument("need n >= 1 and r >= 0");
  if (!(p >= 1.0) || !(q >= 1.0)) throw std::invalid_argument("exponents must lie in [1, inf]");
  if (r >= n) return true;
  const double ip = reciprocal(p), iq = reciprocal(q), rn = static_cast<double>(r) / n;
  constexpr double tol = 1e-14;
  if (ip - iq + rn < -tol) return false;
  auto at = [&](double a, double b) { return std::abs(iq - a) <= tol && std::abs(ip - b) <= tol; };
  return !at(rn, 0.0) && !at(1.0, 1.0 - rn);
}

}  // namespace boxqi
