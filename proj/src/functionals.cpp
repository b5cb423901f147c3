#include "boxqi/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "boxqi/hilbert.hpp"
#include "boxqi/polynomial.hpp"
#include "boxqi/quadrature.hpp"

namespace boxqi {

namespace {

std::vector<double> axis_cuts(double lo, double hi, const Breakpoints& lines, std::size_t axis) {
  std::vector<double> cuts{lo};
  if (axis < lines.size()) {
    const double tol = 1e-12 * (hi - lo);
    for (double v : lines[axis])
      if (v > lo + tol && v < hi - tol) cuts.push_back(v);
  }
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  return cuts;
}

// Polar form of the Legendre polynomial P_j(2t-1), viewed as a polynomial
// of degree d, at the arguments u: Bernstein coefficients
// (-1)^{j-k} C(j,k), degree elevation, then de Casteljau with one
// argument per step.
double legendre_blossom(int j, int d, const std::vector<double>& u) {
  std::vector<double> c(static_cast<std::size_t>(j) + 1);
  for (int k = 0; k <= j; ++k) c[k] = (((j - k) % 2) ? -1.0 : 1.0) * static_cast<double>(binomial(j, k));
  for (int m = j; m < d; ++m) {
    std::vector<double> e(static_cast<std::size_t>(m) + 2);
    e[0] = c[0];
    e[m + 1] = c[m];
    for (int k = 1; k <= m; ++k) {
      const double a = static_cast<double>(k) / (m + 1);
      e[k] = a * c[k - 1] + (1.0 - a) * c[k];
    }
    c = std::move(e);
  }
  for (int r = 0; r < d; ++r)
    for (int k = 0; k + r < d; ++k) c[k] = (1.0 - u[r]) * c[k] + u[r] * c[k + 1];
  return c[0];
}

}  // namespace

GFunctional::GFunctional(TensorBSpline phi, Box eta) : phi_(std::move(phi)), eta_(std::move(eta)) {
  const std::size_t n = phi_.dimension();
  if (eta_.dimension() != n) throw std::invalid_argument("functional domain dimension mismatch");
  if (!eta_.has_interior()) throw std::invalid_argument("functional domain needs interior");
  const Box supp = phi_.support();
  if (!supp.contains(eta_, 1e-12 * supp.diameter()))
    throw std::invalid_argument("functional domain must lie in the support");
  coeffs_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const KnotVector& kv = phi_.axis(i);
    const int d = kv.degree();
    std::vector<double> t;
    for (double th : kv.interior()) t.push_back((th - eta_.lo(i)) / eta_.width(i));
    coeffs_[i].resize(static_cast<std::size_t>(d) + 1);
    for (int j = 0; j <= d; ++j) coeffs_[i][j] = std::sqrt(2.0 * j + 1.0) * legendre_blossom(j, d, t);
  }
}

double GFunctional::weight(std::size_t axis, double x) const {
  const double t = (x - eta_.lo(axis)) / eta_.width(axis);
  const double s = 2.0 * t - 1.0;
  const auto& a = coeffs_[axis];
  double p0 = 1.0, p1 = s;
  double acc = a[0];
  for (std::size_t j = 1; j < a.size(); ++j) {
    acc += a[j] * std::sqrt(2.0 * j + 1.0) * p1;
    const double p2 = ((2.0 * j + 1.0) * s * p1 - j * p0) / (j + 1.0);
    p0 = p1;
    p1 = p2;
  }
  return acc;
}

std::vector<double> monomial_weight_coefficients(const TensorBSpline& phi, const Box& eta, std::size_t axis) {
  const KnotVector& kv = phi.axis(axis);
  const int d = kv.degree();
  std::vector<double> t;
  for (double th : kv.interior()) t.push_back((th - eta.lo(axis)) / eta.width(axis));
  std::vector<double> b(static_cast<std::size_t>(d) + 1);
  for (int r = 0; r <= d; ++r) b[r] = elementary_symmetric(t, r) / static_cast<double>(binomial(d, r));
  return hilbert_solve(d, b);
}

double GFunctional::apply(const ScalarField& f, const Breakpoints& lines) const {
  const std::size_t n = phi_.dimension();
  const int order = phi_.degree().max_entry() + 2;
  std::vector<std::vector<double>> cuts(n);
  for (std::size_t i = 0; i < n; ++i) cuts[i] = axis_cuts(eta_.lo(i), eta_.hi(i), lines, i);

  std::vector<std::size_t> cell(n, 0);
  std::vector<double> x(n);
  double total = 0.0;
  while (true) {
    std::vector<double> lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = cuts[i][cell[i]];
      hi[i] = cuts[i][cell[i] + 1];
    }
    const TensorRule rule = gauss_legendre_tensor(order, Box(lo, hi));
    std::vector<std::vector<double>> wv(n);
    for (std::size_t i = 0; i < n; ++i) {
      wv[i].resize(rule.nodes[i].size());
      for (std::size_t k = 0; k < wv[i].size(); ++k)
        wv[i][k] = weight(i, rule.nodes[i][k]) * rule.weights[i][k];
    }
    const std::size_t m = static_cast<std::size_t>(order);
    std::vector<std::size_t> q(n, 0);
    while (true) {
      double w = 1.0;
      for (std::size_t i = 0; i < n; ++i) {
        x[i] = rule.nodes[i][q[i]];
        w *= wv[i][q[i]];
      }
      total += w * f(x);
      std::size_t i = n;
      while (i > 0 && ++q[i - 1] == m) q[--i] = 0;
      if (i == 0) break;
    }
    std::size_t i = n;
    while (i > 0 && ++cell[i - 1] + 1 == cuts[i - 1].size()) cell[--i] = 0;
    if (i == 0) break;
  }
  return total / eta_.measure();
}

GFunctional build_G(const TensorBSpline& phi, const Box& eta) { return GFunctional(phi, eta); }

DualFunctional::DualFunctional(GFunctional g) { terms_.push_back({1.0, std::move(g)}); }

DualFunctional::DualFunctional(std::vector<FunctionalTerm> terms) : terms_(std::move(terms)) {
  if (terms_.empty()) throw std::invalid_argument("dual functional needs at least one term");
}

bool DualFunctional::is_simple() const { return terms_.size() == 1 && terms_[0].coefficient == 1.0; }

Box DualFunctional::support() const {
  std::vector<Box> boxes;
  for (const auto& t : terms_) boxes.push_back(t.functional.domain());
  return bounding_box(boxes);
}

double apply_functional(const DualFunctional& lambda, const ScalarField& f, const Breakpoints& lines) {
  double s = 0.0;
  for (const auto& t : lambda.terms()) s += t.coefficient * t.functional.apply(f, lines);
  return s;
}

double functional_norm_bound(const GFunctional& g, double p) {
  const double ip = reciprocal(p);
  double b = 1.0;
  for (std::size_t i = 0; i < g.spline().dimension(); ++i) {
    const int d = g.spline().axis(i).degree();
    b *= std::pow(d + 1.0, 1.0 - ip) *
         std::pow(g.spline().axis(i).width() / g.domain().width(i), d + ip) * hilbert_inverse_norm(d);
  }
  return b;
}

double functional_norm_bound(const DualFunctional& lambda, double p) {
  double b = 0.0;
  for (const auto& t : lambda.terms()) b += std::abs(t.coefficient) * functional_norm_bound(t.functional, p);
  return b;
}

}  // namespace boxqi
