#include "boxqi/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace boxqi {

Polynomial::Polynomial(std::size_t n) : dimension_(n) {}

Polynomial::Polynomial(std::size_t n, std::map<MultiIndex, double> terms) : dimension_(n) {
  for (const auto& [a, c] : terms) add_term(a, c);
}

Polynomial Polynomial::monomial(const MultiIndex& alpha, double coefficient) {
  Polynomial p(alpha.size());
  p.add_term(alpha, coefficient);
  return p;
}

void Polynomial::add_term(const MultiIndex& alpha, double coefficient) {
  if (alpha.size() != dimension_) throw std::invalid_argument("polynomial dimension mismatch");
  terms_[alpha] += coefficient;
}

double Polynomial::coefficient(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? 0.0 : it->second;
}

MultiIndex Polynomial::degree() const {
  MultiIndex d(dimension_);
  for (const auto& [a, c] : terms_)
    if (c != 0.0)
      for (std::size_t i = 0; i < dimension_; ++i) d.set(i, std::max(d[i], a[i]));
  return d;
}

double Polynomial::coefficient_norm() const {
  double m = 0.0;
  for (const auto& [a, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

double Polynomial::operator()(std::span<const double> x) const {
  if (x.size() != dimension_) throw std::invalid_argument("point dimension mismatch");
  if (terms_.empty()) return 0.0;
  // Dense coefficient tensor, then Horner along the last axis first.
  const MultiIndex deg = degree();
  std::vector<std::size_t> stride(dimension_ + 1, 1);
  for (std::size_t i = dimension_; i-- > 0;)
    stride[i] = stride[i + 1] * static_cast<std::size_t>(deg[i] + 1);
  std::vector<double> dense(stride[0], 0.0);
  for (const auto& [a, c] : terms_) {
    if (c == 0.0) continue;
    std::size_t off = 0;
    for (std::size_t i = 0; i < dimension_; ++i) off += static_cast<std::size_t>(a[i]) * stride[i + 1];
    dense[off] += c;
  }
  std::size_t len = stride[0];
  for (std::size_t i = dimension_; i-- > 0;) {
    const std::size_t m = static_cast<std::size_t>(deg[i] + 1);
    const std::size_t outer = len / m;
    // Axis i is contiguous once the later axes are folded.
    std::vector<double> next(outer, 0.0);
    for (std::size_t o = 0; o < outer; ++o) {
      double acc = 0.0;
      for (std::size_t k = m; k-- > 0;) acc = acc * x[i] + dense[o * m + k];
      next[o] = acc;
    }
    dense = std::move(next);
    len = outer;
  }
  return dense[0];
}

Polynomial Polynomial::derivative(const MultiIndex& sigma) const {
  if (sigma.size() != dimension_) throw std::invalid_argument("sigma dimension mismatch");
  Polynomial out(dimension_);
  for (const auto& [a, c] : terms_) {
    if (!sigma.dominated_by(a)) continue;
    double f = c;
    for (std::size_t i = 0; i < dimension_; ++i)
      for (int k = 0; k < sigma[i]; ++k) f *= a[i] - k;
    out.add_term(a - sigma, f);
  }
  return out;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  if (other.dimension_ != dimension_) throw std::invalid_argument("polynomial dimension mismatch");
  Polynomial out(*this);
  for (const auto& [a, c] : other.terms_) out.add_term(a, c);
  return out;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  if (other.dimension_ != dimension_) throw std::invalid_argument("polynomial dimension mismatch");
  Polynomial out(dimension_);
  for (const auto& [a, c] : terms_)
    for (const auto& [b, e] : other.terms_) out.add_term(a + b, c * e);
  return out;
}

Polynomial Polynomial::operator*(double s) const {
  Polynomial out(dimension_);
  for (const auto& [a, c] : terms_) out.add_term(a, c * s);
  return out;
}

double poly_eval(const Polynomial& g, std::span<const double> x) { return g(x); }

double elementary_symmetric(std::span<const double> values, int k) {
  if (k < 0 || static_cast<std::size_t>(k) > values.size()) return 0.0;
  std::vector<double> e(static_cast<std::size_t>(k) + 1, 0.0);
  e[0] = 1.0;
  for (double v : values)
    for (int j = k; j >= 1; --j) e[j] += v * e[j - 1];
  return e[k];
}

double blossom(const Polynomial& g, const TensorBSpline& phi) {
  if (g.dimension() != phi.dimension()) throw std::invalid_argument("blossom dimension mismatch");
  double s = 0.0;
  for (const auto& [a, c] : g.terms()) {
    double t = c;
    for (std::size_t i = 0; i < phi.dimension(); ++i) {
      const int d = phi.axis(i).degree();
      if (a[i] > d) throw std::invalid_argument("polynomial degree exceeds spline degree");
      t *= elementary_symmetric(phi.axis(i).interior(), a[i]) / static_cast<double>(binomial(d, a[i]));
    }
    s += t;
  }
  return s;
}

double marsden_coeff(double y, const KnotVector& phi) {
  double r = 1.0;
  for (double t : phi.interior()) r *= y - t;
  return r;
}

std::vector<TensorBSpline> bernstein_generators(const MultiIndex& dvec, const Box& omega) {
  const std::size_t n = dvec.size();
  if (omega.dimension() != n) throw std::invalid_argument("dimension mismatch");
  if (!omega.has_interior()) throw std::invalid_argument("domain must have interior");
  std::vector<OpenKnotVector> axes;
  for (std::size_t i = 0; i < n; ++i) {
    const double b[2] = {omega.lo(i), omega.hi(i)};
    axes.push_back(OpenKnotVector::from_breakpoints(b, dvec[i]));
  }
  std::vector<TensorBSpline> out;
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    std::vector<KnotVector> kv;
    for (std::size_t i = 0; i < n; ++i) kv.push_back(axes[i].basis(idx[i]));
    out.emplace_back(std::move(kv));
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++idx[i] < axes[i].basis_size()) break;
      idx[i] = 0;
      if (i == 0) return out;
    }
  }
}

}  // namespace boxqi
