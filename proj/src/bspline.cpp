#include "boxqi/bspline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace boxqi {

namespace {

constexpr int kMaxDegree = 30;

double eval_core(const double* t, int deg, double x, bool left) {
  double N[kMaxDegree + 1];
  for (int j = 0; j <= deg; ++j)
    N[j] = (left ? (t[j] < x && x <= t[j + 1]) : (t[j] <= x && x < t[j + 1])) ? 1.0 : 0.0;
  for (int k = 1; k <= deg; ++k) {
    for (int j = 0; j <= deg - k; ++j) {
      double v = 0.0;
      if (t[j + k] > t[j]) v += (x - t[j]) / (t[j + k] - t[j]) * N[j];
      if (t[j + k + 1] > t[j + 1]) v += (t[j + k + 1] - x) / (t[j + k + 1] - t[j + 1]) * N[j + 1];
      N[j] = v;
    }
  }
  return N[0];
}

double deriv_core(const double* t, int deg, double x, int r, bool left) {
  if (r == 0) return eval_core(t, deg, x, left);
  if (r > deg) return 0.0;
  double v = 0.0;
  if (t[deg] > t[0]) v += deriv_core(t, deg - 1, x, r - 1, left) / (t[deg] - t[0]);
  if (t[deg + 1] > t[1]) v -= deriv_core(t + 1, deg - 1, x, r - 1, left) / (t[deg + 1] - t[1]);
  return deg * v;
}

void check_sorted(const std::vector<double>& k) {
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (!std::isfinite(k[i])) throw std::invalid_argument("knots must be finite");
    if (i > 0 && k[i] < k[i - 1]) throw std::invalid_argument("knots must be nondecreasing");
  }
}

std::size_t count_value(std::span<const double> v, double x) {
  return static_cast<std::size_t>(std::count(v.begin(), v.end(), x));
}

// Multiset difference a \ b of sorted sequences; nullopt if b is not
// contained in a.
std::optional<std::vector<double>> multiset_difference(std::span<const double> a,
                                                       std::span<const double> b) {
  std::vector<double> out;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i] < b[j])) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j] < a[i]) {
      return std::nullopt;
    } else {
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

KnotVector::KnotVector(std::vector<double> knots, int degree)
    : knots_(std::move(knots)), degree_(degree) {
  if (degree_ < 0 || degree_ > kMaxDegree) throw std::invalid_argument("unsupported degree");
  if (knots_.size() != static_cast<std::size_t>(degree_) + 2)
    throw std::invalid_argument("a degree-d B-spline needs d+2 knots");
  check_sorted(knots_);
  if (!(knots_.back() > knots_.front())) throw std::invalid_argument("B-spline support is empty");
}

std::span<const double> KnotVector::interior() const {
  return std::span<const double>(knots_).subspan(1, static_cast<std::size_t>(degree_));
}

OpenKnotVector::OpenKnotVector(std::vector<double> knots, int degree)
    : knots_(std::move(knots)), degree_(degree) {
  if (degree_ < 0 || degree_ > kMaxDegree) throw std::invalid_argument("unsupported degree");
  const std::size_t m = static_cast<std::size_t>(degree_) + 1;
  if (knots_.size() < 2 * m) throw std::invalid_argument("open knot vector too short");
  check_sorted(knots_);
  if (!(knots_.back() > knots_.front())) throw std::invalid_argument("open knot vector is degenerate");
  if (count_value(knots_, knots_.front()) != m || count_value(knots_, knots_.back()) != m)
    throw std::invalid_argument("open knot vector needs end multiplicity d+1");
  for (double v : knots_)
    if (count_value(knots_, v) > m) throw std::invalid_argument("knot multiplicity exceeds d+1");
}

OpenKnotVector OpenKnotVector::from_breakpoints(std::span<const double> breaks, int degree) {
  if (breaks.size() < 2) throw std::invalid_argument("need at least two breakpoints");
  std::vector<double> k(static_cast<std::size_t>(degree) + 1, breaks.front());
  for (std::size_t i = 1; i + 1 < breaks.size(); ++i) k.push_back(breaks[i]);
  k.insert(k.end(), static_cast<std::size_t>(degree) + 1, breaks.back());
  return OpenKnotVector(std::move(k), degree);
}

KnotVector OpenKnotVector::basis(std::size_t i) const {
  if (i >= basis_size()) throw std::out_of_range("basis index out of range");
  return KnotVector(std::vector<double>(knots_.begin() + static_cast<std::ptrdiff_t>(i),
                                        knots_.begin() + static_cast<std::ptrdiff_t>(i) + degree_ + 2),
                    degree_);
}

std::vector<double> OpenKnotVector::breakpoints() const {
  std::vector<double> b(knots_);
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return b;
}

OpenKnotVector OpenKnotVector::bisected() const {
  std::vector<double> k(knots_);
  const auto b = breakpoints();
  for (std::size_t i = 0; i + 1 < b.size(); ++i) k.push_back(0.5 * (b[i] + b[i + 1]));
  std::sort(k.begin(), k.end());
  return OpenKnotVector(std::move(k), degree_);
}

TensorBSpline::TensorBSpline(std::vector<KnotVector> axes) : axes_(std::move(axes)) {
  if (axes_.empty()) throw std::invalid_argument("tensor B-spline needs at least one axis");
}

MultiIndex TensorBSpline::degree() const {
  MultiIndex d(dimension());
  for (std::size_t i = 0; i < dimension(); ++i) d.set(i, axes_[i].degree());
  return d;
}

Box TensorBSpline::support() const {
  std::vector<double> lo(dimension()), hi(dimension());
  for (std::size_t i = 0; i < dimension(); ++i) {
    lo[i] = axes_[i].front();
    hi[i] = axes_[i].back();
  }
  return Box(std::move(lo), std::move(hi));
}

std::vector<double> TensorBSpline::support_size() const {
  std::vector<double> h(dimension());
  for (std::size_t i = 0; i < dimension(); ++i) h[i] = axes_[i].width();
  return h;
}

double TensorBSpline::operator()(std::span<const double> x) const {
  if (x.size() != dimension()) throw std::invalid_argument("point dimension mismatch");
  double v = 1.0;
  for (std::size_t i = 0; i < dimension() && v != 0.0; ++i) v *= bspline_eval(axes_[i], x[i]);
  return v;
}

double TensorBSpline::derivative(std::span<const double> x, const MultiIndex& order) const {
  if (x.size() != dimension() || order.size() != dimension())
    throw std::invalid_argument("dimension mismatch");
  double v = 1.0;
  for (std::size_t i = 0; i < dimension() && v != 0.0; ++i)
    v *= bspline_derivative(axes_[i], x[i], order[i]);
  return v;
}

double TensorBSpline::derivative_in(std::span<const double> x, const MultiIndex& order,
                                    const Box& element) const {
  if (x.size() != dimension() || order.size() != dimension())
    throw std::invalid_argument("dimension mismatch");
  double v = 1.0;
  for (std::size_t i = 0; i < dimension() && v != 0.0; ++i)
    v *= bspline_derivative(axes_[i], x[i], order[i], x[i] >= element.hi(i));
  return v;
}

double bspline_eval(const KnotVector& phi, double x) {
  return eval_core(phi.knots().data(), phi.degree(), x, x == phi.back());
}

double bspline_derivative(const KnotVector& phi, double x, int order) {
  if (order < 0) throw std::invalid_argument("negative derivative order");
  return deriv_core(phi.knots().data(), phi.degree(), x, order, x == phi.back());
}

double bspline_derivative(const KnotVector& phi, double x, int order, bool left_limit) {
  if (order < 0) throw std::invalid_argument("negative derivative order");
  return deriv_core(phi.knots().data(), phi.degree(), x, order, left_limit);
}

double bspline_integral(const KnotVector& phi) { return phi.width() / (phi.degree() + 1); }

KnotInsertion knot_insert(const KnotVector& phi, double t) {
  if (!(t > phi.front() && t < phi.back()))
    throw std::invalid_argument("inserted knot must lie inside the open support");
  const int d = phi.degree();
  const auto& k = phi.knots();
  const double a = t >= k[d] ? 1.0 : (t - k[0]) / (k[d] - k[0]);
  const double b = t <= k[1] ? 1.0 : (k[d + 1] - t) / (k[d + 1] - k[1]);
  std::vector<double> hat(k.begin(), k.end() - 1), tilde(k.begin() + 1, k.end());
  hat.insert(std::upper_bound(hat.begin(), hat.end(), t), t);
  tilde.insert(std::upper_bound(tilde.begin(), tilde.end(), t), t);
  return {a, KnotVector(std::move(hat), d), b, KnotVector(std::move(tilde), d)};
}

TensorKnotInsertion knot_insert(const TensorBSpline& phi, std::size_t axis, double t) {
  if (axis >= phi.dimension()) throw std::out_of_range("axis out of range");
  KnotInsertion u = knot_insert(phi.axis(axis), t);
  std::vector<KnotVector> hat = phi.axes(), tilde = phi.axes();
  hat[axis] = std::move(u.hat);
  tilde[axis] = std::move(u.tilde);
  return {u.a, TensorBSpline(std::move(hat)), u.b, TensorBSpline(std::move(tilde))};
}

double knot_differences(const TensorBSpline& phi, std::size_t axis, int k) {
  const KnotVector& kv = phi.axis(axis);
  const int d = kv.degree();
  if (k < 1 || k > d + 1) throw std::invalid_argument("knot difference order out of range");
  double m = std::numeric_limits<double>::infinity();
  // 1-based l = k+1 .. d+2 maps to 0-based l-1.
  for (int l = k + 1; l <= d + 2; ++l) m = std::min(m, kv[l - 1] - kv[l - 1 - k]);
  return m;
}

double knot_regularity(const TensorBSpline& phi, const MultiIndex& sigma) {
  if (sigma.size() != phi.dimension()) throw std::invalid_argument("sigma dimension mismatch");
  double r = 1.0;
  for (std::size_t i = 0; i < phi.dimension(); ++i) {
    const int d = phi.axis(i).degree();
    if (sigma[i] > d) throw std::invalid_argument("sigma exceeds degree");
    if (sigma[i] == 0) continue;
    const double den = knot_differences(phi, i, d - sigma[i] + 1);
    if (den <= 0.0) return std::numeric_limits<double>::infinity();
    r = std::max(r, knot_differences(phi, i, d + 1) / den);
  }
  return r;
}

NormBounds norm_bounds(const TensorBSpline& phi, double p) {
  const double ip = reciprocal(p);
  NormBounds nb{1.0, 1.0};
  for (const auto& kv : phi.axes()) {
    const double hp = std::pow(kv.width(), ip);
    nb.lower *= hp / (kv.degree() + 1);
    nb.upper *= hp / std::pow(kv.degree() + 1.0, ip);
  }
  return nb;
}

double derivative_bound(const TensorBSpline& phi, const MultiIndex& sigma) {
  if (sigma.size() != phi.dimension()) throw std::invalid_argument("sigma dimension mismatch");
  double b = 1.0;
  for (std::size_t i = 0; i < phi.dimension(); ++i) {
    const int d = phi.axis(i).degree();
    const int s = sigma[i];
    if (s > d) return 0.0;
    if (s == 0) continue;
    b *= factorial(d) / factorial(d - s) * std::pow(2.0, s) *
         std::pow(knot_differences(phi, i, d + 1 - s), -s);
  }
  return b;
}

std::vector<double> refinement_coefficients(const KnotVector& coarse, std::span<const double> fine) {
  const int d = coarse.degree();
  auto extra = multiset_difference(fine, coarse.knots());
  if (!extra) throw std::invalid_argument("refined knots must contain the coarse knots");
  for (double t : *extra)
    if (!(t > coarse.front() && t < coarse.back()))
      throw std::invalid_argument("refined knots must lie inside the open support");
  std::vector<double> T(coarse.knots());
  std::vector<double> c{1.0};
  for (double t : *extra) {
    const auto k = static_cast<int>(std::upper_bound(T.begin(), T.end(), t) - T.begin()) - 1;
    const int m = static_cast<int>(c.size());
    std::vector<double> nc(static_cast<std::size_t>(m) + 1);
    for (int j = 0; j <= m; ++j) {
      double alpha;
      if (j <= k - d)
        alpha = 1.0;
      else if (j >= k + 1)
        alpha = 0.0;
      else
        alpha = (t - T[j]) / (T[j + d] - T[j]);
      const double cj = j < m ? c[j] : 0.0;
      const double cm = j >= 1 ? c[j - 1] : 0.0;
      nc[j] = alpha * cj + (1.0 - alpha) * cm;
    }
    T.insert(T.begin() + k + 1, t);
    c = std::move(nc);
  }
  return c;
}

std::optional<double> nesting_relation(const TensorBSpline& phi, const TensorBSpline& psi) {
  if (phi.dimension() != psi.dimension()) throw std::invalid_argument("dimension mismatch");
  double c = 1.0;
  for (std::size_t i = 0; i < phi.dimension(); ++i) {
    const KnotVector& f = phi.axis(i);
    const KnotVector& g = psi.axis(i);
    if (f.degree() != g.degree()) throw std::invalid_argument("nesting needs equal degrees");
    if (f == g) continue;
    if (f.front() < g.front() || f.back() > g.back()) return std::nullopt;
    std::vector<double> merged(g.knots());
    std::size_t a = 0, b = 0;
    const auto& fk = f.knots();
    const auto& gk = g.knots();
    while (a < fk.size()) {
      if (b < gk.size() && gk[b] < fk[a]) {
        ++b;
      } else if (b < gk.size() && gk[b] == fk[a]) {
        ++a;
        ++b;
      } else {
        if (!(fk[a] > g.front() && fk[a] < g.back())) return std::nullopt;
        merged.push_back(fk[a++]);
      }
    }
    std::sort(merged.begin(), merged.end());
    const auto coef = refinement_coefficients(g, merged);
    const std::size_t w = fk.size();
    std::optional<double> ci;
    for (std::size_t j = 0; j + w <= merged.size(); ++j)
      if (std::equal(fk.begin(), fk.end(), merged.begin() + static_cast<std::ptrdiff_t>(j))) {
        ci = coef[j];
        break;
      }
    if (!ci || !(*ci > 0.0)) return std::nullopt;
    c *= *ci;
  }
  return c;
}

}  // namespace boxqi
