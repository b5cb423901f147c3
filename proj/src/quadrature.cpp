#include "boxqi/quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace boxqi {

namespace {

constexpr int kMaxOrder = 64;

// P_n(x) and P_n'(x) by the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

Rule1D compute_rule(int n) {
  Rule1D r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre(n, x).second;
    // Map from [-1, 1] to [0, 1]; nodes ascending.
    r.nodes[n - 1 - i] = 0.5 * (x + 1.0);
    r.weights[n - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

struct RuleTable {
  std::array<Rule1D, kMaxOrder + 1> rules;
  RuleTable() {
    for (int n = 1; n <= kMaxOrder; ++n) rules[n] = compute_rule(n);
  }
};

}  // namespace

const Rule1D& gauss_legendre_1d(int order) {
  if (order < 1 || order > kMaxOrder) throw std::invalid_argument("quadrature order out of range");
  static const RuleTable table;
  return table.rules[order];
}

TensorRule gauss_legendre_tensor(int order, const Box& box) {
  const Rule1D& r = gauss_legendre_1d(order);
  TensorRule t;
  for (std::size_t i = 0; i < box.dimension(); ++i) {
    const double lo = box.lo(i), w = box.width(i);
    std::vector<double> x(r.nodes.size()), wt(r.nodes.size());
    for (std::size_t k = 0; k < r.nodes.size(); ++k) {
      x[k] = lo + w * r.nodes[k];
      wt[k] = w * r.weights[k];
    }
    t.nodes.push_back(std::move(x));
    t.weights.push_back(std::move(wt));
  }
  return t;
}

QuadratureRule gauss_legendre(int order, const Box& box) {
  const TensorRule t = gauss_legendre_tensor(order, box);
  const std::size_t n = box.dimension();
  const std::size_t m = static_cast<std::size_t>(order);
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= m;
  QuadratureRule q;
  q.nodes.reserve(total);
  q.weights.reserve(total);
  std::vector<std::size_t> idx(n, 0);
  for (std::size_t p = 0; p < total; ++p) {
    std::vector<double> x(n);
    double w = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = t.nodes[i][idx[i]];
      w *= t.weights[i][idx[i]];
    }
    q.nodes.push_back(std::move(x));
    q.weights.push_back(w);
    for (std::size_t i = n; i-- > 0;) {
      if (++idx[i] < m) break;
      idx[i] = 0;
    }
  }
  return q;
}

}  // namespace boxqi
