#include "boxqi/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>
#include <limits>
#include <stdexcept>

#include "boxqi/bspline.hpp"
#include "boxqi/quadrature.hpp"

namespace boxqi {

namespace {

// Runs body(i) for i < count, in parallel if requested, and rethrows the
// first exception after the loop.
template <class Body>
void for_range(std::size_t count, Exec exec, Body&& body) {
  std::exception_ptr error;
  const auto m = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(dynamic, 8) if (exec == Exec::parallel)
  for (std::ptrdiff_t i = 0; i < m; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(boxqi_kernel_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

std::size_t grid_size(const std::vector<std::vector<double>>& nodes) {
  std::size_t m = 1;
  for (const auto& a : nodes) m *= a.size();
  return m;
}

// Advances a last-axis-fastest odometer; false after the final index.
bool next_index(std::vector<std::size_t>& idx, const std::vector<std::vector<double>>& nodes) {
  std::size_t i = idx.size();
  while (i > 0 && ++idx[i - 1] == nodes[i - 1].size()) idx[--i] = 0;
  return i != 0;
}

struct ElementRule {
  std::vector<std::vector<double>> nodes;
  std::vector<std::vector<double>> weights;  // empty for lattices
};

ElementRule element_rule(const Box& element, const MultiIndex& degree, double p, int density) {
  ElementRule r;
  if (std::isinf(p)) {
    const int m = lattice_count(degree, density);
    for (std::size_t i = 0; i < element.dimension(); ++i)
      r.nodes.push_back(lattice(element.lo(i), element.hi(i), m));
  } else {
    TensorRule t = gauss_legendre_tensor(error_quadrature_order(degree), element);
    r.nodes = std::move(t.nodes);
    r.weights = std::move(t.weights);
  }
  return r;
}

// sum w |v|^p or max |v| over one element's grid.
double reduce_element(const ElementRule& rule, const std::vector<double>& values, double p) {
  const std::size_t n = rule.nodes.size();
  std::vector<std::size_t> idx(n, 0);
  double acc = 0.0;
  std::size_t k = 0;
  do {
    const double v = std::abs(values[k++]);
    if (std::isinf(p)) {
      acc = std::max(acc, v);
    } else {
      double w = 1.0;
      for (std::size_t i = 0; i < n; ++i) w *= rule.weights[i][idx[i]];
      acc += w * std::pow(v, p);
    }
  } while (next_index(idx, rule.nodes));
  return acc;
}

double combine(const std::vector<double>& partials, double p) {
  double acc = 0.0;
  for (double v : partials) acc = std::isinf(p) ? std::max(acc, v) : acc + v;
  return std::isinf(p) ? acc : std::pow(acc, 1.0 / p);
}

template <class Eval>
double error_norm_impl(const FunctionOracle& f, const QuasiInterpolant& q, double p,
                       const MultiIndex& sigma, Exec exec, int density, Eval&& eval) {
  if (!(p >= 1.0)) throw std::invalid_argument("norm exponent must be at least 1");
  const SplineSpace& s = q.spline_space();
  std::vector<double> partials(s.mesh.size());
  for_range(s.mesh.size(), exec, [&](std::size_t e) {
    const ElementRule rule = element_rule(s.mesh.element(e), s.degree, p, density);
    std::vector<double> values = eval(e, rule.nodes);
    std::vector<std::size_t> idx(rule.nodes.size(), 0);
    std::vector<double> x(rule.nodes.size());
    std::size_t k = 0;
    do {
      for (std::size_t i = 0; i < x.size(); ++i) x[i] = rule.nodes[i][idx[i]];
      values[k] = f.d(sigma, x) - values[k];
      ++k;
    } while (next_index(idx, rule.nodes));
    partials[e] = reduce_element(rule, values, p);
  });
  return combine(partials, p);
}

}  // namespace

std::vector<double> apply_quasi_interp(const QuasiInterpolant& q, const ScalarField& f, Exec exec) {
  std::vector<double> c(q.size());
  const Breakpoints& lines = q.spline_space().mesh.breakpoints();
  for_range(q.size(), exec, [&](std::size_t i) { c[i] = apply_functional(q.functionals[i], f, lines); });
  return c;
}

double eval_quasi_interp(const QuasiInterpolant& q, std::span<const double> coeffs,
                         std::span<const double> x, const MultiIndex& sigma) {
  const SplineSpace& s = q.spline_space();
  const auto e = s.mesh.locate(x);
  if (!e) throw std::out_of_range("point outside the mesh");
  const Box& element = s.mesh.element(*e);
  double v = 0.0;
  for (std::size_t g : q.sets.active[*e])
    if (coeffs[g] != 0.0) v += coeffs[g] * s.generators[g].derivative_in(x, sigma, element);
  return v;
}

std::vector<double> eval_on_element(const QuasiInterpolant& q, std::span<const double> coeffs,
                                    std::size_t element, const std::vector<std::vector<double>>& nodes,
                                    const MultiIndex& sigma) {
  const SplineSpace& s = q.spline_space();
  const Box& el = s.mesh.element(element);
  const std::size_t n = nodes.size();
  std::vector<double> out(grid_size(nodes), 0.0);
  std::vector<std::vector<double>> vals(n);
  std::vector<std::size_t> idx(n);
  for (std::size_t g : q.sets.active[element]) {
    if (coeffs[g] == 0.0) continue;
    for (const auto& term : s.generators[g].shape) {
      bool zero = false;
      for (std::size_t i = 0; i < n && !zero; ++i) {
        vals[i].resize(nodes[i].size());
        bool any = false;
        for (std::size_t k = 0; k < nodes[i].size(); ++k) {
          const double x = nodes[i][k];
          vals[i][k] = bspline_derivative(term.spline.axis(i), x, sigma[i], x >= el.hi(i));
          any = any || vals[i][k] != 0.0;
        }
        zero = !any;
      }
      if (zero) continue;
      const double scale = coeffs[g] * term.coefficient;
      std::fill(idx.begin(), idx.end(), 0);
      std::size_t k = 0;
      do {
        double v = scale;
        for (std::size_t i = 0; i < n; ++i) v *= vals[i][idx[i]];
        out[k++] += v;
      } while (next_index(idx, nodes));
    }
  }
  return out;
}

std::vector<double> eval_on_element_reference(const QuasiInterpolant& q, std::span<const double> coeffs,
                                              std::size_t element,
                                              const std::vector<std::vector<double>>& nodes,
                                              const MultiIndex& sigma) {
  const SplineSpace& s = q.spline_space();
  const Box& el = s.mesh.element(element);
  const std::size_t n = nodes.size();
  std::vector<double> out;
  std::vector<std::size_t> idx(n, 0);
  std::vector<double> x(n);
  do {
    for (std::size_t i = 0; i < n; ++i) x[i] = nodes[i][idx[i]];
    double v = 0.0;
    for (std::size_t g : q.sets.active[element])
      if (coeffs[g] != 0.0) v += coeffs[g] * s.generators[g].derivative_in(x, sigma, el);
    out.push_back(v);
  } while (next_index(idx, nodes));
  return out;
}

std::vector<double> lattice(double lo, double hi, int count) {
  if (count < 2) throw std::invalid_argument("lattice needs at least two points");
  std::vector<double> x(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) x[k] = lo + (hi - lo) * k / (count - 1);
  x.back() = hi;
  return x;
}

int lattice_count(const MultiIndex& degree, int density) {
  if (density < 1) throw std::invalid_argument("lattice density must be positive");
  return (2 * degree.max_entry() + 4) * density + 1;
}

int error_quadrature_order(const MultiIndex& degree) { return degree.max_entry() + 3; }

double error_norm(const FunctionOracle& f, const QuasiInterpolant& q, std::span<const double> coeffs,
                  double p, const MultiIndex& sigma, Exec exec, int density) {
  return error_norm_impl(f, q, p, sigma, exec, density,
                         [&](std::size_t e, const std::vector<std::vector<double>>& nodes) {
                           return eval_on_element(q, coeffs, e, nodes, sigma);
                         });
}

double error_norm_reference(const FunctionOracle& f, const QuasiInterpolant& q,
                            std::span<const double> coeffs, double p, const MultiIndex& sigma,
                            int density) {
  return error_norm_impl(f, q, p, sigma, Exec::serial, density,
                         [&](std::size_t e, const std::vector<std::vector<double>>& nodes) {
                           return eval_on_element_reference(q, coeffs, e, nodes, sigma);
                         });
}

double rhs_seminorm(const FunctionOracle& f, const QuasiInterpolant& q, const IndexSet& K,
                    const MultiIndex& sigma, double p, double q_exp, SeminormWeight weight, Exec exec) {
  if (!(q_exp >= 1.0) || !(p >= 1.0)) throw std::invalid_argument("norm exponents must be at least 1");
  const SplineSpace& s = q.spline_space();
  const std::size_t n = s.dimension();
  const double nu_minus = std::min(0.0, reciprocal(p) - reciprocal(q_exp));
  const std::vector<MultiIndex> ks(K.begin(), K.end());
  // partials[e * |K| + j] holds the contribution of k_j on element e.
  std::vector<double> partials(s.mesh.size() * ks.size());
  for_range(s.mesh.size(), exec, [&](std::size_t e) {
    const ElementRule rule = element_rule(s.mesh.element(e), s.degree, q_exp, 1);
    std::vector<double> h_phi(n, 0.0);
    for (std::size_t g : q.sets.extended[e]) {
      const auto h = q.esupps[g].size();
      for (std::size_t i = 0; i < n; ++i) h_phi[i] = std::max(h_phi[i], h[i]);
    }
    std::vector<double> values(grid_size(rule.nodes));
    std::vector<double> x(n);
    for (std::size_t j = 0; j < ks.size(); ++j) {
      const MultiIndex& k = ks[j];
      double w = 0.0;
      if (weight == SeminormWeight::anisotropic) {
        w = 1.0;
        for (std::size_t i = 0; i < n; ++i) w *= std::pow(h_phi[i], k[i]);
      } else {
        for (std::size_t g : q.sets.extended[e]) {
          const auto h = q.esupps[g].size();
          double v = 1.0;
          for (std::size_t i = 0; i < n; ++i) v *= std::pow(h[i], k[i] - sigma[i] + nu_minus);
          w = std::max(w, v);
        }
      }
      std::vector<std::size_t> idx(n, 0);
      std::size_t m = 0;
      do {
        for (std::size_t i = 0; i < n; ++i) x[i] = rule.nodes[i][idx[i]];
        values[m++] = w * f.d(k, x);
      } while (next_index(idx, rule.nodes));
      partials[e * ks.size() + j] = reduce_element(rule, values, q_exp);
    }
  });
  double total = 0.0;
  for (std::size_t j = 0; j < ks.size(); ++j) {
    std::vector<double> column(s.mesh.size());
    for (std::size_t e = 0; e < s.mesh.size(); ++e) column[e] = partials[e * ks.size() + j];
    total += combine(column, q_exp);
  }
  return total;
}

}  // namespace boxqi
