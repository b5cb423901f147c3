#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "boxqi/function_oracle.hpp"
#include "boxqi/kernels.hpp"
#include "boxqi/polynomial.hpp"
#include "boxqi/quasi_interpolant.hpp"
#include "boxqi/space_file.hpp"

namespace boxqi::testing {

inline std::filesystem::path config_path(const std::string& name) {
  return std::filesystem::path(BOXQI_CONFIG_DIR) / name;
}

inline SpaceDescription fixture(const std::string& name) { return load_space(config_path("spaces/" + name)); }

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Random coefficients in [-1, 1] for every monomial x^alpha, alpha <= dvec.
inline Polynomial random_polynomial(const MultiIndex& dvec, std::mt19937_64& rng) {
  Polynomial g(dvec.size());
  for (const auto& alpha : IndexSet::box(dvec)) g.add_term(alpha, uniform(rng, -1.0, 1.0));
  return g;
}

inline FunctionOracle polynomial_oracle(const Polynomial& g) {
  FunctionOracle f;
  f.value = [g](std::span<const double> x) { return g(x); };
  f.derivative = [g](const MultiIndex& a, std::span<const double> x) { return g.derivative(a)(x); };
  f.smoothness = 64;
  return f;
}

// Points of the count^n equispaced lattice on a box, one vector per point.
inline std::vector<std::vector<double>> box_lattice(const Box& box, int count) {
  const std::size_t n = box.dimension();
  std::vector<std::vector<double>> axes;
  for (std::size_t i = 0; i < n; ++i) axes.push_back(lattice(box.lo(i), box.hi(i), count));
  std::vector<std::vector<double>> pts;
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = axes[i][idx[i]];
    pts.push_back(std::move(x));
    std::size_t i = n;
    while (i > 0 && ++idx[i - 1] == axes[i - 1].size()) idx[--i] = 0;
    if (i == 0) break;
  }
  return pts;
}

struct LatticeDiscrepancy {
  double max_diff = 0.0;
  double max_value = 0.0;
};

// max |f - Q f| and max |f| over the lattice on the domain.
inline LatticeDiscrepancy reproduction_error(const QuasiInterpolant& q, const ScalarField& f, int count) {
  const auto coeffs = apply_quasi_interp(q, f);
  const MultiIndex zero(q.spline_space().dimension(), 0);
  LatticeDiscrepancy d;
  for (const auto& x : box_lattice(q.spline_space().domain, count)) {
    const double v = f(x);
    d.max_value = std::max(d.max_value, std::abs(v));
    d.max_diff = std::max(d.max_diff, std::abs(v - eval_quasi_interp(q, coeffs, x, zero)));
  }
  return d;
}

// Random univariate knot vector of degree d on a coarse grid of [0, 1], so
// that repeated knots occur. Multiplicities stay <= d + 1.
inline KnotVector random_knots(int d, std::mt19937_64& rng, int grid = 10) {
  std::uniform_int_distribution<int> pick(0, grid);
  while (true) {
    std::vector<double> t;
    for (int k = 0; k < d + 2; ++k) t.push_back(pick(rng) / static_cast<double>(grid));
    std::sort(t.begin(), t.end());
    if (t.front() == t.back()) continue;
    bool ok = true;
    for (std::size_t k = 0; k < t.size(); ++k)
      if (std::count(t.begin(), t.end(), t[k]) > d + 1) ok = false;
    if (ok) return KnotVector(t, d);
  }
}

}  // namespace boxqi::testing
