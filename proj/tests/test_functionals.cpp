#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>

#include <boost/multiprecision/cpp_int.hpp>

#include "boxqi/functionals.hpp"
#include "boxqi/hilbert.hpp"
#include "boxqi/polynomial.hpp"
#include "boxqi/quadrature.hpp"
#include "boxqi/quasi_interpolant.hpp"
#include "support.hpp"

using namespace boxqi;
using namespace boxqi::testing;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ScalarField as_field(const Polynomial& g) {
  return [g](std::span<const double> x) { return g(x); };
}

// Random box of relative width in [0.25, 1] inside the support of phi.
Box random_eta(const TensorBSpline& phi, std::mt19937_64& rng) {
  std::vector<double> lo, hi;
  for (const auto& kv : phi.axes()) {
    const double w = uniform(rng, 0.25, 1.0) * kv.width();
    const double a = uniform(rng, kv.front(), kv.back() - w);
    lo.push_back(a);
    hi.push_back(a + w);
  }
  return Box(lo, hi);
}

// ||f||_p on a box by a fine tensor Gauss rule; sampling for p = inf.
double box_norm(const ScalarField& f, const Box& b, double p) {
  const QuadratureRule r = gauss_legendre(24, b);
  double s = 0.0;
  for (std::size_t k = 0; k < r.weights.size(); ++k) {
    const double v = std::abs(f(r.nodes[k]));
    s = std::isinf(p) ? std::max(s, v) : s + r.weights[k] * std::pow(v, p);
  }
  return std::isinf(p) ? s : std::pow(s, 1.0 / p);
}

}  // namespace

TEST_CASE("Hilbert inverse examples") {
  CHECK(hilbert_inverse(0) == IntegerMatrix{{1}});
  CHECK(hilbert_inverse(1) == IntegerMatrix{{4, -6}, {-6, 12}});
  CHECK(hilbert_inverse_norm(1) == 18.0);
  CHECK_THROWS(hilbert_inverse(kMaxHilbertDegree + 1));
}

TEST_CASE("Hilbert inverse is exact") {
  using boost::multiprecision::cpp_rational;
  for (int d = 0; d <= kMaxHilbertDegree; ++d) {
    const IntegerMatrix inv = hilbert_inverse(d);
    for (int i = 0; i <= d; ++i)
      for (int k = 0; k <= d; ++k) {
        cpp_rational s = 0;
        for (int j = 0; j <= d; ++j) s += cpp_rational(inv[i][j]) / cpp_rational(j + k + 1);
        CHECK(s == cpp_rational(i == k ? 1 : 0));
      }
  }
}

TEST_CASE("Hilbert solve") {
  for (int d = 0; d <= 6; ++d) {
    // b = H e_0 has entries 1/(i+1).
    std::vector<double> b(d + 1);
    for (int i = 0; i <= d; ++i) b[i] = 1.0 / (i + 1);
    const auto x = hilbert_solve(d, b);
    // Error scales with the condition number.
    const double tol = 1e-14 * hilbert_inverse_norm(d);
    for (int i = 0; i <= d; ++i) CHECK(std::abs(x[i] - (i == 0 ? 1.0 : 0.0)) <= tol);
  }
}

TEST_CASE("Gauss-Legendre rules") {
  const QuadratureRule r = gauss_legendre(2, Box({0}, {1}));
  double cubic = 0.0, quartic = 0.0, wsum = 0.0;
  for (std::size_t k = 0; k < r.weights.size(); ++k) {
    const double x = r.nodes[k][0];
    cubic += r.weights[k] * x * x * x;
    quartic += r.weights[k] * x * x * x * x;
    wsum += r.weights[k];
  }
  CHECK(cubic == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(std::abs(quartic - 0.2) > 1e-4);
  CHECK(wsum == doctest::Approx(1.0).epsilon(1e-15));

  const Box b({-1, 2, 0}, {3, 2.5, 0.1});
  for (int order = 1; order <= 12; ++order) {
    const QuadratureRule q = gauss_legendre(order, b);
    double s = 0.0;
    for (double w : q.weights) s += w;
    CHECK(std::abs(s - b.measure()) <= 1e-13 * b.measure());
  }
}

TEST_CASE("G reproduces blossoms") {
  std::mt19937_64 rng(31);
  for (int k = 0; k < 60; ++k) {
    const std::size_t n = 1 + k % 2;
    std::vector<KnotVector> axes;
    for (std::size_t i = 0; i < n; ++i) axes.push_back(random_knots((k / 2) % 6, rng));
    const TensorBSpline phi(axes);
    const GFunctional g = build_G(phi, random_eta(phi, rng));
    Polynomial one(n);
    one.add_term(MultiIndex(n, 0), 1.0);
    CHECK(g.apply(as_field(one)) == doctest::Approx(1.0).epsilon(1e-12));
    for (int j = 0; j < 50; ++j) {
      const Polynomial p = random_polynomial(phi.degree(), rng);
      CHECK(std::abs(g.apply(as_field(p)) - blossom(p, phi)) <= 1e-10);
    }
    CHECK(g.apply([](std::span<const double>) { return 0.0; }) == 0.0);
  }
}

TEST_CASE("monomial weights agree with the Legendre weights") {
  std::mt19937_64 rng(32);
  for (int k = 0; k < 40; ++k) {
    const TensorBSpline phi({random_knots(k % 6, rng)});
    const Box eta = random_eta(phi, rng);
    const GFunctional g(phi, eta);
    const auto c = monomial_weight_coefficients(phi, eta, 0);
    for (int j = 0; j <= 10; ++j) {
      const double x = eta.lo(0) + eta.width(0) * j / 10.0;
      const double t = (x - eta.lo(0)) / eta.width(0);
      double w = 0.0;
      for (std::size_t i = c.size(); i-- > 0;) w = w * t + c[i];
      CHECK(w == doctest::Approx(g.weight(0, x)).epsilon(1e-8).scale(1.0));
    }
  }
}

TEST_CASE("functionals are biorthogonal to tensor B-splines") {
  for (int d = 1; d <= 4; ++d) {
    std::vector<double> br = {0.0, 0.2, 0.3, 0.6, 0.65, 1.0};
    const auto kv = OpenKnotVector::from_breakpoints(br, d);
    const QuasiInterpolant q = assign_functionals(build_tps({kv, kv}));
    const auto& gens = q.spline_space().generators;
    const Breakpoints lines = q.spline_space().mesh.breakpoints();
    for (std::size_t psi = 0; psi < gens.size(); ++psi) {
      const ScalarField f = [&](std::span<const double> x) { return gens[psi].value(x); };
      for (std::size_t phi = 0; phi < gens.size(); ++phi)
        CHECK(std::abs(apply_functional(q.functionals[phi], f, lines) - (phi == psi ? 1.0 : 0.0)) <= 1e-10);
    }
  }
}

TEST_CASE("composite functionals are linear") {
  const TensorBSpline a({KnotVector({0, 1, 2, 3}, 2)}), b({KnotVector({0, 0.5, 1, 2.5}, 2)});
  const DualFunctional lam({{0.7, GFunctional(a, Box({1}, {2}))}, {-0.2, GFunctional(b, Box({0.5}, {2}))}});
  CHECK_FALSE(lam.is_simple());
  CHECK(lam.support() == Box({0.5}, {2}));
  CHECK(DualFunctional(GFunctional(a, Box({1}, {2}))).is_simple());
  std::mt19937_64 rng(33);
  for (int k = 0; k < 50; ++k) {
    const double s = uniform(rng, 0.1, 4.0), c1 = uniform(rng, -2, 2), c2 = uniform(rng, -2, 2);
    const ScalarField f = [s](std::span<const double> x) { return std::sin(s * x[0]); };
    const ScalarField g = [s](std::span<const double> x) { return std::exp(-s * x[0]); };
    const ScalarField h = [&](std::span<const double> x) { return c1 * f(x) + c2 * g(x); };
    CHECK(std::abs(apply_functional(lam, h) - c1 * apply_functional(lam, f) - c2 * apply_functional(lam, g)) <= 1e-12);
  }
}

TEST_CASE("functional norm bound") {
  for (int d = 0; d <= 6; ++d) {
    std::vector<double> t;
    for (int k = 0; k <= d + 1; ++k) t.push_back(0.25 * k);
    const TensorBSpline phi({KnotVector(t, d)});
    const Box full({0.0}, {0.25 * (d + 1)});
    const GFunctional g(phi, full);
    CHECK(functional_norm_bound(g, kInf) == doctest::Approx((d + 1) * hilbert_inverse_norm(d)));
    const Box half({0.0}, {0.125 * (d + 1)});
    for (double p : {1.0, 2.0, kInf}) {
      const double ip = std::isinf(p) ? 0.0 : 1.0 / p;
      CHECK(functional_norm_bound(GFunctional(phi, half), p) ==
            doctest::Approx(functional_norm_bound(GFunctional(phi, full), p) * std::pow(2.0, d + ip)));
    }
  }
}

TEST_CASE("sampled functional values respect the norm bound") {
  std::mt19937_64 rng(34);
  for (int k = 0; k < 40; ++k) {
    const TensorBSpline phi({random_knots(1 + k % 4, rng), random_knots(k % 3, rng)});
    const Box eta = random_eta(phi, rng);
    const GFunctional g(phi, eta);
    const ScalarField spline = [&](std::span<const double> x) { return phi(x); };
    for (double p : {1.0, 2.0, kInf}) {
      // ||phi||_p by quadrature on the cells of its knot grid.
      double phi_norm = 0.0;
      const auto& t0 = phi.axis(0).knots();
      const auto& t1 = phi.axis(1).knots();
      for (std::size_t a = 0; a + 1 < t0.size(); ++a)
        for (std::size_t b = 0; b + 1 < t1.size(); ++b) {
          if (!(t0[a + 1] > t0[a] && t1[b + 1] > t1[b])) continue;
          const double v = box_norm(spline, Box({t0[a], t1[b]}, {t0[a + 1], t1[b + 1]}), p);
          phi_norm = std::isinf(p) ? std::max(phi_norm, v) : phi_norm + std::pow(v, p);
        }
      if (!std::isinf(p)) phi_norm = std::pow(phi_norm, 1.0 / p);
      const double dual = functional_norm_bound(g, p) / phi_norm;
      for (int j = 0; j < 10; ++j) {
        const double w0 = uniform(rng, 1, 30), w1 = uniform(rng, 1, 30), s = uniform(rng, 0, 6);
        const ScalarField f = [=](std::span<const double> x) { return std::sin(w0 * x[0] + s) * std::cos(w1 * x[1]); };
        CHECK(std::abs(g.apply(f)) <= dual * box_norm(f, eta, p) * (1.0 + 1e-6));
      }
    }
  }
}
