// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "boxqi/bspline.hpp"
#include "boxqi/functionals.hpp"
#include "boxqi/hilbert.hpp"
#include "boxqi/kernels.hpp"
#include "boxqi/lr_functional.hpp"
#include "boxqi/multiindex.hpp"
#include "boxqi/polynomial.hpp"
#include "boxqi/quadrature.hpp"
#include "boxqi/quasi_interpolant.hpp"
#include "boxqi/regularity.hpp"
#include "boxqi/space_file.hpp"
#include "boxqi/studies.hpp"
#include "boxqi/taylor.hpp"
#include "boxqi/test_functions.hpp"
#include "support.hpp"

using namespace boxqi;
using namespace boxqi::testing;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

void note(Outcome& o, bool ok, const std::string& what) {
  if (!ok) {
    o.pass = false;
    o.detail += (o.detail.empty() ? "" : "; ") + what;
  }
}

// Polynomial reproduction on TPS, THB and LR spaces.
Outcome polynomial_reproduction() {
  Outcome o;
  std::mt19937_64 rng(101);
  double worst = 0.0;
  auto run = [&](const SplineSpace& space, const std::string& label) {
    const QuasiInterpolant q = assign_functionals(space);
    for (int k = 0; k < 20; ++k) {
      const Polynomial g = random_polynomial(space.degree, rng);
      const auto d = reproduction_error(q, [&](std::span<const double> x) { return g(x); }, 41);
      const double rel = d.max_diff / (1.0 + d.max_value);
      worst = std::max(worst, rel);
      if (rel > 1e-9) {
        note(o, false, label + " error " + fmt("%.3e", rel));
        return;
      }
    }
  };
  const std::vector<double> br1 = {0.0, 0.15, 0.4, 0.5, 0.8, 1.0};
  for (int d = 1; d <= 4; ++d)
    run(build_tps({OpenKnotVector::from_breakpoints(br1, d)}), "tps n=1 d=" + std::to_string(d));
  const std::vector<double> br2 = {0.0, 0.3, 0.5, 0.9, 1.0};
  for (int d0 = 1; d0 <= 4; ++d0)
    for (int d1 = 1; d1 <= 4; ++d1)
      run(build_tps({OpenKnotVector::from_breakpoints(br1, d0), OpenKnotVector::from_breakpoints(br2, d1)}),
          "tps n=2 d=(" + std::to_string(d0) + "," + std::to_string(d1) + ")");
  for (int d = 1; d <= 3; ++d) {
    run(fixture("thb_two_level.json").with_degree(MultiIndex(2, d)).build(), "thb d=" + std::to_string(d));
    run(fixture("lr_nested.json").with_degree(MultiIndex(2, d)).build(), "lr nested d=" + std::to_string(d));
    run(fixture("lr_cross.json").with_degree(MultiIndex(2, d)).build(), "lr cross d=" + std::to_string(d));
  }
  if (o.pass) o.detail = "max relative error " + fmt("%.3e", worst) + " <= 1e-9";
  return o;
}

ScalarField random_smooth(std::mt19937_64& rng) {
  const double a = uniform(rng, 0.5, 3.0), b = uniform(rng, -1.0, 1.0), c = uniform(rng, -1.5, 1.5);
  const double s = uniform(rng, 0.0, 3.0);
  return [=](std::span<const double> x) { return std::sin(a * x[0] + b) * std::exp(c * x[1]) + s * x[0] * x[1]; };
}

// Biorthogonality and idempotence on a uniform biquadratic 6x6 mesh.
Outcome tps_projector() {
  Outcome o;
  std::vector<double> br;
  for (int k = 0; k <= 6; ++k) br.push_back(k / 6.0);
  const auto knots = OpenKnotVector::from_breakpoints(br, 2);
  const QuasiInterpolant q = assign_functionals(build_tps({knots, knots}));
  const auto& gens = q.spline_space().generators;
  const Breakpoints lines = q.spline_space().mesh.breakpoints();
  double worst_dual = 0.0;
  for (std::size_t psi = 0; psi < gens.size(); ++psi) {
    const ScalarField f = [&](std::span<const double> x) { return gens[psi].value(x); };
    for (std::size_t phi = 0; phi < gens.size(); ++phi) {
      const double v = apply_functional(q.functionals[phi], f, lines);
      worst_dual = std::max(worst_dual, std::abs(v - (phi == psi ? 1.0 : 0.0)));
    }
  }
  note(o, worst_dual <= 1e-10, "biorthogonality error " + fmt("%.3e", worst_dual));

  std::mt19937_64 rng(202);
  double worst_idem = 0.0;
  for (int k = 0; k < 20; ++k) {
    const auto c1 = apply_quasi_interp(q, random_smooth(rng));
    const MultiIndex zero(2, 0);
    const ScalarField spline = [&](std::span<const double> x) { return eval_quasi_interp(q, c1, x, zero); };
    const auto c2 = apply_quasi_interp(q, spline);
    for (std::size_t i = 0; i < c1.size(); ++i) worst_idem = std::max(worst_idem, std::abs(c1[i] - c2[i]));
  }
  note(o, worst_idem <= 1e-9, "idempotence error " + fmt("%.3e", worst_idem));
  if (o.pass)
    o.detail = "biorthogonality " + fmt("%.2e", worst_dual) + " <= 1e-10, idempotence " + fmt("%.2e", worst_idem) +
               " <= 1e-9 over " + std::to_string(gens.size()) + " generators";
  return o;
}

// Fitted h-orders of the sup-norm error on a sine product.
Outcome h_convergence() {
  Outcome o;
  std::string summary;
  for (int d = 1; d <= 3; ++d) {
    for (int s = 0; s <= 1; ++s) {
      StudyConfig cfg;
      cfg.space = fixture("tps_unit.json");
      cfg.function = "sin_prod";
      cfg.p = cfg.q = kInf;
      cfg.degree = MultiIndex(2, d);
      cfg.sigma = MultiIndex{s, 0};
      cfg.level_min = 4;
      cfg.level_max = 8;
      const StudyResult r = run_h_study(cfg);
      const double order = r.summary.at(0).second;
      const double lo = s == 0 ? d + 0.75 : d - 0.3, hi = s == 0 ? d + 1.25 : d + 0.3;
      const std::string tag = "d=" + std::to_string(d) + (s ? " sigma=(1,0)" : " sigma=0");
      note(o, order >= lo && order <= hi, tag + " order " + fmt("%.3f", order));
      summary += (summary.empty() ? "" : ", ") + tag + ": " + fmt("%.3f", order);
    }
  }
  if (o.pass) o.detail = summary;
  return o;
}

// Exponential decay of the sup-norm error in the degree on a fixed mesh.
Outcome p_convergence() {
  Outcome o;
  StudyConfig cfg;
  cfg.space = fixture("tps_4x4.json");
  cfg.function = "exp_sum";
  cfg.p = cfg.q = kInf;
  cfg.degree_min = 2;
  cfg.degree_max = 8;
  const StudyResult r = run_p_study(cfg);
  std::string errors;
  std::vector<double> d, logerr;
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const double e = r.rows[i][2];
    errors += (errors.empty() ? "" : " ") + fmt("%.2e", e);
    if (e > 1e-13) {
      d.push_back(r.rows[i][0]);
      logerr.push_back(std::log10(e));
    }
    if (i == 0) continue;
    const double prev = r.rows[i - 1][2];
    const std::string tag = "d=" + fmt("%.0f", r.rows[i][0]);
    note(o, e < prev, tag + " not decreasing");
    note(o, e / prev <= 0.5, tag + " ratio " + fmt("%.3f", e / prev));
  }
  const double r2 = d.size() >= 2 ? least_squares(d, logerr).r2 : 0.0;
  note(o, r2 >= 0.97, "R^2 " + fmt("%.4f", r2));
  o.detail = (o.pass ? "R^2 " + fmt("%.4f", r2) + ", " : o.detail + "; ") + "errors d=2..8: " + errors;
  return o;
}

// phi = a hat + b tilde for random knot vectors and insertion points.
Outcome knot_insertion() {
  Outcome o;
  std::mt19937_64 rng(505);
  double worst = 0.0;
  for (int c = 0; c < 200; ++c) {
    const int d = std::uniform_int_distribution<int>(0, 5)(rng);
    const KnotVector phi = random_knots(d, rng);
    double t = uniform(rng, phi.front(), phi.back());
    if (c % 4 == 0) {
      for (double k : phi.interior())
        if (k > phi.front() && k < phi.back()) t = k;
    }
    if (!(t > phi.front() && t < phi.back())) t = 0.5 * (phi.front() + phi.back());
    const KnotInsertion ins = knot_insert(phi, t);
    if (!(ins.a > 0.0 && ins.a <= 1.0 && ins.b > 0.0 && ins.b <= 1.0)) note(o, false, "coefficient outside (0,1]");
    for (int k = 0; k < 100; ++k) {
      const double x = uniform(rng, phi.front(), phi.back());
      const double r = bspline_eval(phi, x) - ins.a * bspline_eval(ins.hat, x) - ins.b * bspline_eval(ins.tilde, x);
      worst = std::max(worst, std::abs(r));
    }
  }
  note(o, worst <= 1e-12, "residual " + fmt("%.3e", worst));
  if (o.pass) o.detail = "200 cases, max residual " + fmt("%.2e", worst) + ", a,b in (0,1]";
  return o;
}

// Quadrature p-norm of a univariate B-spline, piece by piece.
double univariate_norm(const KnotVector& phi, double p) {
  const auto& t = phi.knots();
  if (std::isinf(p)) {
    double best = 0.0;
    for (std::size_t j = 0; j + 1 < t.size(); ++j) {
      if (!(t[j + 1] > t[j])) continue;
      // Piecewise polynomial: dense sampling, then golden-section refinement
      // around the best sample of each piece.
      const int m = 400;
      double bx = t[j], bv = -1.0;
      for (int k = 0; k <= m; ++k) {
        const double x = t[j] + (t[j + 1] - t[j]) * k / m;
        const double v = bspline_derivative(phi, x, 0, k == m);
        if (v > bv) {
          bv = v;
          bx = x;
        }
      }
      double lo = std::max(t[j], bx - (t[j + 1] - t[j]) / m), hi = std::min(t[j + 1], bx + (t[j + 1] - t[j]) / m);
      const double g = 0.5 * (std::sqrt(5.0) - 1.0);
      for (int it = 0; it < 80; ++it) {
        const double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
        if (bspline_derivative(phi, x1, 0, true) < bspline_derivative(phi, x2, 0, true))
          lo = x1;
        else
          hi = x2;
      }
      best = std::max({best, bv, bspline_derivative(phi, 0.5 * (lo + hi), 0, true)});
    }
    return best;
  }
  double s = 0.0;
  for (std::size_t j = 0; j + 1 < t.size(); ++j) {
    if (!(t[j + 1] > t[j])) continue;
    const auto rule = gauss_legendre(12, Box({t[j]}, {t[j + 1]}));
    for (std::size_t k = 0; k < rule.weights.size(); ++k)
      s += rule.weights[k] * std::pow(std::abs(bspline_eval(phi, rule.nodes[k][0])), p);
  }
  return std::pow(s, 1.0 / p);
}

// Quadrature norm of a bivariate tensor B-spline over its support cells.
double bivariate_norm(const TensorBSpline& phi, double p) {
  if (std::isinf(p)) return univariate_norm(phi.axis(0), p) * univariate_norm(phi.axis(1), p);
  double s = 0.0;
  const auto& t0 = phi.axis(0).knots();
  const auto& t1 = phi.axis(1).knots();
  for (std::size_t a = 0; a + 1 < t0.size(); ++a) {
    if (!(t0[a + 1] > t0[a])) continue;
    for (std::size_t b = 0; b + 1 < t1.size(); ++b) {
      if (!(t1[b + 1] > t1[b])) continue;
      const auto rule = gauss_legendre(12, Box({t0[a], t1[b]}, {t0[a + 1], t1[b + 1]}));
      for (std::size_t k = 0; k < rule.weights.size(); ++k)
        s += rule.weights[k] * std::pow(std::abs(phi(rule.nodes[k])), p);
    }
  }
  return std::pow(s, 1.0 / p);
}

// ||phi||_p between the closed-form lower and upper bounds.
Outcome norm_sandwich() {
  Outcome o;
  std::mt19937_64 rng(606);
  const std::vector<double> ps = {1.0, 2.0, kInf};
  double slack = kInf;
  // h^{1/p} / (d+1) <= ||phi||_p <= h^{1/p} / (d+1)^{1/p}, per axis.
  auto formula = [](const TensorBSpline& phi, double p) {
    NormBounds b{1.0, 1.0};
    for (const auto& kv : phi.axes()) {
      const double ip = std::isinf(p) ? 0.0 : 1.0 / p;
      b.lower *= std::pow(kv.width(), ip) / (kv.degree() + 1);
      b.upper *= std::pow(kv.width(), ip) / std::pow(kv.degree() + 1, ip);
    }
    return b;
  };
  double bound_gap = 0.0;
  auto check = [&](const TensorBSpline& phi, double v, double p, const std::string& what) {
    const NormBounds b = formula(phi, p);
    const NormBounds lib = norm_bounds(phi, p);
    bound_gap = std::max({bound_gap, std::abs(lib.lower - b.lower), std::abs(lib.upper - b.upper)});
    slack = std::min({slack, v - b.lower, b.upper - v});
    if (v < b.lower - 1e-8 || v > b.upper + 1e-8)
      note(o, false, what + " norm " + fmt("%.6g", v) + " outside [" + fmt("%.6g", b.lower) + ", " + fmt("%.6g", b.upper) + "]");
  };
  for (int c = 0; c < 100; ++c) {
    const int d = c % 6;
    const TensorBSpline phi({random_knots(d, rng)});
    for (double p : ps) check(phi, univariate_norm(phi.axis(0), p), p, "univariate");
  }
  for (int c = 0; c < 20; ++c) {
    const TensorBSpline phi({random_knots(c % 6, rng), random_knots((c / 6) % 6, rng)});
    for (double p : ps) check(phi, bivariate_norm(phi, p), p, "tensor");
  }
  note(o, bound_gap <= 1e-12, "norm_bounds differs from the closed form by " + fmt("%.3e", bound_gap));
  if (o.pass) o.detail = "100 univariate + 20 tensor cases x p in {1,2,inf}, min slack " + fmt("%.2e", slack);
  return o;
}

// (1/|eta|) int_eta w(x) x^i dx with the monomial weight from the Hilbert route.
double hilbert_route_moment(const TensorBSpline& phi, const Box& eta, int i) {
  const auto c = monomial_weight_coefficients(phi, eta, 0);
  const auto rule = gauss_legendre(phi.axis(0).degree() + 4, eta);
  long double s = 0.0L;
  for (std::size_t k = 0; k < rule.weights.size(); ++k) {
    const double x = rule.nodes[k][0];
    const long double t = (static_cast<long double>(x) - eta.lo(0)) / eta.width(0);
    long double w = 0.0L;
    for (std::size_t j = c.size(); j-- > 0;) w = w * t + c[j];
    s += rule.weights[k] * w * std::pow(static_cast<long double>(x), i);
  }
  return static_cast<double>(s / eta.width(0));
}

// Exact Hilbert inverses and duality of G with the blossom.
Outcome hilbert_algebra() {
  using boost::multiprecision::cpp_rational;
  Outcome o;
  for (int d = 0; d <= 8; ++d) {
    const IntegerMatrix inv = hilbert_inverse(d);
    bool identity = true;
    for (int i = 0; i <= d; ++i)
      for (int k = 0; k <= d; ++k) {
        cpp_rational s = 0;
        for (int j = 0; j <= d; ++j) s += cpp_rational(inv[j][k]) / cpp_rational(i + j + 1);
        identity = identity && s == cpp_rational(i == k ? 1 : 0);
      }
    note(o, identity, "H*H^-1 != I for d=" + std::to_string(d));
  }
  std::mt19937_64 rng(707);
  double worst = 0.0, worst_hilbert = 0.0;
  for (int c = 0; c < 50; ++c) {
    const int d = c % 6;
    const TensorBSpline phi({random_knots(d, rng)});
    const double h = phi.axis(0).width();
    const double w = uniform(rng, 0.25, 1.0) * h;
    const double a = uniform(rng, phi.axis(0).front(), phi.axis(0).back() - w);
    const Box eta({a}, {a + w});
    const GFunctional g = build_G(phi, eta);
    for (int i = 0; i <= d; ++i) {
      const Polynomial mono = Polynomial::monomial(MultiIndex{i});
      const double exact = blossom(mono, phi);
      const double v = g.apply([&](std::span<const double> x) { return mono(x); });
      worst = std::max(worst, std::abs(v - exact));
      worst_hilbert = std::max(worst_hilbert, std::abs(hilbert_route_moment(phi, eta, i) - exact));
    }
  }
  note(o, worst <= 1e-10, "G(t^i) error " + fmt("%.3e", worst));
  note(o, worst_hilbert <= 1e-10, "Hilbert-route G(t^i) error " + fmt("%.3e", worst_hilbert));
  if (o.pass)
    o.detail = "H*H^-1 = I exactly for d<=8; G(t^i) error " + fmt("%.2e", worst) + ", Hilbert route " +
               fmt("%.2e", worst_hilbert) + " <= 1e-10";
  return o;
}

// C_# on uniform tensor meshes, thin-strip LR constants, Gamma bounds.
Outcome mesh_constants() {
  Outcome o;
  for (std::size_t n = 1; n <= 3; ++n) {
    for (int d = 1; d <= 3; ++d) {
      std::vector<double> br;
      for (int k = 0; k <= 6; ++k) br.push_back(k / 6.0);
      const QuasiInterpolant q =
          assign_functionals(build_tps(std::vector<OpenKnotVector>(n, OpenKnotVector::from_breakpoints(br, d))));
      const auto rep = regularity_report(q.spline_space().mesh, q.esupps, q.sets, std::vector<double>(n, 0.0), 2.0);
      const auto expected = static_cast<std::size_t>(std::pow(d + 1, static_cast<double>(n)));
      note(o, rep.c_count == expected,
           "C_# = " + std::to_string(rep.c_count) + " for n=" + std::to_string(n) + " d=" + std::to_string(d));
    }
  }
  StudyConfig strip;
  strip.space = fixture("lr_thin_strip.json");
  const StudyResult sr = run_mesh_report(strip);
  double c_o = 0.0, c_a = 0.0;
  for (const auto& [k, v] : sr.summary) {
    if (k == "c_o") c_o = v;
    if (k == "c_a") c_a = v;
  }
  note(o, c_o == 32.0, "thin strip C_O = " + fmt("%.17g", c_o));
  note(o, c_a == 3.0, "thin strip C_A = " + fmt("%.17g", c_a));

  std::size_t bound_checks = 0;
  for (const char* name : {"tps_4x4.json", "tps_graded.json", "tps_line.json", "thb_two_level.json",
                           "lr_thin_strip.json", "lr_nested.json", "lr_cross.json"}) {
    StudyConfig cfg;
    cfg.space = fixture(name);
    for (const auto& c : run_mesh_report(cfg).checks) {
      if (c.name.rfind("gamma>=0", 0) != 0 && c.name.rfind("gamma>=-1/p", 0) != 0 && c.name.rfind("C_m", 0) != 0)
        continue;
      ++bound_checks;
      note(o, c.pass, std::string(name) + " " + c.name + " value " + fmt("%.4g", c.value) + " > " + fmt("%.4g", c.bound));
    }
  }
  if (o.pass)
    o.detail = "C_# = (d+1)^n for n<=3 d<=3; thin strip C_O = 32, C_A = 3; " + std::to_string(bound_checks) +
               " Gamma bound checks pass on 7 fixtures";
  return o;
}

FunctionOracle derivative_of(const FunctionOracle& f, const MultiIndex& sigma) {
  FunctionOracle g;
  g.value = [f, sigma](std::span<const double> x) { return f.d(sigma, x); };
  g.derivative = [f, sigma](const MultiIndex& a, std::span<const double> x) { return f.d(a + sigma, x); };
  g.smoothness = f.smoothness - sigma.order();
  return g;
}

// Averaged Taylor projector, derivative commutation and base(A).
Outcome averaged_taylor_suite() {
  Outcome o;
  std::mt19937_64 rng(909);
  const Box eta({0.2, -0.1}, {0.7, 0.5});
  std::vector<IndexSet> sets;
  for (int d = 1; d <= 4; ++d) sets.push_back(IndexSet::total_degree(2, d));
  sets.push_back(IndexSet::box(MultiIndex{2, 3}));
  sets.push_back(IndexSet::box(MultiIndex{4, 1}));
  double worst_proj = 0.0;
  for (const auto& A : sets) {
    Polynomial g(2);
    for (const auto& a : A) g.add_term(a, uniform(rng, -1.0, 1.0));
    const FunctionOracle f = polynomial_oracle(g);
    for (TaylorWeight w : {TaylorWeight::constant, TaylorWeight::bump}) {
      const Polynomial t = averaged_taylor_polynomial(A, w, eta, f);
      for (int k = 0; k < 20; ++k) {
        const std::vector<double> x = {uniform(rng, -0.5, 1.5), uniform(rng, -0.5, 1.5)};
        worst_proj = std::max(worst_proj, std::abs(t(x) - g(x)));
      }
    }
  }
  note(o, worst_proj <= 1e-10, "projector error " + fmt("%.3e", worst_proj));

  double worst_comm = 0.0;
  for (const char* id : {"sin_prod", "exp_sum", "runge"}) {
    const FunctionOracle f = make_test_function(id, 2);
    for (int d = 1; d <= 4; ++d) {
      const IndexSet A = IndexSet::total_degree(2, d);
      const Polynomial t = averaged_taylor_polynomial(A, TaylorWeight::constant, eta, f);
      for (const auto& sigma : A) {
        const Polynomial lhs = t.derivative(sigma);
        const Polynomial rhs =
            averaged_taylor_polynomial(translate(A, sigma), TaylorWeight::constant, eta, derivative_of(f, sigma));
        for (int k = 0; k < 10; ++k) {
          const std::vector<double> x = {uniform(rng, 0.0, 1.0), uniform(rng, 0.0, 1.0)};
          worst_comm = std::max(worst_comm, std::abs(lhs(x) - rhs(x)));
        }
      }
    }
  }
  note(o, worst_comm <= 1e-8, "commutation error " + fmt("%.3e", worst_comm));

  IndexSet staircase(2);
  for (int x = 0; x <= 3; ++x)
    for (int y = 0; y <= 6; ++y) staircase.insert(MultiIndex{x, y});
  for (int x = 4; x <= 7; ++x)
    for (int y = 0; y <= 3; ++y) staircase.insert(MultiIndex{x, y});
  note(o, base(IndexSet::total_degree(2, 6)) == IndexSet::exact_order(2, 7), "base of |k|<=6");
  note(o, base(IndexSet::box(MultiIndex{4, 5})) == IndexSet(2, {MultiIndex{5, 0}, MultiIndex{0, 6}}), "base of k<=(4,5)");
  note(o, base(staircase) == IndexSet(2, {MultiIndex{8, 0}, MultiIndex{0, 7}, MultiIndex{4, 4}}), "base of staircase");
  note(o, sobolev_K(6, 2, MultiIndex{2, 3}).k_sigma ==
              IndexSet(2, {MultiIndex{2, 5}, MultiIndex{3, 4}, MultiIndex{4, 3}}),
       "Sobolev K_(2,3)");
  note(o, reduced_K(MultiIndex{4, 5}, MultiIndex{0, 0}).k0 == IndexSet(2, {MultiIndex{5, 0}, MultiIndex{0, 6}}),
       "reduced K_0");
  note(o, reduced_K(MultiIndex{4, 5}, MultiIndex{3, 4}).k_sigma == IndexSet(2, {MultiIndex{3, 6}, MultiIndex{5, 4}}),
       "reduced K_(3,4)");
  if (o.pass)
    o.detail = "projector " + fmt("%.2e", worst_proj) + " <= 1e-10, commutation " + fmt("%.2e", worst_comm) +
               " <= 1e-8, base(A) and K sets match the worked examples";
  return o;
}

// Unfolded LR functionals reproduce polynomials; c and z within bounds.
Outcome lr_recursion() {
  Outcome o;
  std::mt19937_64 rng(1010);
  double worst = 0.0;
  std::size_t pairs = 0, nonempty = 0;
  for (const char* name : {"lr_thin_strip.json", "lr_nested.json", "lr_cross.json"}) {
    const QuasiInterpolant q = assign_functionals(fixture(name).build());
    for (std::size_t phi = 0; phi < q.size(); ++phi) {
      const auto& N = q.nesting[phi];
      if (!N.empty()) ++nonempty;
      for (const auto& e : N) {
        ++pairs;
        note(o, e.coefficient > 0.0 && e.coefficient <= 1.0, std::string(name) + " c outside (0,1]");
      }
      const double zbound = std::pow(2.0, static_cast<double>(N.size()) - 1.0);
      for (const auto& [psi, z] : q.z[phi])
        if (psi != phi) note(o, std::abs(z) <= zbound + 1e-12, std::string(name) + " |z| " + fmt("%.3g", z));
    }
    for (int k = 0; k < 20; ++k) {
      const Polynomial g = random_polynomial(q.spline_space().degree, rng);
      const auto d = reproduction_error(q, [&](std::span<const double> x) { return g(x); }, 41);
      worst = std::max(worst, d.max_diff);
    }
  }
  note(o, nonempty > 0, "no fixture with nonempty N_phi");
  note(o, worst <= 1e-9, "reproduction error " + fmt("%.3e", worst));
  if (o.pass)
    o.detail = "reproduction " + fmt("%.2e", worst) + " <= 1e-9; " + std::to_string(nonempty) +
               " generators with nonempty N_phi, " + std::to_string(pairs) + " nesting pairs in (0,1], |z| bounded";
  return o;
}

// Error over right-hand side seminorm stays bounded under refinement.
Outcome effectivity() {
  Outcome o;
  std::string summary;
  const std::vector<std::pair<double, double>> pq = {{2.0, 2.0}, {kInf, kInf}, {1.0, 2.0}};
  for (const char* name : {"tps_4x4.json", "thb_two_level.json"}) {
    for (const auto& [p, qe] : pq) {
      StudyConfig cfg;
      cfg.space = fixture(name);
      cfg.function = "sin_prod";
      cfg.p = p;
      cfg.q = qe;
      cfg.level_min = 0;
      cfg.level_max = 3;
      cfg.effectivity = SeminormWeight::rho;
      const StudyResult r = run_h_study(cfg);
      const double growth = r.rows.back()[7] / r.rows.front()[7];
      const std::string tag = std::string(name) + " (p,q)=(" + fmt("%g", p) + "," + fmt("%g", qe) + ")";
      note(o, growth <= 2.0, tag + " growth " + fmt("%.3f", growth));
      summary += (summary.empty() ? "" : ", ") + fmt("%.3f", growth);
    }
  }
  if (o.pass) o.detail = "finest/coarsest effectivity " + summary + " <= 2";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"polynomial reproduction", polynomial_reproduction},
      {"tensor-product projector", tps_projector},
      {"h-convergence order", h_convergence},
      {"exponential p-convergence", p_convergence},
      {"knot insertion identity", knot_insertion},
      {"B-spline norm sandwich", norm_sandwich},
      {"exact Hilbert algebra", hilbert_algebra},
      {"mesh constants", mesh_constants},
      {"averaged Taylor suite", averaged_taylor_suite},
      {"LR coefficient recursion", lr_recursion},
      {"effectivity boundedness", effectivity},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!out.pass) ++failed;
    std::printf("%s %2zu %s: %s (%.1fs)\n", out.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                out.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
