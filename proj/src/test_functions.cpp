#include "boxqi/test_functions.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace boxqi {

namespace {

using Axis = std::function<double(int, double)>;

// Product of one univariate factor per axis; derivative orders apply
// axis by axis.
FunctionOracle separable(std::size_t n, Axis factor, int smoothness) {
  FunctionOracle f;
  f.smoothness = smoothness;
  f.value = [n, factor](std::span<const double> x) {
    double v = 1.0;
    for (std::size_t i = 0; i < n; ++i) v *= factor(0, x[i]);
    return v;
  };
  f.derivative = [n, factor](const MultiIndex& alpha, std::span<const double> x) {
    double v = 1.0;
    for (std::size_t i = 0; i < n; ++i) v *= factor(alpha[i], x[i]);
    return v;
  };
  return f;
}

double sin_axis(int k, double x) {
  const double pi = std::numbers::pi;
  return std::pow(pi, k) * std::sin(pi * x + k * pi / 2.0);
}

double exp_axis(int, double x) { return std::exp(x); }

// d^k/dx^k 1/(1+25x^2) = Re[k! (5i)^k / (1 - 5ix)^{k+1}].
double runge_axis(int k, double x) {
  const std::complex<double> five_i(0.0, 5.0);
  const std::complex<double> v = factorial(k) * std::pow(five_i, k) / std::pow(1.0 - five_i * x, k + 1);
  return v.real();
}

}  // namespace

FunctionOracle make_test_function(const std::string& id, std::size_t n) {
  if (n == 0) throw std::invalid_argument("dimension must be positive");
  if (id == "sin_prod") return separable(n, sin_axis, kCatalogSmoothness);
  if (id == "exp_sum") return separable(n, exp_axis, kCatalogSmoothness);
  if (id == "runge") return separable(n, runge_axis, kCatalogSmoothness);
  if (id.rfind("poly:", 0) == 0) {
    int deg = -1;
    try {
      std::size_t used = 0;
      deg = std::stoi(id.substr(5), &used);
      if (used != id.size() - 5) deg = -1;
    } catch (const std::exception&) {
      deg = -1;
    }
    if (deg < 0) throw std::invalid_argument("bad polynomial degree in '" + id + "'");
    auto axis = [deg](int k, double x) {
      // d^k of sum_{j<=deg} x^j / j! is sum_{j<=deg-k} x^j / j!.
      double s = 0.0, term = 1.0;
      for (int j = 0; j <= deg - k; ++j) {
        s += term;
        term *= x / (j + 1);
      }
      return s;
    };
    return separable(n, axis, kCatalogSmoothness);
  }
  throw std::invalid_argument("unknown test function '" + id + "'");
}

std::vector<std::string> test_function_ids() { return {"sin_prod", "exp_sum", "runge", "poly:<k>"}; }

}  // namespace boxqi
