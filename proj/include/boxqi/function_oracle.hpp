#pragma once

#include <functional>
#include <span>
#include <stdexcept>

#include "boxqi/multiindex.hpp"

namespace boxqi {

using ScalarField = std::function<double(std::span<const double>)>;

// Callable f together with partial derivatives up to `smoothness`.
struct FunctionOracle {
  ScalarField value;
  std::function<double(const MultiIndex&, std::span<const double>)> derivative;
  int smoothness = 0;

  double operator()(std::span<const double> x) const { return value(x); }

  double d(const MultiIndex& alpha, std::span<const double> x) const {
    if (alpha.order() == 0) return value(x);
    if (!derivative || alpha.order() > smoothness)
      throw std::invalid_argument("derivative not available from this oracle");
    return derivative(alpha, x);
  }
};

}  // namespace boxqi
