#pragma once

#include <string>
#include <vector>

#include "boxqi/function_oracle.hpp"

namespace boxqi {

// Highest derivative order provided by the catalog oracles.
constexpr int kCatalogSmoothness = 12;

// Named test functions with closed-form partial derivatives:
//   sin_prod  prod_i sin(pi x_i)
//   exp_sum   exp(x_1 + ... + x_n)
//   runge     prod_i 1 / (1 + 25 x_i^2)
//   poly:k    prod_i sum_{j<=k} x_i^j / j!
// Throws std::invalid_argument for an unknown id.
FunctionOracle make_test_function(const std::string& id, std::size_t n);

std::vector<std::string> test_function_ids();

}  // namespace boxqi
