#pragma once

#include <vector>

#include "boxqi/box.hpp"

namespace boxqi {

struct Rule1D {
  std::vector<double> nodes;  // on [0, 1]
  std::vector<double> weights;
};

// Gauss-Legendre rule with `order` nodes on [0, 1], exact up to degree
// 2*order-1. Rules are computed once and cached.
const Rule1D& gauss_legendre_1d(int order);

// Tensor rule on a box; nodes are stored point by point.
struct QuadratureRule {
  std::vector<std::vector<double>> nodes;
  std::vector<double> weights;
};

QuadratureRule gauss_legendre(int order, const Box& box);

// Per-axis nodes and weights mapped to the box.
struct TensorRule {
  std::vector<std::vector<double>> nodes;
  std::vector<std::vector<double>> weights;
};

TensorRule gauss_legendre_tensor(int order, const Box& box);

}  // namespace boxqi
