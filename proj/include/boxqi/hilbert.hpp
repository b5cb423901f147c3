#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace boxqi {

using IntegerMatrix = std::vector<std::vector<std::int64_t>>;

constexpr int kMaxHilbertDegree = 10;

// Exact inverse of the (d+1)x(d+1) Hilbert matrix H_ij = 1/(i+j+1),
// 0-based, from the closed-form binomial expression. Supports d <= 10.
IntegerMatrix hilbert_inverse(int d);

// Max row sum of |H^{-1}|.
double hilbert_inverse_norm(int d);

// H^{-1} b with extended-precision accumulation.
std::vector<double> hilbert_solve(int d, std::span<const double> b);

}  // namespace boxqi
