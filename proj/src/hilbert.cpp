#include "boxqi/hilbert.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace boxqi {

namespace {

using boost::multiprecision::cpp_int;

cpp_int big_binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  cpp_int r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

IntegerMatrix compute_inverse(int d) {
  const int N = d + 1;
  IntegerMatrix m(N, std::vector<std::int64_t>(N));
  for (int i = 1; i <= N; ++i) {
    for (int j = 1; j <= N; ++j) {
      cpp_int c = big_binomial(i + j - 2, i - 1);
      cpp_int v = cpp_int(i + j - 1) * big_binomial(N + i - 1, N - j) *
                  big_binomial(N + j - 1, N - i) * c * c;
      if ((i + j) % 2 == 1) v = -v;
      if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw std::overflow_error("Hilbert inverse entry exceeds 64 bits");
      m[i - 1][j - 1] = static_cast<std::int64_t>(v);
    }
  }
  return m;
}

const IntegerMatrix& cached_inverse(int d) {
  if (d < 0 || d > kMaxHilbertDegree) throw std::invalid_argument("Hilbert degree out of range");
  static std::array<IntegerMatrix, kMaxHilbertDegree + 1> cache;
  static std::once_flag once;
  std::call_once(once, [] {
    for (int k = 0; k <= kMaxHilbertDegree; ++k) cache[k] = compute_inverse(k);
  });
  return cache[d];
}

}  // namespace

IntegerMatrix hilbert_inverse(int d) { return cached_inverse(d); }

double hilbert_inverse_norm(int d) {
  const IntegerMatrix& m = cached_inverse(d);
  double best = 0.0;
  for (const auto& row : m) {
    double s = 0.0;
    for (auto v : row) s += std::abs(static_cast<double>(v));
    best = std::max(best, s);
  }
  return best;
}

std::vector<double> hilbert_solve(int d, std::span<const double> b) {
  const IntegerMatrix& m = cached_inverse(d);
  if (b.size() != m.size()) throw std::invalid_argument("right-hand side size mismatch");
  std::vector<double> c(b.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    long double s = 0.0L;
    for (std::size_t j = 0; j < m.size(); ++j) s += static_cast<long double>(m[i][j]) * b[j];
    c[i] = static_cast<double>(s);
  }
  return c;
}

}  // namespace boxqi
