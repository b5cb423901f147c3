#include "boxqi/multiindex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace boxqi {

namespace {

void require_same_size(const MultiIndex& a, const MultiIndex& b) {
  if (a.size() != b.size()) throw std::invalid_argument("multi-index dimension mismatch");
}

void check_entries(const std::vector<int>& v) {
  for (int e : v)
    if (e < 0) throw std::invalid_argument("multi-index entries must be non-negative");
}

// Enumerates all alpha <= bound in lexicographic order.
template <class F>
void for_each_below(const MultiIndex& bound, F&& f) {
  const std::size_t n = bound.size();
  std::vector<int> cur(n, 0);
  if (n == 0) {
    f(MultiIndex(cur));
    return;
  }
  while (true) {
    f(MultiIndex(cur));
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (cur[i] < bound[i]) {
        ++cur[i];
        break;
      }
      cur[i] = 0;
      if (i == 0) return;
    }
  }
}

}  // namespace

MultiIndex::MultiIndex(std::size_t n, int value) : entries_(n, value) { check_entries(entries_); }

MultiIndex::MultiIndex(std::initializer_list<int> entries) : entries_(entries) {
  check_entries(entries_);
}

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
  check_entries(entries_);
}

MultiIndex MultiIndex::unit(std::size_t n, std::size_t i) {
  MultiIndex e(n);
  e.entries_.at(i) = 1;
  return e;
}

void MultiIndex::set(std::size_t i, int value) {
  if (value < 0) throw std::invalid_argument("multi-index entries must be non-negative");
  entries_.at(i) = value;
}

int MultiIndex::order() const { return std::accumulate(entries_.begin(), entries_.end(), 0); }

int MultiIndex::max_entry() const {
  return entries_.empty() ? 0 : *std::max_element(entries_.begin(), entries_.end());
}

int MultiIndex::min_entry() const {
  return entries_.empty() ? 0 : *std::min_element(entries_.begin(), entries_.end());
}

bool MultiIndex::dominated_by(const MultiIndex& other) const {
  require_same_size(*this, other);
  for (std::size_t i = 0; i < size(); ++i)
    if (entries_[i] > other.entries_[i]) return false;
  return true;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  require_same_size(*this, other);
  std::vector<int> r(size());
  for (std::size_t i = 0; i < size(); ++i) r[i] = entries_[i] + other.entries_[i];
  return MultiIndex(std::move(r));
}

MultiIndex MultiIndex::operator-(const MultiIndex& other) const {
  require_same_size(*this, other);
  std::vector<int> r(size());
  for (std::size_t i = 0; i < size(); ++i) r[i] = entries_[i] - other.entries_[i];
  return MultiIndex(std::move(r));
}

double factorial(int k) {
  if (k < 0) throw std::invalid_argument("factorial of negative integer");
  double r = 1.0;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

double factorial(const MultiIndex& alpha) {
  double r = 1.0;
  for (int a : alpha.entries()) r *= factorial(a);
  return r;
}

std::int64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

IndexSet::IndexSet(std::size_t dimension) : dimension_(dimension) {}

IndexSet::IndexSet(std::size_t dimension, std::initializer_list<MultiIndex> members)
    : dimension_(dimension) {
  for (const auto& m : members) insert(m);
}

IndexSet IndexSet::total_degree(std::size_t n, int d) {
  IndexSet s(n);
  if (d < 0) return s;
  for_each_below(MultiIndex(n, d), [&](const MultiIndex& a) {
    if (a.order() <= d) s.members_.insert(a);
  });
  return s;
}

IndexSet IndexSet::box(const MultiIndex& dvec) {
  IndexSet s(dvec.size());
  for_each_below(dvec, [&](const MultiIndex& a) { s.members_.insert(a); });
  return s;
}

IndexSet IndexSet::exact_order(std::size_t n, int r) {
  IndexSet s(n);
  if (r < 0) return s;
  for_each_below(MultiIndex(n, r), [&](const MultiIndex& a) {
    if (a.order() == r) s.members_.insert(a);
  });
  return s;
}

void IndexSet::insert(const MultiIndex& alpha) {
  if (alpha.size() != dimension_) throw std::invalid_argument("index set dimension mismatch");
  members_.insert(alpha);
}

bool IndexSet::contains(const MultiIndex& alpha) const { return members_.count(alpha) > 0; }

bool IndexSet::is_downward_closed() const {
  for (const auto& a : members_)
    for (std::size_t i = 0; i < dimension_; ++i)
      if (a[i] > 0 && !contains(a - MultiIndex::unit(dimension_, i))) return false;
  return true;
}

MultiIndex IndexSet::max_entries() const {
  if (members_.empty()) throw std::invalid_argument("max_entries of empty index set");
  MultiIndex m(dimension_);
  for (const auto& a : members_)
    for (std::size_t i = 0; i < dimension_; ++i) m.set(i, std::max(m[i], a[i]));
  return m;
}

std::int64_t mi_binomial(const MultiIndex& alpha, const MultiIndex& beta) {
  if (!beta.dominated_by(alpha)) throw std::invalid_argument("mi_binomial requires beta <= alpha");
  std::int64_t r = 1;
  for (std::size_t i = 0; i < alpha.size(); ++i) r *= binomial(alpha[i], beta[i]);
  return r;
}

double vec_pow(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("vec_pow dimension mismatch");
  double r = 1.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0 && b[i] < 0.0) throw std::domain_error("vec_pow: zero to a negative power");
    if (a[i] < 0.0 && std::trunc(b[i]) != b[i])
      throw std::domain_error("vec_pow: negative base with non-integer exponent");
    r *= std::pow(a[i], b[i]);
  }
  return r;
}

IndexSet translate(const IndexSet& A, const MultiIndex& sigma) {
  if (sigma.size() != A.dimension()) throw std::invalid_argument("translate dimension mismatch");
  IndexSet out(A.dimension());
  for (const auto& a : A)
    if (sigma.dominated_by(a)) out.insert(a - sigma);
  return out;
}

IndexSet base(const IndexSet& A) {
  if (!A.is_downward_closed()) throw std::invalid_argument("base requires a downward closed set");
  const std::size_t n = A.dimension();
  IndexSet out(n);
  if (A.empty()) {
    out.insert(MultiIndex(n));
    return out;
  }
  // Minimal elements of the complement are of the form alpha + e_i.
  for (const auto& a : A) {
    for (std::size_t i = 0; i < n; ++i) {
      MultiIndex c = a + MultiIndex::unit(n, i);
      if (A.contains(c)) continue;
      bool minimal = true;
      for (std::size_t j = 0; j < n && minimal; ++j)
        if (c[j] > 0 && !A.contains(c - MultiIndex::unit(n, j))) minimal = false;
      if (minimal) out.insert(c);
    }
  }
  return out;
}

std::vector<double> GammaExponent::at(double q) const {
  std::vector<double> g(offset);
  const double iq = reciprocal(q);
  for (double& v : g) v -= iq;
  return g;
}

SeminormIndexSets sobolev_K(int d, std::size_t n, const MultiIndex& sigma) {
  if (sigma.size() != n) throw std::invalid_argument("sobolev_K dimension mismatch");
  if (sigma.order() > d) throw std::invalid_argument("sobolev_K requires |sigma| <= d");
  IndexSet k0 = IndexSet::exact_order(n, d + 1);
  IndexSet ks(n);
  for (const auto& k : k0)
    if (sigma.dominated_by(k)) ks.insert(k);
  return {std::move(k0), std::move(ks), GammaExponent{std::vector<double>(n, 0.0)}};
}

SeminormIndexSets reduced_K(const MultiIndex& dvec, const MultiIndex& sigma) {
  const std::size_t n = dvec.size();
  if (sigma.size() != n) throw std::invalid_argument("reduced_K dimension mismatch");
  if (!sigma.dominated_by(dvec)) throw std::invalid_argument("reduced_K requires sigma <= d");
  IndexSet k0(n), ks(n);
  for (std::size_t i = 0; i < n; ++i) {
    MultiIndex e(n);
    e.set(i, dvec[i] + 1);
    k0.insert(e);
    MultiIndex k = sigma;
    k.set(i, dvec[i] + 1);
    ks.insert(k);
  }
  std::vector<double> off(n);
  for (std::size_t i = 0; i < n; ++i) off[i] = -static_cast<double>(dvec[i]);
  return {std::move(k0), std::move(ks), GammaExponent{std::move(off)}};
}

double taylor_weight_coefficient(const MultiIndex& alpha, const IndexSet& A) {
  double s = 0.0;
  for (const auto& b : A)
    if (alpha.dominated_by(b)) s += static_cast<double>(mi_binomial(b, alpha));
  return (alpha.order() % 2 == 0) ? s : -s;
}

double reciprocal(double p) {
  if (std::isinf(p)) return 0.0;
  if (!(p > 0.0)) throw std::invalid_argument("exponent must be positive");
  return 1.0 / p;
}

}  // namespace boxqi
