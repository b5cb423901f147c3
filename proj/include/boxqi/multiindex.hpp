#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <set>
#include <span>
#include <vector>

namespace boxqi {

// Non-negative integer vector. Ordering is lexicographic.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t n, int value = 0);
  MultiIndex(std::initializer_list<int> entries);
  explicit MultiIndex(std::vector<int> entries);

  static MultiIndex unit(std::size_t n, std::size_t i);

  std::size_t size() const { return entries_.size(); }
  int operator[](std::size_t i) const { return entries_[i]; }
  void set(std::size_t i, int value);
  const std::vector<int>& entries() const { return entries_; }

  int order() const;
  int max_entry() const;
  int min_entry() const;
  // Componentwise this <= other.
  bool dominated_by(const MultiIndex& other) const;

  MultiIndex operator+(const MultiIndex& other) const;
  // Throws std::invalid_argument when a component would go negative.
  MultiIndex operator-(const MultiIndex& other) const;

  auto operator<=>(const MultiIndex&) const = default;
  bool operator==(const MultiIndex&) const = default;

 private:
  std::vector<int> entries_;
};

double factorial(const MultiIndex& alpha);
double factorial(int k);
std::int64_t binomial(int n, int k);

class IndexSet {
 public:
  using const_iterator = std::set<MultiIndex>::const_iterator;

  explicit IndexSet(std::size_t dimension);
  IndexSet(std::size_t dimension, std::initializer_list<MultiIndex> members);

  // {alpha : |alpha| <= d}
  static IndexSet total_degree(std::size_t n, int d);
  // {alpha : alpha <= dvec}
  static IndexSet box(const MultiIndex& dvec);
  // {alpha : |alpha| == r}
  static IndexSet exact_order(std::size_t n, int r);

  void insert(const MultiIndex& alpha);
  bool contains(const MultiIndex& alpha) const;
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  std::size_t dimension() const { return dimension_; }
  const_iterator begin() const { return members_.begin(); }
  const_iterator end() const { return members_.end(); }

  bool is_downward_closed() const;
  // Componentwise maximum over the members. Throws on an empty set.
  MultiIndex max_entries() const;

  bool operator==(const IndexSet&) const = default;

 private:
  std::size_t dimension_;
  std::set<MultiIndex> members_;
};

// prod_i C(alpha_i, beta_i). Throws std::invalid_argument unless beta <= alpha.
std::int64_t mi_binomial(const MultiIndex& alpha, const MultiIndex& beta);

// prod_i a_i^{b_i}. Throws std::domain_error for 0 raised to a negative
// power or a negative base raised to a non-integer power.
double vec_pow(std::span<const double> a, std::span<const double> b);

// {alpha - sigma : alpha in A, alpha >= sigma}
IndexSet translate(const IndexSet& A, const MultiIndex& sigma);

// Minimal elements of N^n \ A. Requires A downward closed.
IndexSet base(const IndexSet& A);

// Exponent vector gamma = offset - (1/q) * (1, ..., 1).
struct GammaExponent {
  std::vector<double> offset;
  std::vector<double> at(double q) const;
};

struct SeminormIndexSets {
  IndexSet k0;
  IndexSet k_sigma;
  GammaExponent gamma;
};

// Full Sobolev seminorm: all derivatives of order d+1.
SeminormIndexSets sobolev_K(int d, std::size_t n, const MultiIndex& sigma);
// Reduced seminorm: pure derivatives (d_i+1) e_i only.
SeminormIndexSets reduced_K(const MultiIndex& dvec, const MultiIndex& sigma);

// Coefficient (-1)^{|alpha|} sum_{beta in A, beta >= alpha} C(beta, alpha).
double taylor_weight_coefficient(const MultiIndex& alpha, const IndexSet& A);

// 1/p with 1/inf = 0.
double reciprocal(double p);

}  // namespace boxqi
