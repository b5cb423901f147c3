#include "boxqi/boxmesh.hpp"

#include <algorithm>
#include <stdexcept>

namespace boxqi {

namespace {

bool lex_less(const Box& a, const Box& b) {
  if (a.lo() != b.lo()) return a.lo() < b.lo();
  return a.hi() < b.hi();
}

}  // namespace

BoxMesh::BoxMesh(std::vector<Box> elements) : elements_(std::move(elements)) {
  if (elements_.empty()) throw std::invalid_argument("mesh needs at least one element");
  const std::size_t n = elements_.front().dimension();
  if (n == 0) throw std::invalid_argument("mesh dimension must be positive");
  for (const auto& e : elements_) {
    if (e.dimension() != n) throw std::invalid_argument("mesh elements differ in dimension");
    if (!e.has_interior()) throw std::invalid_argument("mesh element without interior");
  }
  index();
  // Sweep along axis 0: only elements whose axis-0 ranges overlap can clash.
  for (std::size_t a = 0; a < elements_.size(); ++a) {
    const Box& ea = elements_[a];
    for (std::size_t b = a + 1; b < elements_.size(); ++b) {
      const Box& eb = elements_[b];
      if (eb.lo(0) >= ea.hi(0) - tol_) break;
      if (ea.interiors_intersect(eb, tol_))
        throw std::invalid_argument("mesh elements have overlapping interiors");
    }
  }
}

BoxMesh::BoxMesh(std::vector<Box> elements, Unchecked) : elements_(std::move(elements)) { index(); }

BoxMesh BoxMesh::tensor(const std::vector<std::vector<double>>& breakpoints) {
  const std::size_t n = breakpoints.size();
  if (n == 0) throw std::invalid_argument("tensor mesh needs at least one axis");
  std::vector<std::size_t> counts(n);
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& b = breakpoints[i];
    if (b.size() < 2) throw std::invalid_argument("tensor mesh axis needs two breakpoints");
    for (std::size_t k = 1; k < b.size(); ++k)
      if (!(b[k] > b[k - 1])) throw std::invalid_argument("breakpoints must increase strictly");
    counts[i] = b.size() - 1;
    total *= counts[i];
  }
  std::vector<Box> elems;
  elems.reserve(total);
  std::vector<std::size_t> idx(n, 0);
  for (std::size_t e = 0; e < total; ++e) {
    std::vector<double> lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = breakpoints[i][idx[i]];
      hi[i] = breakpoints[i][idx[i] + 1];
    }
    elems.emplace_back(std::move(lo), std::move(hi));
    for (std::size_t i = n; i-- > 0;) {
      if (++idx[i] < counts[i]) break;
      idx[i] = 0;
    }
  }
  return BoxMesh(std::move(elems), Unchecked{});
}

void BoxMesh::index() {
  std::sort(elements_.begin(), elements_.end(), lex_less);
  domain_ = bounding_box(elements_);
  tol_ = 1e-12 * domain_.diameter();
  max_width0_ = 0.0;
  const std::size_t n = domain_.dimension();
  breakpoints_.assign(n, {});
  for (const auto& e : elements_) {
    max_width0_ = std::max(max_width0_, e.width(0));
    for (std::size_t i = 0; i < n; ++i) {
      breakpoints_[i].push_back(e.lo(i));
      breakpoints_[i].push_back(e.hi(i));
    }
  }
  for (auto& b : breakpoints_) {
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
  }
}

double BoxMesh::measure() const {
  double m = 0.0;
  for (const auto& e : elements_) m += e.measure();
  return m;
}

std::pair<std::size_t, std::size_t> BoxMesh::candidate_range(double lo0, double hi0) const {
  auto first = std::lower_bound(elements_.begin(), elements_.end(), lo0,
                                [](const Box& e, double v) { return e.lo(0) < v; });
  auto last = std::upper_bound(first, elements_.end(), hi0,
                               [](double v, const Box& e) { return v < e.lo(0); });
  return {static_cast<std::size_t>(first - elements_.begin()),
          static_cast<std::size_t>(last - elements_.begin())};
}

std::vector<std::size_t> BoxMesh::elements_within(const Box& region) const {
  std::vector<std::size_t> out;
  auto [a, b] = candidate_range(region.lo(0) - tol_, region.hi(0) + tol_);
  for (std::size_t i = a; i < b; ++i)
    if (region.contains(elements_[i], tol_)) out.push_back(i);
  return out;
}

std::vector<std::size_t> BoxMesh::elements_within(const TruncatedBox& region) const {
  std::vector<std::size_t> out;
  auto [a, b] = candidate_range(region.outer().lo(0) - tol_, region.outer().hi(0) + tol_);
  for (std::size_t i = a; i < b; ++i)
    if (region.contains(elements_[i], tol_)) out.push_back(i);
  return out;
}

std::vector<std::size_t> BoxMesh::elements_overlapping(const Box& region) const {
  std::vector<std::size_t> out;
  auto [a, b] = candidate_range(region.lo(0) - max_width0_, region.hi(0));
  for (std::size_t i = a; i < b; ++i)
    if (region.interiors_intersect(elements_[i], tol_)) out.push_back(i);
  return out;
}

std::optional<std::size_t> BoxMesh::locate(std::span<const double> x) const {
  if (x.size() != dimension()) throw std::invalid_argument("point dimension mismatch");
  auto [a, b] = candidate_range(x[0] - max_width0_ - tol_, x[0] + tol_);
  std::optional<std::size_t> best;
  for (std::size_t i = a; i < b; ++i) {
    if (!elements_[i].contains_point(x, tol_)) continue;
    if (!best || lex_less(elements_[*best], elements_[i])) best = i;
  }
  return best;
}

std::vector<Box> elements_in(const BoxMesh& mesh, const TruncatedBox& region) {
  std::vector<Box> out;
  for (std::size_t i : mesh.elements_within(region)) out.push_back(mesh.element(i));
  return out;
}

}  // namespace boxqi
