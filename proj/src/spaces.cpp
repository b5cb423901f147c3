#include "boxqi/spaces.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <stdexcept>

namespace boxqi {

namespace {

// Calls f(idx) for every multi-index below counts, last axis fastest.
template <class F>
void for_each_index(const std::vector<std::size_t>& counts, F&& f) {
  const std::size_t n = counts.size();
  for (std::size_t c : counts)
    if (c == 0) return;
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    f(idx);
    std::size_t i = n;
    while (i > 0 && ++idx[i - 1] == counts[i - 1]) idx[--i] = 0;
    if (i == 0) return;
  }
}

std::size_t position_of(const std::vector<double>& sorted, double v) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
  if (it == sorted.end() || *it != v) throw std::invalid_argument("coordinate is not a breakpoint");
  return static_cast<std::size_t>(it - sorted.begin());
}

// One level of a hierarchical space viewed as a tensor grid.
struct LevelGrid {
  std::vector<OpenKnotVector> knots;
  std::vector<std::vector<double>> breaks;
  std::vector<std::size_t> counts;  // elements per axis
  std::vector<char> in_domain;      // element in Omega_l
  std::vector<char> in_next;        // element in Omega_{l+1}

  std::size_t flat(const std::vector<std::size_t>& idx) const {
    std::size_t f = 0;
    for (std::size_t i = 0; i < idx.size(); ++i) f = f * counts[i] + idx[i];
    return f;
  }
  Box element(const std::vector<std::size_t>& idx) const {
    std::vector<double> lo(idx.size()), hi(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
      lo[i] = breaks[i][idx[i]];
      hi[i] = breaks[i][idx[i] + 1];
    }
    return Box(std::move(lo), std::move(hi));
  }
  // Element index ranges [first, last) covered by basis function idx.
  std::vector<std::pair<std::size_t, std::size_t>> support_range(const std::vector<std::size_t>& idx) const {
    std::vector<std::pair<std::size_t, std::size_t>> r(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
      const KnotVector kv = knots[i].basis(idx[i]);
      r[i] = {position_of(breaks[i], kv.front()), position_of(breaks[i], kv.back())};
    }
    return r;
  }
  template <class Pred>
  bool all_elements(const std::vector<std::pair<std::size_t, std::size_t>>& range, Pred&& pred) const {
    std::vector<std::size_t> counts_r(range.size());
    for (std::size_t i = 0; i < range.size(); ++i) counts_r[i] = range[i].second - range[i].first;
    bool all = true;
    for_each_index(counts_r, [&](const std::vector<std::size_t>& off) {
      if (!all) return;
      std::vector<std::size_t> e(off.size());
      for (std::size_t i = 0; i < off.size(); ++i) e[i] = range[i].first + off[i];
      if (!pred(flat(e))) all = false;
    });
    return all;
  }
  TensorBSpline spline(const std::vector<std::size_t>& idx) const {
    std::vector<KnotVector> kv;
    for (std::size_t i = 0; i < idx.size(); ++i) kv.push_back(knots[i].basis(idx[i]));
    return TensorBSpline(std::move(kv));
  }
};

bool inside_union(const Box& b, const std::vector<Box>& boxes, double tol) {
  for (const auto& u : boxes)
    if (u.contains(b, tol)) return true;
  return false;
}

// Refinement of the univariate B-spline kappa into the basis of a finer
// open knot vector, as (basis index, coefficient) pairs.
std::vector<std::pair<std::size_t, double>> refine_into(const KnotVector& kappa, const OpenKnotVector& fine) {
  const auto& g = fine.knots();
  const auto& k = kappa.knots();
  const std::size_t m_front = static_cast<std::size_t>(std::count(k.begin(), k.end(), k.front()));
  const std::size_t m_back = static_cast<std::size_t>(std::count(k.begin(), k.end(), k.back()));
  std::vector<double> seq(m_front, k.front());
  for (double v : g)
    if (v > k.front() && v < k.back()) seq.push_back(v);
  seq.insert(seq.end(), m_back, k.back());
  const auto coef = refinement_coefficients(kappa, seq);
  const auto first = static_cast<std::size_t>(std::lower_bound(g.begin(), g.end(), k.front()) - g.begin());
  const std::size_t start =
      first + static_cast<std::size_t>(std::count(g.begin(), g.end(), k.front())) - m_front;
  std::vector<std::pair<std::size_t, double>> out;
  for (std::size_t j = 0; j < coef.size(); ++j)
    if (coef[j] != 0.0) out.push_back({start + j, coef[j]});
  return out;
}

using Coefficients = std::map<std::vector<std::size_t>, double>;

Coefficients refine_terms(const Coefficients& terms, const LevelGrid& from, const LevelGrid& to) {
  Coefficients out;
  const std::size_t n = from.knots.size();
  for (const auto& [idx, c] : terms) {
    std::vector<std::vector<std::pair<std::size_t, double>>> per(n);
    std::vector<std::size_t> counts(n);
    for (std::size_t i = 0; i < n; ++i) {
      per[i] = refine_into(from.knots[i].basis(idx[i]), to.knots[i]);
      counts[i] = per[i].size();
    }
    for_each_index(counts, [&](const std::vector<std::size_t>& sel) {
      std::vector<std::size_t> j(n);
      double v = c;
      for (std::size_t i = 0; i < n; ++i) {
        j[i] = per[i][sel[i]].first;
        v *= per[i][sel[i]].second;
      }
      out[j] += v;
    });
  }
  return out;
}

std::vector<std::size_t> union_of_overlaps(const BoxMesh& mesh, const std::vector<ShapeTerm>& shape) {
  std::vector<std::size_t> s;
  for (const auto& t : shape) {
    auto e = mesh.elements_overlapping(t.spline.support());
    s.insert(s.end(), e.begin(), e.end());
  }
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

Box bbox_of_elements(const BoxMesh& mesh, const std::vector<std::size_t>& elems) {
  std::vector<Box> boxes;
  for (std::size_t e : elems) boxes.push_back(mesh.element(e));
  return bounding_box(boxes);
}

}  // namespace

double Generator::value(std::span<const double> x) const {
  double s = 0.0;
  for (const auto& t : shape) s += t.coefficient * t.spline(x);
  return s;
}

double Generator::derivative(std::span<const double> x, const MultiIndex& sigma) const {
  double s = 0.0;
  for (const auto& t : shape) s += t.coefficient * t.spline.derivative(x, sigma);
  return s;
}

double Generator::derivative_in(std::span<const double> x, const MultiIndex& sigma, const Box& element) const {
  double s = 0.0;
  for (const auto& t : shape) s += t.coefficient * t.spline.derivative_in(x, sigma, element);
  return s;
}

std::vector<TensorBSpline> SplineSpace::splines() const {
  std::vector<TensorBSpline> out;
  out.reserve(generators.size());
  for (const auto& g : generators) out.push_back(g.spline);
  return out;
}

SplineSpace build_tps(const std::vector<OpenKnotVector>& knots) {
  const std::size_t n = knots.size();
  if (n == 0) throw std::invalid_argument("tensor space needs at least one axis");
  SplineSpace s;
  s.kind = SpaceKind::tps;
  s.degree = MultiIndex(n);
  std::vector<std::vector<double>> breaks(n);
  std::vector<std::size_t> counts(n);
  for (std::size_t i = 0; i < n; ++i) {
    s.degree.set(i, knots[i].degree());
    breaks[i] = knots[i].breakpoints();
    counts[i] = knots[i].basis_size();
  }
  s.mesh = BoxMesh::tensor(breaks);
  s.domain = s.mesh.domain();
  s.element_level.assign(s.mesh.size(), 0);
  for_each_index(counts, [&](const std::vector<std::size_t>& idx) {
    std::vector<KnotVector> kv;
    for (std::size_t i = 0; i < n; ++i) kv.push_back(knots[i].basis(idx[i]));
    Generator g;
    g.spline = TensorBSpline(std::move(kv));
    g.shape = {{1.0, g.spline}};
    g.support_box = g.spline.support();
    g.support_elements = s.mesh.elements_within(g.support_box);
    s.generators.push_back(std::move(g));
  });
  return s;
}

SplineSpace build_thb(const std::vector<THBLevel>& levels) {
  if (levels.empty()) throw std::invalid_argument("hierarchical space needs at least one level");
  const std::size_t n = levels[0].knots.size();
  if (n == 0) throw std::invalid_argument("hierarchical space needs at least one axis");
  const std::size_t L = levels.size();
  std::vector<LevelGrid> grid(L);
  for (std::size_t l = 0; l < L; ++l) {
    if (levels[l].knots.size() != n) throw std::invalid_argument("levels differ in dimension");
    grid[l].knots = levels[l].knots;
    for (std::size_t i = 0; i < n; ++i) {
      if (levels[l].knots[i].degree() != levels[0].knots[i].degree())
        throw std::invalid_argument("levels differ in degree");
      grid[l].breaks.push_back(levels[l].knots[i].breakpoints());
      grid[l].counts.push_back(grid[l].breaks[i].size() - 1);
      if (l > 0) {
        const auto& coarse = levels[l - 1].knots[i].knots();
        const auto& fine = levels[l].knots[i].knots();
        if (coarse.front() != fine.front() || coarse.back() != fine.back())
          throw std::invalid_argument("levels cover different domains");
        if (!std::includes(fine.begin(), fine.end(), coarse.begin(), coarse.end()))
          throw std::invalid_argument("level knot vectors are not nested");
      }
    }
  }
  SplineSpace s;
  s.kind = SpaceKind::thb;
  s.degree = MultiIndex(n);
  std::vector<double> lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    s.degree.set(i, levels[0].knots[i].degree());
    lo[i] = grid[0].breaks[i].front();
    hi[i] = grid[0].breaks[i].back();
  }
  s.domain = Box(lo, hi);
  const double tol = 1e-12 * s.domain.diameter();

  for (std::size_t l = 1; l < L; ++l)
    for (const auto& b : levels[l].domain) {
      if (b.dimension() != n || !b.has_interior()) throw std::invalid_argument("malformed subdomain box");
      if (!s.domain.contains(b, tol)) throw std::invalid_argument("subdomain outside the domain");
      for (std::size_t i = 0; i < n; ++i) {
        const auto& br = grid[l - 1].breaks[i];
        if (!std::binary_search(br.begin(), br.end(), b.lo(i)) ||
            !std::binary_search(br.begin(), br.end(), b.hi(i)))
          throw std::invalid_argument("subdomain not aligned with the previous level");
      }
    }
  for (std::size_t l = 0; l < L; ++l) {
    LevelGrid& g = grid[l];
    std::size_t total = 1;
    for (auto c : g.counts) total *= c;
    g.in_domain.assign(total, 0);
    g.in_next.assign(total, 0);
    for_each_index(g.counts, [&](const std::vector<std::size_t>& idx) {
      const Box e = g.element(idx);
      const std::size_t f = g.flat(idx);
      g.in_domain[f] = (l == 0 || inside_union(e, levels[l].domain, tol)) ? 1 : 0;
      g.in_next[f] = (l + 1 < L && inside_union(e, levels[l + 1].domain, tol)) ? 1 : 0;
      if (g.in_next[f] && !g.in_domain[f]) throw std::invalid_argument("subdomains are not nested");
    });
  }

  std::vector<Box> elems;
  std::map<std::vector<double>, int> level_of;
  for (std::size_t l = 0; l < L; ++l)
    for_each_index(grid[l].counts, [&](const std::vector<std::size_t>& idx) {
      const std::size_t f = grid[l].flat(idx);
      if (grid[l].in_domain[f] && !grid[l].in_next[f]) {
        elems.push_back(grid[l].element(idx));
        level_of[elems.back().lo()] = static_cast<int>(l);
      }
    });
  s.mesh = BoxMesh(std::move(elems));
  for (const auto& e : s.mesh.elements()) s.element_level.push_back(level_of.at(e.lo()));

  for (std::size_t l = 0; l < L; ++l) {
    const LevelGrid& g = grid[l];
    std::vector<std::size_t> counts(n);
    for (std::size_t i = 0; i < n; ++i) counts[i] = g.knots[i].basis_size();
    for_each_index(counts, [&](const std::vector<std::size_t>& idx) {
      const auto range = g.support_range(idx);
      if (!g.all_elements(range, [&](std::size_t f) { return g.in_domain[f] != 0; })) return;
      if (g.all_elements(range, [&](std::size_t f) { return g.in_next[f] != 0; })) return;
      // Truncate against every finer level; keep the coarsest exact form.
      Coefficients cur{{idx, 1.0}};
      std::size_t cur_level = l;
      for (std::size_t j = l + 1; j < L; ++j) {
        Coefficients refined = refine_terms(cur, grid[cur_level], grid[j]);
        bool dropped = false;
        for (auto it = refined.begin(); it != refined.end();) {
          const auto r = grid[j].support_range(it->first);
          if (grid[j].all_elements(r, [&](std::size_t f) { return grid[j].in_domain[f] != 0; })) {
            it = refined.erase(it);
            dropped = true;
          } else {
            ++it;
          }
        }
        if (dropped) {
          cur = std::move(refined);
          cur_level = j;
        }
      }
      Generator gen;
      gen.spline = g.spline(idx);
      gen.level = static_cast<int>(l);
      for (const auto& [k, c] : cur) gen.shape.push_back({c, grid[cur_level].spline(k)});
      gen.support_elements = union_of_overlaps(s.mesh, gen.shape);
      gen.support_box = bbox_of_elements(s.mesh, gen.support_elements);
      s.generators.push_back(std::move(gen));
    });
  }
  return s;
}

int thb_admissibility(const SplineSpace& space) {
  std::vector<int> min_level(space.mesh.size(), INT_MAX);
  for (const auto& g : space.generators)
    for (std::size_t e : space.mesh.elements_within(g.spline.support()))
      min_level[e] = std::min(min_level[e], g.level);
  int k = 1;
  for (std::size_t e = 0; e < space.mesh.size(); ++e)
    if (min_level[e] != INT_MAX) k = std::max(k, space.element_level[e] - min_level[e] + 1);
  return k;
}

}  // namespace boxqi
