#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "boxqi/polynomial.hpp"
#include "boxqi/spaces.hpp"

namespace boxqi {

namespace {

struct Segment {
  std::size_t axis;
  double position;
  Box span;  // degenerate along `axis`
  int multiplicity;
};

Box flat_box(const Box& b, std::size_t axis, double t) {
  std::vector<double> lo = b.lo(), hi = b.hi();
  lo[axis] = hi[axis] = t;
  return Box(std::move(lo), std::move(hi));
}

// Calls f(idx) for every multi-index below counts.
template <class F>
void for_each_index(const std::vector<std::size_t>& counts, F&& f) {
  for (std::size_t c : counts)
    if (c == 0) return;
  std::vector<std::size_t> idx(counts.size(), 0);
  while (true) {
    f(idx);
    std::size_t i = counts.size();
    while (i > 0 && ++idx[i - 1] == counts[i - 1]) idx[--i] = 0;
    if (i == 0) return;
  }
}

class LRMesh {
 public:
  LRMesh(const MultiIndex& degree, const Box& omega) : degree_(degree), omega_(omega) {
    tol_ = 1e-12 * omega.diameter();
    for (std::size_t a = 0; a < omega.dimension(); ++a)
      for (double t : {omega.lo(a), omega.hi(a)})
        segments_.push_back({a, t, flat_box(omega, a, t), degree[a] + 1});
  }

  void insert(const MeshlineInsertion& ins) {
    const std::size_t n = omega_.dimension();
    if (ins.axis >= n) throw std::invalid_argument("meshline axis out of range");
    if (!(ins.position > omega_.lo(ins.axis) && ins.position < omega_.hi(ins.axis)))
      throw std::invalid_argument("meshline must lie inside the domain");
    if (ins.span_lo.size() != n - 1 || ins.span_hi.size() != n - 1)
      throw std::invalid_argument("meshline span needs one range per remaining axis");
    if (ins.multiplicity < 1 || ins.multiplicity > degree_[ins.axis] + 1)
      throw std::invalid_argument("meshline multiplicity out of range");
    std::vector<double> lo(n), hi(n);
    for (std::size_t a = 0, k = 0; a < n; ++a) {
      if (a == ins.axis) {
        lo[a] = hi[a] = ins.position;
        continue;
      }
      lo[a] = ins.span_lo[k];
      hi[a] = ins.span_hi[k];
      ++k;
      if (!(lo[a] < hi[a])) throw std::invalid_argument("meshline span is empty");
      if (lo[a] < omega_.lo(a) - tol_ || hi[a] > omega_.hi(a) + tol_)
        throw std::invalid_argument("meshline span leaves the domain");
      if (!has_position(a, lo[a]) || !has_position(a, hi[a]))
        throw std::invalid_argument("meshline must end on existing meshlines");
    }
    segments_.push_back({ins.axis, ins.position, Box(lo, hi), ins.multiplicity});
  }

  // Multiplicity of the mesh along the whole face `target` at x_axis = t.
  bool covers(std::size_t axis, double t, int mult, const Box& target) const {
    std::vector<const Segment*> segs;
    for (const auto& s : segments_)
      if (s.axis == axis && s.position == t && s.multiplicity >= mult) segs.push_back(&s);
    if (segs.empty()) return false;
    const std::size_t n = omega_.dimension();
    std::vector<std::vector<double>> coords(n);
    std::vector<std::size_t> counts(n, 1);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == axis) continue;
      coords[j] = {target.lo(j), target.hi(j)};
      for (const auto* s : segs)
        for (double v : {s->span.lo(j), s->span.hi(j)})
          if (v > target.lo(j) && v < target.hi(j)) coords[j].push_back(v);
      std::sort(coords[j].begin(), coords[j].end());
      coords[j].erase(std::unique(coords[j].begin(), coords[j].end()), coords[j].end());
      counts[j] = coords[j].size() - 1;
    }
    bool all = true;
    std::vector<double> c(n);
    for_each_index(counts, [&](const std::vector<std::size_t>& idx) {
      if (!all) return;
      for (std::size_t j = 0; j < n; ++j)
        c[j] = j == axis ? t : 0.5 * (coords[j][idx[j]] + coords[j][idx[j] + 1]);
      bool hit = false;
      for (const auto* s : segs)
        if (s->span.contains_point(c, tol_)) {
          hit = true;
          break;
        }
      all = hit;
    });
    return all;
  }

  std::vector<double> positions(std::size_t axis) const {
    std::vector<double> p;
    for (const auto& s : segments_)
      if (s.axis == axis) p.push_back(s.position);
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    return p;
  }

  // Box elements of the mesh: cells of the coordinate grid merged across
  // faces that carry no meshline.
  std::vector<Box> elements() const {
    const std::size_t n = omega_.dimension();
    std::vector<std::vector<double>> coords(n);
    std::vector<std::size_t> counts(n);
    for (std::size_t a = 0; a < n; ++a) {
      coords[a] = positions(a);
      counts[a] = coords[a].size() - 1;
    }
    std::size_t total = 1;
    for (auto c : counts) total *= c;
    std::vector<std::size_t> parent(total);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    auto flat = [&](const std::vector<std::size_t>& idx) {
      std::size_t f = 0;
      for (std::size_t i = 0; i < n; ++i) f = f * counts[i] + idx[i];
      return f;
    };
    auto cell = [&](const std::vector<std::size_t>& idx) {
      std::vector<double> lo(n), hi(n);
      for (std::size_t i = 0; i < n; ++i) {
        lo[i] = coords[i][idx[i]];
        hi[i] = coords[i][idx[i] + 1];
      }
      return Box(std::move(lo), std::move(hi));
    };
    for_each_index(counts, [&](const std::vector<std::size_t>& idx) {
      for (std::size_t a = 0; a < n; ++a) {
        if (idx[a] + 1 >= counts[a]) continue;
        const double t = coords[a][idx[a] + 1];
        if (!covers(a, t, 1, flat_box(cell(idx), a, t))) {
          auto nb = idx;
          ++nb[a];
          parent[find(flat(idx))] = find(flat(nb));
        }
      }
    });
    std::vector<std::vector<Box>> groups(total);
    for_each_index(counts, [&](const std::vector<std::size_t>& idx) {
      groups[find(flat(idx))].push_back(cell(idx));
    });
    std::vector<Box> out;
    for (const auto& g : groups) {
      if (g.empty()) continue;
      const Box b = bounding_box(g);
      double vol = 0.0;
      for (const auto& c : g) vol += c.measure();
      if (std::abs(vol - b.measure()) > 1e-9 * b.measure())
        throw std::logic_error("meshlines produce a non-box element");
      out.push_back(b);
    }
    return out;
  }

 private:
  bool has_position(std::size_t axis, double v) const {
    for (const auto& s : segments_)
      if (s.axis == axis && std::abs(s.position - v) <= tol_) return true;
    return false;
  }

  MultiIndex degree_;
  Box omega_;
  double tol_;
  std::vector<Segment> segments_;
};

// Splits one generator if some meshline crosses its support; returns
// whether anything changed.
bool split_once(const LRMesh& mesh, std::set<TensorBSpline>& phi) {
  for (auto it = phi.begin(); it != phi.end(); ++it) {
    const TensorBSpline& f = *it;
    const Box supp = f.support();
    for (std::size_t a = 0; a < f.dimension(); ++a) {
      const auto& kv = f.axis(a);
      for (double t : mesh.positions(a)) {
        if (!(t > kv.front() && t < kv.back())) continue;
        const int k = static_cast<int>(std::count(kv.knots().begin(), kv.knots().end(), t));
        if (k >= kv.degree() + 1) continue;
        if (!mesh.covers(a, t, k + 1, flat_box(supp, a, t))) continue;
        TensorKnotInsertion ins = knot_insert(f, a, t);
        phi.erase(it);
        phi.insert(std::move(ins.hat));
        phi.insert(std::move(ins.tilde));
        return true;
      }
    }
  }
  return false;
}

}  // namespace

SplineSpace build_lr(const MultiIndex& degree, const Box& omega,
                     const std::vector<MeshlineInsertion>& insertions) {
  const std::size_t n = degree.size();
  if (omega.dimension() != n) throw std::invalid_argument("degree and domain differ in dimension");
  if (!omega.has_interior()) throw std::invalid_argument("domain needs interior");
  LRMesh mesh(degree, omega);
  auto seed = bernstein_generators(degree, omega);
  std::set<TensorBSpline> phi(seed.begin(), seed.end());
  for (const auto& ins : insertions) {
    mesh.insert(ins);
    while (split_once(mesh, phi)) {
    }
  }
  SplineSpace s;
  s.kind = SpaceKind::lr;
  s.degree = degree;
  s.domain = omega;
  s.mesh = BoxMesh(mesh.elements());
  s.element_level.assign(s.mesh.size(), 0);
  for (const auto& f : phi) {
    Generator g;
    g.spline = f;
    g.shape = {{1.0, f}};
    g.support_box = f.support();
    g.support_elements = s.mesh.elements_within(g.support_box);
    s.generators.push_back(std::move(g));
  }
  return s;
}

}  // namespace boxqi
