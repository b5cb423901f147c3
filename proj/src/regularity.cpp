#include "boxqi/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "boxqi/multiindex.hpp"

namespace boxqi {

namespace {

double max_ratio(const std::vector<double>& num, const std::vector<double>& den) {
  double r = 0.0;
  for (std::size_t i = 0; i < num.size(); ++i) r = std::max(r, num[i] / den[i]);
  return r;
}

double aspect(const std::vector<double>& h) {
  return *std::max_element(h.begin(), h.end()) / *std::min_element(h.begin(), h.end());
}

double volume(const std::vector<double>& h) {
  double v = 1.0;
  for (double x : h) v *= x;
  return v;
}

// Allows for rounding in the equality cases of the bounds.
bool within(double value, double bound) { return value <= bound * (1.0 + 1e-12) + 1e-300; }

}  // namespace

ActiveSets active_sets(const BoxMesh& mesh, std::span<const TruncatedBox> supports,
                       std::span<const TruncatedBox> esupps) {
  std::vector<std::vector<std::size_t>> m(supports.size());
  for (std::size_t g = 0; g < supports.size(); ++g) m[g] = mesh.elements_within(supports[g]);
  return active_sets(mesh, std::move(m), esupps);
}

ActiveSets active_sets(const BoxMesh& mesh, std::vector<std::vector<std::size_t>> support_elements,
                       std::span<const TruncatedBox> esupps) {
  if (support_elements.size() != esupps.size())
    throw std::invalid_argument("supports and esupps differ in count");
  ActiveSets s;
  s.active.assign(mesh.size(), {});
  s.extended.assign(mesh.size(), {});
  for (std::size_t g = 0; g < support_elements.size(); ++g) {
    for (std::size_t e : support_elements[g]) s.active[e].push_back(g);
    for (std::size_t e : mesh.elements_within(esupps[g])) s.extended[e].push_back(g);
  }
  s.support_elements = std::move(support_elements);
  return s;
}

LocalResolution local_resolution(const BoxMesh& mesh, std::span<const TruncatedBox> esupps,
                                 const ActiveSets& sets) {
  LocalResolution r;
  const std::size_t n = mesh.dimension();
  r.h_phi.assign(mesh.size(), std::vector<double>(n, 0.0));
  r.h_mesh.resize(mesh.size());
  for (std::size_t e = 0; e < mesh.size(); ++e) {
    r.h_mesh[e] = mesh.element(e).size();
    if (sets.extended[e].empty())
      throw std::invalid_argument("element not covered by any extended support");
    for (std::size_t g : sets.extended[e]) {
      const auto h = esupps[g].size();
      for (std::size_t i = 0; i < n; ++i) r.h_phi[e][i] = std::max(r.h_phi[e][i], h[i]);
    }
  }
  return r;
}

RegularityReport regularity_report(const BoxMesh& mesh, std::span<const TruncatedBox> esupps,
                                   const ActiveSets& sets, std::vector<double> gamma, double p) {
  const std::size_t n = mesh.dimension();
  if (gamma.size() != n) throw std::invalid_argument("gamma dimension mismatch");
  RegularityReport r;
  r.dimension = n;
  r.p = p;
  for (std::size_t g = 0; g < sets.support_elements.size(); ++g)
    r.c_count = std::max(r.c_count, sets.support_elements[g].size());
  for (std::size_t e = 0; e < mesh.size(); ++e) {
    const auto h = mesh.element(e).size();
    r.c_o = std::max(r.c_o, aspect(h));
    r.c_e = std::max(r.c_e, sets.extended[e].size());
    for (std::size_t g : sets.active[e]) r.c_m = std::max(r.c_m, max_ratio(esupps[g].size(), h));
  }
  for (const auto& es : esupps) r.c_a = std::max(r.c_a, aspect(es.size()));

  const double ip = reciprocal(p);
  r.gamma_phi.resize(sets.support_elements.size());
  std::vector<double> ratio(n), expo(n);
  for (std::size_t g = 0; g < sets.support_elements.size(); ++g) {
    const auto ha = esupps[g].size();
    double acc = 0.0;
    for (std::size_t e : sets.support_elements[g]) {
      const auto h = mesh.element(e).size();
      for (std::size_t i = 0; i < n; ++i) {
        ratio[i] = h[i] / ha[i];
        expo[i] = std::isinf(p) ? gamma[i] : gamma[i] * p + 1.0;
      }
      const double t = vec_pow(ratio, expo);
      acc = std::isinf(p) ? std::max(acc, t) : acc + t;
    }
    r.gamma_phi[g] = std::isinf(p) ? acc : std::pow(acc, ip);
    r.gamma_max = std::max(r.gamma_max, r.gamma_phi[g]);
  }
  r.gamma = std::move(gamma);
  return r;
}

std::vector<BoundCheck> gamma_bound_checks(const RegularityReport& r) {
  const double ip = reciprocal(r.p);
  const double gmin = *std::min_element(r.gamma.begin(), r.gamma.end());
  std::vector<BoundCheck> out;

  BoundCheck nonneg{"gamma>=0", r.gamma_max, 1.0, gmin >= 0.0, true};
  if (nonneg.applicable) nonneg.pass = within(r.gamma_max, 1.0);
  out.push_back(nonneg);

  // For gamma > 0 the count bound drops below one; the first row covers
  // that range, so clamp at one.
  const double b2 = std::pow(static_cast<double>(r.c_count), std::max(0.0, -gmin));
  BoundCheck count{"gamma>=-1/p,C_#", r.gamma_max, b2, gmin >= -ip, true};
  if (count.applicable) count.pass = within(r.gamma_max, b2);
  out.push_back(count);

  double neg = 0.0;
  for (double g : r.gamma) neg += std::max(0.0, -(g + ip));
  const double b3 = std::pow(r.c_m, neg + static_cast<double>(r.dimension) * ip);
  out.push_back({"C_m", r.gamma_max, b3, true, within(r.gamma_max, b3)});
  return out;
}

BoundCheck shape_regularity_check(const RegularityReport& r) {
  BoundCheck c{"C_m^-1 C_A <= C_O <= C_m C_A", r.c_o, r.c_m * r.c_a, true, true};
  c.pass = within(r.c_a / r.c_m, r.c_o) && within(r.c_o, r.c_m * r.c_a);
  return c;
}

DimensionBounds dimension_bounds(const BoxMesh& mesh, std::span<const TruncatedBox> esupps,
                                 const ActiveSets& sets, std::span<const int> degree) {
  if (degree.size() != mesh.dimension()) throw std::invalid_argument("degree dimension mismatch");
  const LocalResolution res = local_resolution(mesh, esupps, sets);
  DimensionBounds b;
  b.count = esupps.size();
  for (std::size_t e = 0; e < mesh.size(); ++e) {
    b.integral_h_inv += mesh.element(e).measure() / volume(res.h_phi[e]);
    b.c_e = std::max(b.c_e, sets.extended[e].size());
    double vmax = 0.0, vmin = INFINITY;
    for (std::size_t g : sets.active[e]) {
      const double v = volume(esupps[g].size());
      vmax = std::max(vmax, v);
      vmin = std::min(vmin, v);
    }
    if (!sets.active[e].empty()) b.c_g = std::max(b.c_g, vmax / vmin);
  }
  double dprod = 1.0;
  for (int d : degree) dprod *= d + 1;
  b.lower = dprod * b.integral_h_inv;
  b.upper = b.c_g * static_cast<double>(b.c_e) * b.integral_h_inv;
  b.lower_holds = within(b.lower, static_cast<double>(b.count));
  b.upper_holds = within(static_cast<double>(b.count), b.upper);
  return b;
}

}  // namespace boxqi
