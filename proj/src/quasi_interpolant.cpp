#include "boxqi/quasi_interpolant.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace boxqi {

double QuasiInterpolant::lambda_bound(double p) const {
  double c = 0.0;
  for (const auto& l : functionals) c = std::max(c, functional_norm_bound(l, p));
  return c;
}

std::size_t choose_eta(const BoxMesh& mesh, const std::vector<std::size_t>& candidates, const TensorBSpline& phi) {
  if (candidates.empty()) throw std::invalid_argument("no element available for the functional");
  auto weight_size = [&](std::size_t e) {
    const GFunctional g(phi, mesh.element(e));
    double s = 1.0;
    for (std::size_t i = 0; i < phi.dimension(); ++i) {
      double sq = 0.0;
      for (double a : g.weight_coefficients(i)) sq += a * a;
      s *= std::sqrt(sq);
    }
    return s;
  };
  std::size_t best = candidates.front();
  double best_size = weight_size(best);
  for (std::size_t e : candidates) {
    if (e == best) continue;
    const double ve = mesh.element(e).measure(), vb = mesh.element(best).measure();
    if (ve < vb * (1.0 - 1e-12)) continue;
    const double se = weight_size(e);
    const bool larger = ve > vb * (1.0 + 1e-12);
    if (larger || se < best_size * (1.0 - 1e-9) || (se <= best_size * (1.0 + 1e-9) && e < best)) {
      best = e;
      best_size = se;
    }
  }
  return best;
}

Box eta_for(const SplineSpace& space, const Generator& g) {
  std::vector<std::size_t> candidates;
  const Box supp = g.spline.support();
  const double tol = space.mesh.tolerance();
  for (std::size_t e : g.support_elements) {
    if (space.kind == SpaceKind::thb && space.element_level[e] != g.level) continue;
    if (supp.contains(space.mesh.element(e), tol)) candidates.push_back(e);
  }
  return space.mesh.element(choose_eta(space.mesh, candidates, g.spline));
}

QuasiInterpolant assign_functionals(std::shared_ptr<const SplineSpace> space) {
  QuasiInterpolant q;
  q.space = space;
  const auto& gens = space->generators;
  const std::size_t n = space->dimension();
  for (const auto& g : gens) q.eta.push_back(eta_for(*space, g));

  if (space->kind == SpaceKind::lr) {
    const auto splines = space->splines();
    LRFunctionals lr = lr_functionals(splines, q.eta);
    q.functionals = std::move(lr.functionals);
    q.nesting = std::move(lr.nesting);
    q.z = std::move(lr.z);
    for (std::size_t phi = 0; phi < gens.size(); ++phi) {
      const auto h_phi = gens[phi].support_box.size();
      for (const auto& entry : q.nesting[phi]) {
        const auto h_psi = gens[entry.ancestor].support_box.size();
        for (std::size_t i = 0; i < n; ++i) q.lr_ell = std::max(q.lr_ell, h_psi[i] / h_phi[i]);
      }
    }
  } else {
    for (std::size_t i = 0; i < gens.size(); ++i)
      q.functionals.emplace_back(build_G(gens[i].spline, q.eta[i]));
  }

  std::vector<std::vector<std::size_t>> support_elements;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const Box outer = bounding_box(std::vector<Box>{gens[i].support_box, q.functionals[i].support()});
    const Box clipped = *outer.intersection(space->domain);
    q.esupps.emplace_back(clipped);
    support_elements.push_back(gens[i].support_elements);

    double support_measure = 0.0;
    for (std::size_t e : gens[i].support_elements) support_measure += space->mesh.element(e).measure();
    const auto h_esupp = clipped.size();
    const auto h_phi = gens[i].support_box.size();
    for (std::size_t a = 0; a < n; ++a) q.c_esupp = std::max(q.c_esupp, h_esupp[a] / h_phi[a]);
    // Element volumes summed in floating point; snap the exact-fit case.
    const double ratio = clipped.measure() / support_measure;
    if (ratio > 1.0 + 1e-12)
      q.c_esupp = std::max(q.c_esupp, std::pow(ratio, 1.0 / static_cast<double>(n)));
  }
  q.sets = active_sets(space->mesh, std::move(support_elements), q.esupps);
  for (const auto& e : q.sets.extended) q.c_e = std::max(q.c_e, e.size());
  return q;
}

QuasiInterpolant assign_functionals(SplineSpace space) {
  return assign_functionals(std::make_shared<const SplineSpace>(std::move(space)));
}

}  // namespace boxqi
