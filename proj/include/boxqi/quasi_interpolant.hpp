#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <vector>

#include "boxqi/box.hpp"
#include "boxqi/functionals.hpp"
#include "boxqi/lr_functional.hpp"
#include "boxqi/regularity.hpp"
#include "boxqi/spaces.hpp"

namespace boxqi {

// A spline space together with one dual functional per generator.
struct QuasiInterpolant {
  std::shared_ptr<const SplineSpace> space;
  std::vector<DualFunctional> functionals;
  std::vector<Box> eta;
  std::vector<TruncatedBox> esupps;
  ActiveSets sets;
  // LR only: nesting sets N_phi and unfolded coefficients z.
  std::vector<std::vector<NestingEntry>> nesting;
  std::vector<std::map<std::size_t, double>> z;
  double c_esupp = 1.0;
  std::size_t c_e = 0;
  // LR only: max over nesting pairs of h_psi / h_phi, componentwise.
  double lr_ell = 1.0;

  std::size_t size() const { return functionals.size(); }
  const SplineSpace& spline_space() const { return *space; }
  // max over generators of the bound on ||lambda_phi||_{*p} ||phi||_p.
  double lambda_bound(double p) const;
};

// Element of maximal volume among the candidates. Ties go to the smallest
// L2 norm of the G weight on the element, then to the lowest index.
std::size_t choose_eta(const BoxMesh& mesh, const std::vector<std::size_t>& candidates, const TensorBSpline& phi);

// Box element where the generator's functional integrates: for THB a
// level-matching element in the support, otherwise any support element.
Box eta_for(const SplineSpace& space, const Generator& g);

QuasiInterpolant assign_functionals(std::shared_ptr<const SplineSpace> space);
QuasiInterpolant assign_functionals(SplineSpace space);

}  // namespace boxqi
