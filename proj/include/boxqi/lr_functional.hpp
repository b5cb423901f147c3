#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "boxqi/box.hpp"
#include "boxqi/bspline.hpp"
#include "boxqi/functionals.hpp"

namespace boxqi {

struct NestingEntry {
  std::size_t ancestor;  // psi with phi nested in psi
  double coefficient;    // c_{psi,phi}
};

// N_phi for every generator, sorted by ancestor index.
std::vector<std::vector<NestingEntry>> nesting_sets(std::span<const TensorBSpline> generators);

// Unfolds l_phi = c_phi - sum_{psi in N_phi} c_{psi,phi} l_psi into
// l_phi = sum_chi z_{chi,phi} c_chi. Each map holds z_{.,phi}, including
// z_{phi,phi} = 1. Throws std::logic_error on a cyclic nesting relation.
std::vector<std::map<std::size_t, double>> lr_unfold(const std::vector<std::vector<NestingEntry>>& nesting);

struct LRFunctionals {
  std::vector<std::vector<NestingEntry>> nesting;
  std::vector<std::map<std::size_t, double>> z;
  std::vector<DualFunctional> functionals;
};

// lambda_phi = G_{phi,eta_phi} + sum_{psi in N_phi} z_{psi,phi} G_{psi, supp phi}.
LRFunctionals lr_functionals(std::span<const TensorBSpline> generators, std::span<const Box> eta);

DualFunctional lr_lambda(std::size_t phi, std::span<const TensorBSpline> generators,
                         std::span<const Box> eta);

}  // namespace boxqi
