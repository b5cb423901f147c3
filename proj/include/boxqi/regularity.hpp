#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "boxqi/box.hpp"
#include "boxqi/boxmesh.hpp"

namespace boxqi {

struct ActiveSets {
  // M_phi: elements inside the support of each generator.
  std::vector<std::vector<std::size_t>> support_elements;
  // A_omega: generators whose support contains the element.
  std::vector<std::vector<std::size_t>> active;
  // E_omega: generators whose extended support contains the element.
  std::vector<std::vector<std::size_t>> extended;
};

ActiveSets active_sets(const BoxMesh& mesh, std::span<const TruncatedBox> supports,
                       std::span<const TruncatedBox> esupps);
// Variant for supports that are unions of elements but not truncated boxes.
ActiveSets active_sets(const BoxMesh& mesh, std::vector<std::vector<std::size_t>> support_elements,
                       std::span<const TruncatedBox> esupps);

struct LocalResolution {
  // Componentwise max of esupp sizes over E_omega, per element.
  std::vector<std::vector<double>> h_phi;
  // Element sizes.
  std::vector<std::vector<double>> h_mesh;
};

// Throws std::invalid_argument if some element has an empty E_omega.
LocalResolution local_resolution(const BoxMesh& mesh, std::span<const TruncatedBox> esupps,
                                 const ActiveSets& sets);

struct RegularityReport {
  std::size_t dimension = 0;
  std::size_t c_count = 0;  // max |M_phi|
  double c_m = 0.0;         // max h_esupp / h_omega over omega and A_omega
  double c_o = 0.0;         // element aspect ratio
  double c_a = 0.0;         // esupp aspect ratio
  std::size_t c_e = 0;      // max |E_omega|
  std::vector<double> gamma;
  double p = 0.0;
  std::vector<double> gamma_phi;
  double gamma_max = 0.0;
};

RegularityReport regularity_report(const BoxMesh& mesh, std::span<const TruncatedBox> esupps,
                                   const ActiveSets& sets, std::vector<double> gamma, double p);

struct BoundCheck {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  bool applicable = false;
  bool pass = true;
};

// The three bounds on Gamma_max from the mesh constants. Inapplicable rows
// pass trivially.
std::vector<BoundCheck> gamma_bound_checks(const RegularityReport& report);

// C_m^{-1} C_A <= C_O <= C_m C_A.
BoundCheck shape_regularity_check(const RegularityReport& report);

struct DimensionBounds {
  std::size_t count = 0;
  double integral_h_inv = 0.0;  // integral of h_Phi^{-1}
  double lower = 0.0;
  double upper = 0.0;
  double c_g = 0.0;
  std::size_t c_e = 0;
  bool lower_holds = false;
  bool upper_holds = false;
};

DimensionBounds dimension_bounds(const BoxMesh& mesh, std::span<const TruncatedBox> esupps,
                                 const ActiveSets& sets, std::span<const int> degree);

}  // namespace boxqi
