#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "boxqi/box.hpp"
#include "boxqi/boxmesh.hpp"
#include "boxqi/bspline.hpp"
#include "boxqi/multiindex.hpp"
#include "boxqi/spaces.hpp"

namespace boxqi {

// Malformed or inconsistent description files.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Mesh files (JSON):
//   {"dimension": n, "elements": [{"lo": [...], "hi": [...]}, ...]}
//   {"dimension": n, "tensor": {"knots_axis_0": [...], ..., "knots_axis_{n-1}": [...]}}
// Tensor knots are strictly increasing breakpoints.
BoxMesh parse_mesh(const std::string& text);

// Space files (JSON), "dimension" plus exactly one of:
//   "tps": {"degree": [...], "knots_axis_i": [...] | "breaks_axis_i": [...]}
//   "thb": {"degree": [...], "levels": [{"knots_axis_i" | "breaks_axis_i": [...],
//            "domain": [{"lo": [...], "hi": [...]}]}, ...]}
//   "lr":  {"degree": [...], "domain": {"lo": [...], "hi": [...]},
//            "insertions": [{"axis", "position", "span_lo", "span_hi", "multiplicity"?}]}
// knots_axis_i is a full open knot vector, breaks_axis_i a breakpoint list
// with single interior knots. THB domains are half-open element index
// ranges of the previous level; the first level has no domain.
struct SpaceDescription {
  SpaceKind kind = SpaceKind::tps;
  MultiIndex degree;
  std::vector<OpenKnotVector> knots;  // tps
  std::vector<THBLevel> levels;       // thb, domains resolved to boxes
  Box lr_domain;                      // lr
  std::vector<MeshlineInsertion> insertions;

  std::size_t dimension() const { return degree.size(); }
  SplineSpace build() const;
  // Bisects every knot interval on every level. Throws InputError for LR.
  SpaceDescription refined() const;
  // Same breakpoints with maximal smoothness at the new degree.
  SpaceDescription with_degree(const MultiIndex& dvec) const;
};

SpaceDescription parse_space(const std::string& text);

std::string read_text_file(const std::filesystem::path& path);
SpaceDescription load_space(const std::filesystem::path& path);

}  // namespace boxqi
