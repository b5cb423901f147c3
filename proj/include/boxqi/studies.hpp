#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "boxqi/kernels.hpp"
#include "boxqi/multiindex.hpp"
#include "boxqi/space_file.hpp"

namespace boxqi {

// Optional pass/fail thresholds of a study.
struct StudyChecks {
  std::optional<double> expected_order;
  double order_tolerance = 0.25;
  std::optional<double> max_error;
  // Effectivity ratio at the finest level over that at the coarsest.
  std::optional<double> max_effectivity_growth;
  bool strictly_decreasing = false;
  std::optional<double> max_ratio;
  std::optional<double> min_r2;
  // Mesh report: exact values expected for named constants.
  std::vector<std::pair<std::string, double>> expected;
};

struct StudyConfig {
  SpaceDescription space;
  std::string function = "sin_prod";
  double p = 2.0;
  double q = 2.0;
  MultiIndex sigma;
  // Replaces the degree of the space file when set.
  std::optional<MultiIndex> degree;
  int level_min = 0, level_max = 0;
  int degree_min = 0, degree_max = 0;
  // Adds rhs seminorm and effectivity columns to the h-study.
  std::optional<SeminormWeight> effectivity;
  // Norm exponents audited by the mesh report.
  std::vector<double> report_p = {1.0, 2.0, std::numeric_limits<double>::infinity()};
  StudyChecks checks;
  std::uint64_t seed = 0;
};

// Config files are JSON:
//   {"space": "<path relative to the config>" | {inline space},
//    "function": "sin_prod", "p": 2 | "inf", "q": 2 | "inf", "sigma": [0, 0],
//    "degree": [2, 2], "levels": [l0, l1], "degrees": [d0, d1],
//    "effectivity": "rho" | "anisotropic", "report_p": [1, 2, "inf"],
//    "checks": {"expected_order", "order_tolerance", "max_error",
//               "max_effectivity_growth", "strictly_decreasing", "max_ratio",
//               "min_r2", "expected": {"c_count": 9, ...}}}
// Throws InputError on malformed or inconsistent input.
StudyConfig parse_study_config(const std::string& text, const std::filesystem::path& base_dir = {});
StudyConfig load_study_config(const std::filesystem::path& path);

struct CheckResult {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  bool pass = true;
};

struct StudyResult {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  // If nonempty, written as a leading text column.
  std::vector<std::string> row_labels;
  std::vector<CheckResult> checks;
  // Fitted quantities reported alongside the table.
  std::vector<std::pair<std::string, double>> summary;

  bool passed() const;
};

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

// Ordinary least squares y = slope * x + intercept. Needs two distinct x.
LinearFit least_squares(std::span<const double> x, std::span<const double> y);

// Rows: level, elements, dofs, h_max, error, order (+ rhs, effectivity).
// The fitted order uses the last three levels.
StudyResult run_h_study(const StudyConfig& cfg, Exec exec = Exec::parallel);
// Rows: degree, dofs, error, ratio. Fits log10 error against d and against
// dofs^{1/n}, excluding errors below 1e-13.
StudyResult run_p_study(const StudyConfig& cfg, Exec exec = Exec::parallel);
// Rows: quantity, value, bound, pass (1/0) for every mesh constant and
// bound check; bound is nan where none applies.
StudyResult run_mesh_report(const StudyConfig& cfg);
StudyResult run_dim_bound_check(const StudyConfig& cfg);

// Header line and rows, %.17g, LF line endings.
std::string to_csv(const StudyResult& result);
std::string format_number(double v);

}  // namespace boxqi
