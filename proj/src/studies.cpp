#include "boxqi/studies.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>

#include "boxqi/hilbert.hpp"
#include "boxqi/quasi_interpolant.hpp"
#include "boxqi/regularity.hpp"
#include "boxqi/test_functions.hpp"
#include "json.hpp"

namespace boxqi {

namespace {

using nlohmann::json;

constexpr double kRoundingFloor = 1e-13;
const double kNaN = std::numeric_limits<double>::quiet_NaN();

double parse_exponent(const json& j, const std::string& what) {
  if (j.is_string() && (j.get<std::string>() == "inf" || j.get<std::string>() == "infinity"))
    return std::numeric_limits<double>::infinity();
  if (!j.is_number() || j.get<double>() < 1.0) throw InputError(what + " must be a number >= 1 or \"inf\"");
  return j.get<double>();
}

std::pair<int, int> parse_range(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    throw InputError(what + " must be [first, last]");
  const int a = j[0].get<int>(), b = j[1].get<int>();
  if (a < 0 || b < a) throw InputError(what + " must satisfy 0 <= first <= last");
  return {a, b};
}

MultiIndex parse_multiindex(const json& j, std::size_t n, const std::string& what) {
  if (!j.is_array() || j.size() != n) throw InputError(what + " must have one entry per axis");
  std::vector<int> v;
  for (const auto& x : j) {
    if (!x.is_number_integer() || x.get<int>() < 0) throw InputError(what + " entries must be non-negative integers");
    v.push_back(x.get<int>());
  }
  return MultiIndex(std::move(v));
}

std::optional<double> optional_number(const json& obj, const std::string& key) {
  if (!obj.contains(key)) return std::nullopt;
  if (!obj.at(key).is_number()) throw InputError("checks." + key + " must be a number");
  return obj.at(key).get<double>();
}

bool same_degree(const MultiIndex& d) {
  for (std::size_t i = 1; i < d.size(); ++i)
    if (d[i] != d[0]) return false;
  return true;
}

// Sobolev index set for an isotropic degree, reduced otherwise.
IndexSet seminorm_indices(const MultiIndex& degree, const MultiIndex& sigma) {
  if (same_degree(degree)) return sobolev_K(degree[0], degree.size(), sigma).k0;
  return reduced_K(degree, sigma).k0;
}

double h_max(const BoxMesh& mesh) {
  double h = 0.0;
  for (const auto& e : mesh.elements())
    for (double w : e.size()) h = std::max(h, w);
  return h;
}

// An empty sigma stands for the zero multi-index.
MultiIndex sigma_of(const StudyConfig& cfg, std::size_t n) {
  if (cfg.sigma.size() == 0) return MultiIndex(n, 0);
  if (cfg.sigma.size() != n) throw InputError("sigma has the wrong dimension");
  return cfg.sigma;
}

void check_sigma(const MultiIndex& sigma, const MultiIndex& degree) {
  if (!sigma.dominated_by(degree)) throw InputError("sigma exceeds the spline degree");
}

CheckResult at_most(std::string name, double value, double bound) {
  return {std::move(name), value, bound, value <= bound};
}

bool close(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

}  // namespace

bool StudyResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

StudyConfig parse_study_config(const std::string& text, const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw InputError("config must be a JSON object");
  StudyConfig cfg;
  try {
    if (!root.contains("space")) throw InputError("missing field 'space'");
    const json& sp = root.at("space");
    if (sp.is_string())
      cfg.space = load_space(base_dir / sp.get<std::string>());
    else
      cfg.space = parse_space(sp.dump());
    const std::size_t n = cfg.space.dimension();

    if (root.contains("function")) {
      if (!root.at("function").is_string()) throw InputError("function must be a string");
      cfg.function = root.at("function").get<std::string>();
    }
    try {
      make_test_function(cfg.function, n);
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
    if (root.contains("p")) cfg.p = parse_exponent(root.at("p"), "p");
    if (root.contains("q")) cfg.q = parse_exponent(root.at("q"), "q");
    cfg.sigma = root.contains("sigma") ? parse_multiindex(root.at("sigma"), n, "sigma") : MultiIndex(n, 0);
    if (root.contains("degree")) {
      cfg.degree = parse_multiindex(root.at("degree"), n, "degree");
      if (cfg.degree->max_entry() > kMaxHilbertDegree) throw InputError("degree exceeds the supported maximum");
    }
    if (cfg.space.degree.max_entry() > kMaxHilbertDegree) throw InputError("space degree exceeds the supported maximum");
    if (root.contains("levels")) std::tie(cfg.level_min, cfg.level_max) = parse_range(root.at("levels"), "levels");
    if (root.contains("degrees")) {
      std::tie(cfg.degree_min, cfg.degree_max) = parse_range(root.at("degrees"), "degrees");
      if (cfg.degree_max > kMaxHilbertDegree) throw InputError("degrees exceed the supported maximum");
    }
    if (root.contains("effectivity")) {
      const json& e = root.at("effectivity");
      if (e == "rho")
        cfg.effectivity = SeminormWeight::rho;
      else if (e == "anisotropic")
        cfg.effectivity = SeminormWeight::anisotropic;
      else
        throw InputError("effectivity must be \"rho\" or \"anisotropic\"");
    }
    if (root.contains("report_p")) {
      cfg.report_p.clear();
      for (const auto& p : root.at("report_p")) cfg.report_p.push_back(parse_exponent(p, "report_p"));
    }
    if (root.contains("seed")) {
      if (!root.at("seed").is_number_unsigned()) throw InputError("seed must be a non-negative integer");
      cfg.seed = root.at("seed").get<std::uint64_t>();
    }
    if (root.contains("checks")) {
      const json& c = root.at("checks");
      if (!c.is_object()) throw InputError("checks must be an object");
      cfg.checks.expected_order = optional_number(c, "expected_order");
      if (auto t = optional_number(c, "order_tolerance")) cfg.checks.order_tolerance = *t;
      cfg.checks.max_error = optional_number(c, "max_error");
      cfg.checks.max_effectivity_growth = optional_number(c, "max_effectivity_growth");
      cfg.checks.max_ratio = optional_number(c, "max_ratio");
      cfg.checks.min_r2 = optional_number(c, "min_r2");
      if (c.contains("strictly_decreasing")) {
        if (!c.at("strictly_decreasing").is_boolean()) throw InputError("checks.strictly_decreasing must be a boolean");
        cfg.checks.strictly_decreasing = c.at("strictly_decreasing").get<bool>();
      }
      if (c.contains("expected")) {
        for (const auto& [k, v] : c.at("expected").items()) {
          if (!v.is_number()) throw InputError("checks.expected." + k + " must be a number");
          cfg.checks.expected.emplace_back(k, v.get<double>());
        }
      }
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed config: ") + e.what());
  }
  return cfg;
}

StudyConfig load_study_config(const std::filesystem::path& path) {
  return parse_study_config(read_text_file(path), path.parent_path());
}

LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("need at least two points");
  const double m = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("need two distinct abscissae");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

StudyResult run_h_study(const StudyConfig& cfg, Exec exec) {
  SpaceDescription desc = cfg.degree ? cfg.space.with_degree(*cfg.degree) : cfg.space;
  const std::size_t n = desc.dimension();
  const MultiIndex sigma = sigma_of(cfg, n);
  check_sigma(sigma, desc.degree);
  const FunctionOracle f = make_test_function(cfg.function, n);
  const IndexSet K = seminorm_indices(desc.degree, sigma);

  StudyResult r;
  r.header = {"level", "elements", "dofs", "h_max", "error", "order"};
  if (cfg.effectivity) {
    r.header.push_back("rhs");
    r.header.push_back("effectivity");
  }
  std::vector<double> log_h, log_e;
  for (int level = 0; level <= cfg.level_max; ++level) {
    if (level > 0) desc = desc.refined();
    if (level < cfg.level_min) continue;
    const QuasiInterpolant q = assign_functionals(desc.build());
    const auto coeffs = apply_quasi_interp(q, f.value, exec);
    const double err = error_norm(f, q, coeffs, cfg.p, sigma, exec);
    const double h = h_max(q.spline_space().mesh);
    double order = kNaN;
    if (!r.rows.empty()) order = std::log(r.rows.back()[4] / err) / std::log(r.rows.back()[3] / h);
    std::vector<double> row = {static_cast<double>(level), static_cast<double>(q.spline_space().mesh.size()),
                               static_cast<double>(q.size()), h, err, order};
    if (cfg.effectivity) {
      const double rhs = rhs_seminorm(f, q, K, sigma, cfg.p, cfg.q, *cfg.effectivity, exec);
      row.push_back(rhs);
      row.push_back(err / rhs);
    }
    r.rows.push_back(std::move(row));
    log_h.push_back(std::log(h));
    log_e.push_back(std::log(err));
  }

  if (r.rows.size() >= 2) {
    const std::size_t k = std::min<std::size_t>(3, r.rows.size());
    const LinearFit fit = least_squares(std::span(log_h).last(k), std::span(log_e).last(k));
    r.summary.emplace_back("fitted_order", fit.slope);
    if (cfg.checks.expected_order) {
      const double dev = std::abs(fit.slope - *cfg.checks.expected_order);
      r.checks.push_back({"fitted_order", fit.slope, *cfg.checks.expected_order, dev <= cfg.checks.order_tolerance});
    }
  } else if (cfg.checks.expected_order) {
    throw InputError("an order check needs at least two levels");
  }
  if (cfg.checks.max_error) {
    double worst = 0.0;
    for (const auto& row : r.rows) worst = std::max(worst, row[4]);
    r.checks.push_back(at_most("max_error", worst, *cfg.checks.max_error));
  }
  if (cfg.checks.max_effectivity_growth) {
    if (!cfg.effectivity) throw InputError("effectivity growth check needs \"effectivity\"");
    const double growth = r.rows.back()[7] / r.rows.front()[7];
    r.summary.emplace_back("effectivity_growth", growth);
    r.checks.push_back(at_most("effectivity_growth", growth, *cfg.checks.max_effectivity_growth));
  }
  return r;
}

StudyResult run_p_study(const StudyConfig& cfg, Exec exec) {
  const std::size_t n = cfg.space.dimension();
  const MultiIndex sigma = sigma_of(cfg, n);
  if (cfg.degree_min < sigma.max_entry()) throw InputError("degree range must cover sigma");
  const FunctionOracle f = make_test_function(cfg.function, n);
  StudyResult r;
  r.header = {"degree", "dofs", "error", "ratio"};
  for (int d = cfg.degree_min; d <= cfg.degree_max; ++d) {
    const SpaceDescription desc = cfg.space.with_degree(MultiIndex(n, d));
    const QuasiInterpolant q = assign_functionals(desc.build());
    const auto coeffs = apply_quasi_interp(q, f.value, exec);
    const double err = error_norm(f, q, coeffs, cfg.p, sigma, exec);
    const double ratio = r.rows.empty() ? kNaN : err / r.rows.back()[2];
    r.rows.push_back({static_cast<double>(d), static_cast<double>(q.size()), err, ratio});
  }

  std::vector<double> deg, root_dofs, log_err;
  for (const auto& row : r.rows) {
    if (row[2] <= kRoundingFloor) continue;
    deg.push_back(row[0]);
    root_dofs.push_back(std::pow(row[1], 1.0 / static_cast<double>(n)));
    log_err.push_back(std::log10(row[2]));
  }
  std::optional<LinearFit> by_degree;
  if (deg.size() >= 2) {
    by_degree = least_squares(deg, log_err);
    const LinearFit by_dofs = least_squares(root_dofs, log_err);
    r.summary.emplace_back("tau", std::pow(10.0, by_degree->slope));
    r.summary.emplace_back("r2_degree", by_degree->r2);
    r.summary.emplace_back("tau_dofs", std::pow(10.0, by_dofs.slope));
    r.summary.emplace_back("r2_dofs", by_dofs.r2);
  }
  auto usable = [](const std::vector<double>& row) { return row[2] > kRoundingFloor; };
  if (cfg.checks.strictly_decreasing || cfg.checks.max_ratio) {
    double worst = 0.0;
    bool decreasing = true;
    for (std::size_t i = 1; i < r.rows.size(); ++i) {
      if (!usable(r.rows[i - 1]) || !usable(r.rows[i])) continue;
      worst = std::max(worst, r.rows[i][3]);
      decreasing = decreasing && r.rows[i][2] < r.rows[i - 1][2];
    }
    if (cfg.checks.strictly_decreasing) r.checks.push_back({"strictly_decreasing", decreasing ? 1.0 : 0.0, 1.0, decreasing});
    if (cfg.checks.max_ratio) r.checks.push_back(at_most("max_ratio", worst, *cfg.checks.max_ratio));
  }
  if (cfg.checks.min_r2) {
    const double r2 = by_degree ? by_degree->r2 : 0.0;
    r.checks.push_back({"r2_degree", r2, *cfg.checks.min_r2, r2 >= *cfg.checks.min_r2});
  }
  if (cfg.checks.max_error) {
    double worst = 0.0;
    for (const auto& row : r.rows) worst = std::max(worst, row[2]);
    r.checks.push_back(at_most("max_error", worst, *cfg.checks.max_error));
  }
  return r;
}

StudyResult run_mesh_report(const StudyConfig& cfg) {
  const SpaceDescription desc = cfg.degree ? cfg.space.with_degree(*cfg.degree) : cfg.space;
  const QuasiInterpolant q = assign_functionals(desc.build());
  const SplineSpace& s = q.spline_space();
  const std::size_t n = s.dimension();

  StudyResult r;
  r.header = {"quantity", "value", "bound", "pass"};
  auto add = [&](const std::string& name, double value, double bound, bool pass) {
    r.row_labels.push_back(name);
    r.rows.push_back({value, bound, pass ? 1.0 : 0.0});
  };

  const RegularityReport base = regularity_report(s.mesh, q.esupps, q.sets, std::vector<double>(n, 0.0), 2.0);
  add("generators", static_cast<double>(q.size()), kNaN, true);
  add("elements", static_cast<double>(s.mesh.size()), kNaN, true);
  add("c_count", static_cast<double>(base.c_count), kNaN, true);
  add("c_m", base.c_m, kNaN, true);
  add("c_o", base.c_o, kNaN, true);
  add("c_a", base.c_a, kNaN, true);
  add("c_e", static_cast<double>(base.c_e), kNaN, true);
  add("c_esupp", q.c_esupp, kNaN, true);
  const BoundCheck shape = shape_regularity_check(base);
  add("shape_regularity", shape.value, shape.bound, shape.pass);
  r.checks.push_back({"shape_regularity", shape.value, shape.bound, shape.pass});

  std::vector<std::pair<std::string, double>> known = {
      {"c_count", static_cast<double>(base.c_count)}, {"c_m", base.c_m}, {"c_o", base.c_o},
      {"c_a", base.c_a}, {"c_e", static_cast<double>(base.c_e)}, {"c_esupp", q.c_esupp}};

  if (s.kind == SpaceKind::thb) {
    const int k = thb_admissibility(s);
    double tensor = 1.0;
    for (std::size_t i = 0; i < n; ++i) tensor *= s.degree[i] + 1;
    add("admissibility", k, kNaN, true);
    const bool ok = static_cast<double>(base.c_e) <= k * tensor;
    add("c_e_vs_admissibility", static_cast<double>(base.c_e), k * tensor, ok);
    r.checks.push_back({"c_e_vs_admissibility", static_cast<double>(base.c_e), k * tensor, ok});
    known.emplace_back("admissibility", k);
  }
  if (s.kind == SpaceKind::lr) {
    add("lr_ell", q.lr_ell, kNaN, true);
    known.emplace_back("lr_ell", q.lr_ell);
  }

  for (double p : cfg.report_p) {
    std::vector<double> gammas = {0.0};
    if (!std::isinf(p)) gammas.push_back(-1.0 / p);
    for (double g : gammas) {
      const RegularityReport rep = regularity_report(s.mesh, q.esupps, q.sets, std::vector<double>(n, g), p);
      const std::string tag = "[p=" + format_number(p) + ";gamma=" + format_number(g) + "]";
      add("gamma_max" + tag, rep.gamma_max, kNaN, true);
      for (const auto& b : gamma_bound_checks(rep)) {
        add(b.name + tag, b.value, b.applicable ? b.bound : kNaN, b.pass);
        r.checks.push_back({b.name + tag, b.value, b.bound, b.pass});
      }
    }
  }

  for (const auto& [name, expected] : cfg.checks.expected) {
    auto it = std::find_if(known.begin(), known.end(), [&](const auto& kv) { return kv.first == name; });
    if (it == known.end()) throw InputError("unknown mesh constant '" + name + "'");
    r.checks.push_back({"expected_" + name, it->second, expected, close(it->second, expected)});
  }
  for (const auto& [name, value] : known) r.summary.emplace_back(name, value);
  return r;
}

StudyResult run_dim_bound_check(const StudyConfig& cfg) {
  const SpaceDescription desc = cfg.degree ? cfg.space.with_degree(*cfg.degree) : cfg.space;
  const QuasiInterpolant q = assign_functionals(desc.build());
  const SplineSpace& s = q.spline_space();
  const DimensionBounds b = dimension_bounds(s.mesh, q.esupps, q.sets, s.degree.entries());
  StudyResult r;
  r.header = {"count", "integral_h_inv", "lower", "upper", "c_g", "c_e", "lower_holds", "upper_holds"};
  r.rows.push_back({static_cast<double>(b.count), b.integral_h_inv, b.lower, b.upper, b.c_g,
                    static_cast<double>(b.c_e), b.lower_holds ? 1.0 : 0.0, b.upper_holds ? 1.0 : 0.0});
  r.checks.push_back({"lower_bound", b.lower, static_cast<double>(b.count), b.lower_holds});
  r.checks.push_back({"upper_bound", static_cast<double>(b.count), b.upper, b.upper_holds});
  return r;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_csv(const StudyResult& result) {
  std::string out;
  for (std::size_t i = 0; i < result.header.size(); ++i) {
    if (i) out += ',';
    out += result.header[i];
  }
  out += '\n';
  for (std::size_t k = 0; k < result.rows.size(); ++k) {
    bool first = true;
    if (!result.row_labels.empty()) {
      out += result.row_labels[k];
      first = false;
    }
    for (double v : result.rows[k]) {
      if (!first) out += ',';
      out += format_number(v);
      first = false;
    }
    out += '\n';
  }
  return out;
}

}  // namespace boxqi
