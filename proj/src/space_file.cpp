#include "boxqi/space_file.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace boxqi {

namespace {

using nlohmann::json;

const json& field(const json& obj, const std::string& key) {
  if (!obj.is_object() || !obj.contains(key)) throw InputError("missing field '" + key + "'");
  return obj.at(key);
}

std::vector<double> numbers(const json& j, const std::string& what) {
  if (!j.is_array()) throw InputError(what + " must be an array of numbers");
  std::vector<double> v;
  for (const auto& x : j) {
    if (!x.is_number()) throw InputError(what + " must be an array of numbers");
    v.push_back(x.get<double>());
  }
  return v;
}

std::vector<int> integers(const json& j, const std::string& what) {
  if (!j.is_array()) throw InputError(what + " must be an array of integers");
  std::vector<int> v;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw InputError(what + " must be an array of integers");
    v.push_back(x.get<int>());
  }
  return v;
}

std::size_t dimension_of(const json& root) {
  const json& d = field(root, "dimension");
  if (!d.is_number_integer() || d.get<int>() < 1) throw InputError("dimension must be a positive integer");
  return d.get<std::size_t>();
}

Box parse_box(const json& j, std::size_t n, const std::string& what) {
  auto lo = numbers(field(j, "lo"), what + ".lo");
  auto hi = numbers(field(j, "hi"), what + ".hi");
  if (lo.size() != n || hi.size() != n) throw InputError(what + " has the wrong dimension");
  try {
    return Box(std::move(lo), std::move(hi));
  } catch (const std::invalid_argument& e) {
    throw InputError(what + ": " + e.what());
  }
}

MultiIndex parse_degree(const json& obj, std::size_t n) {
  auto d = integers(field(obj, "degree"), "degree");
  if (d.size() != n) throw InputError("degree has the wrong dimension");
  for (int x : d)
    if (x < 0 || x > 30) throw InputError("degree entries must lie in [0, 30]");
  return MultiIndex(std::move(d));
}

// Knot vectors of one tensor level from knots_axis_i or breaks_axis_i.
std::vector<OpenKnotVector> parse_axes(const json& obj, const MultiIndex& degree) {
  std::vector<OpenKnotVector> axes;
  for (std::size_t i = 0; i < degree.size(); ++i) {
    const std::string k = "knots_axis_" + std::to_string(i);
    const std::string b = "breaks_axis_" + std::to_string(i);
    try {
      if (obj.contains(k))
        axes.emplace_back(numbers(obj.at(k), k), degree[i]);
      else if (obj.contains(b))
        axes.push_back(OpenKnotVector::from_breakpoints(numbers(obj.at(b), b), degree[i]));
      else
        throw InputError("missing " + k + " or " + b);
    } catch (const std::invalid_argument& e) {
      throw InputError("axis " + std::to_string(i) + ": " + e.what());
    }
  }
  return axes;
}

SpaceDescription parse_tps(const json& obj, std::size_t n) {
  SpaceDescription s;
  s.kind = SpaceKind::tps;
  s.degree = parse_degree(obj, n);
  s.knots = parse_axes(obj, s.degree);
  return s;
}

SpaceDescription parse_thb(const json& obj, std::size_t n) {
  SpaceDescription s;
  s.kind = SpaceKind::thb;
  s.degree = parse_degree(obj, n);
  const json& levels = field(obj, "levels");
  if (!levels.is_array() || levels.empty()) throw InputError("levels must be a nonempty array");
  for (std::size_t l = 0; l < levels.size(); ++l) {
    THBLevel level;
    level.knots = parse_axes(levels[l], s.degree);
    if (l > 0) {
      const json& dom = field(levels[l], "domain");
      if (!dom.is_array()) throw InputError("level domain must be an array");
      const auto& prev = s.levels.back().knots;
      for (const auto& range : dom) {
        auto lo = integers(field(range, "lo"), "domain.lo");
        auto hi = integers(field(range, "hi"), "domain.hi");
        if (lo.size() != n || hi.size() != n) throw InputError("domain range has the wrong dimension");
        std::vector<double> blo(n), bhi(n);
        for (std::size_t i = 0; i < n; ++i) {
          const auto br = prev[i].breakpoints();
          const int cells = static_cast<int>(br.size()) - 1;
          if (lo[i] < 0 || hi[i] > cells || lo[i] >= hi[i])
            throw InputError("domain range outside the previous level");
          blo[i] = br[lo[i]];
          bhi[i] = br[hi[i]];
        }
        level.domain.emplace_back(blo, bhi);
      }
    }
    s.levels.push_back(std::move(level));
  }
  return s;
}

SpaceDescription parse_lr(const json& obj, std::size_t n) {
  SpaceDescription s;
  s.kind = SpaceKind::lr;
  s.degree = parse_degree(obj, n);
  s.lr_domain = parse_box(field(obj, "domain"), n, "domain");
  const json& ins = obj.contains("insertions") ? obj.at("insertions") : json::array();
  if (!ins.is_array()) throw InputError("insertions must be an array");
  for (const auto& j : ins) {
    MeshlineInsertion m;
    const json& axis = field(j, "axis");
    if (!axis.is_number_integer() || axis.get<int>() < 0) throw InputError("axis must be a non-negative integer");
    m.axis = axis.get<std::size_t>();
    const json& pos = field(j, "position");
    if (!pos.is_number()) throw InputError("position must be a number");
    m.position = pos.get<double>();
    m.span_lo = numbers(field(j, "span_lo"), "span_lo");
    m.span_hi = numbers(field(j, "span_hi"), "span_hi");
    if (j.contains("multiplicity")) {
      if (!j.at("multiplicity").is_number_integer()) throw InputError("multiplicity must be an integer");
      m.multiplicity = j.at("multiplicity").get<int>();
    }
    s.insertions.push_back(std::move(m));
  }
  return s;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
}

std::vector<OpenKnotVector> smooth_axes(const std::vector<OpenKnotVector>& axes, const MultiIndex& dvec) {
  std::vector<OpenKnotVector> out;
  for (std::size_t i = 0; i < axes.size(); ++i)
    out.push_back(OpenKnotVector::from_breakpoints(axes[i].breakpoints(), dvec[i]));
  return out;
}

}  // namespace

BoxMesh parse_mesh(const std::string& text) {
  const json root = parse_json(text);
  const std::size_t n = dimension_of(root);
  try {
    if (root.contains("elements")) {
      std::vector<Box> boxes;
      for (const auto& e : root.at("elements")) boxes.push_back(parse_box(e, n, "element"));
      return BoxMesh(std::move(boxes));
    }
    const json& t = field(root, "tensor");
    std::vector<std::vector<double>> br;
    for (std::size_t i = 0; i < n; ++i) {
      const std::string k = "knots_axis_" + std::to_string(i);
      br.push_back(numbers(field(t, k), k));
      if (br.back().size() < 2) throw InputError(k + " needs at least two values");
      for (std::size_t j = 1; j < br.back().size(); ++j)
        if (!(br.back()[j] > br.back()[j - 1])) throw InputError(k + " must be strictly increasing");
    }
    return BoxMesh::tensor(br);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

SpaceDescription parse_space(const std::string& text) {
  const json root = parse_json(text);
  const std::size_t n = dimension_of(root);
  const int kinds = root.contains("tps") + root.contains("thb") + root.contains("lr");
  if (kinds != 1) throw InputError("space file needs exactly one of tps, thb, lr");
  try {
    if (root.contains("tps")) return parse_tps(root.at("tps"), n);
    if (root.contains("thb")) return parse_thb(root.at("thb"), n);
    return parse_lr(root.at("lr"), n);
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed space file: ") + e.what());
  }
}

SplineSpace SpaceDescription::build() const {
  try {
    switch (kind) {
      case SpaceKind::tps:
        return build_tps(knots);
      case SpaceKind::thb:
        return build_thb(levels);
      case SpaceKind::lr:
        return build_lr(degree, lr_domain, insertions);
    }
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  throw InputError("unknown space kind");
}

SpaceDescription SpaceDescription::refined() const {
  SpaceDescription r = *this;
  switch (kind) {
    case SpaceKind::tps:
      for (auto& k : r.knots) k = k.bisected();
      break;
    case SpaceKind::thb:
      for (auto& level : r.levels)
        for (auto& k : level.knots) k = k.bisected();
      break;
    case SpaceKind::lr:
      throw InputError("uniform refinement is not available for LR spaces");
  }
  return r;
}

SpaceDescription SpaceDescription::with_degree(const MultiIndex& dvec) const {
  if (dvec.size() != dimension()) throw InputError("degree has the wrong dimension");
  SpaceDescription r = *this;
  r.degree = dvec;
  switch (kind) {
    case SpaceKind::tps:
      r.knots = smooth_axes(knots, dvec);
      break;
    case SpaceKind::thb:
      for (auto& level : r.levels) level.knots = smooth_axes(level.knots, dvec);
      break;
    case SpaceKind::lr:
      for (const auto& m : insertions)
        if (m.multiplicity > dvec[m.axis] + 1) throw InputError("meshline multiplicity exceeds the new degree");
      break;
  }
  return r;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SpaceDescription load_space(const std::filesystem::path& path) { return parse_space(read_text_file(path)); }

}  // namespace boxqi
