#include "refl/io.hpp"

#include <cmath>
#include <sstream>

namespace refl {

namespace {

const Json& field(const Json& doc, const char* key, const std::string& where) {
  if (!doc.is_object() || !doc.contains(key)) throw input_error(where + ": missing \"" + key + "\"");
  return doc.at(key);
}

int as_int(const Json& v, const std::string& where) {
  if (!v.is_number_integer()) throw input_error(where + ": expected an integer");
  return v.get<int>();
}

double as_double(const Json& v, const std::string& where) {
  if (!v.is_number()) throw input_error(where + ": expected a number");
  return v.get<double>();
}

Eigen::VectorXd as_vector(const Json& v, const std::string& where) {
  if (!v.is_array()) throw input_error(where + ": expected an array");
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t k = 0; k < v.size(); ++k) out(k) = as_double(v[k], where + "[" + std::to_string(k) + "]");
  return out;
}

Json vector_json(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(x);
  return out;
}

Json angle_json(const AngleClass& a) {
  switch (a.kind) {
    case AngleClass::Intersecting: return {{"kind", "intersecting"}, {"angle", a.value}};
    case AngleClass::Parallel: return {{"kind", "parallel"}};
    case AngleClass::Divergent: return {{"kind", "divergent"}, {"distance", a.value}};
  }
  return {};
}

Json violations_json(const std::vector<Violation>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) {
    Json input;
    try {
      input = Json::parse(v.input);
    } catch (const Json::parse_error&) {
      input = v.input;
    }
    out.push_back({{"case", v.case_id}, {"detail", v.detail}, {"input", input}});
  }
  return out;
}

std::vector<Violation> violations_from(const Json& arr, const std::string& where) {
  if (!arr.is_array()) throw input_error(where + ": expected an array");
  std::vector<Violation> out;
  for (const auto& v : arr) {
    const Json& input = field(v, "input", where);
    out.push_back({field(v, "case", where).get<std::string>(), field(v, "detail", where).get<std::string>(),
                   input.is_string() ? input.get<std::string>() : input.dump()});
  }
  return out;
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw input_error(std::string("malformed JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Groups and subgroups

CoxeterMatrix coxeter_from_json(const Json& doc) {
  const Json& m = field(doc, "m", "group");
  if (!m.is_array() || m.empty()) throw input_error("group: \"m\" must be a non-empty array of rows");
  const int n = static_cast<int>(m.size());
  if (doc.contains("rank") && as_int(doc.at("rank"), "rank") != n)
    throw input_error("group: rank " + doc.at("rank").dump() + " does not match " + std::to_string(n) + " rows");
  std::vector<std::vector<int>> rows(n);
  for (int i = 0; i < n; ++i) {
    if (!m[i].is_array()) throw input_error("m[" + std::to_string(i) + "]: expected an array");
    for (std::size_t j = 0; j < m[i].size(); ++j)
      rows[i].push_back(as_int(m[i][j], "m[" + std::to_string(i) + "][" + std::to_string(j) + "]"));
  }
  std::map<std::pair<int, int>, double> weights;
  if (doc.contains("weights")) {
    const Json& ws = doc.at("weights");
    if (!ws.is_array()) throw input_error("weights: expected an array");
    for (std::size_t k = 0; k < ws.size(); ++k) {
      const std::string where = "weights[" + std::to_string(k) + "]";
      int i = as_int(field(ws[k], "i", where), where + ".i");
      int j = as_int(field(ws[k], "j", where), where + ".j");
      if (i > j) std::swap(i, j);
      weights[{i, j}] = as_double(field(ws[k], "c", where), where + ".c");
    }
  }
  return CoxeterMatrix(std::move(rows), std::move(weights));
}

Json to_json(const CoxeterMatrix& m) {
  Json doc;
  doc["rank"] = m.rank();
  doc["m"] = m.entries();
  Json ws = Json::array();
  for (const auto& [k, c] : m.weights()) ws.push_back({{"i", k.first}, {"j", k.second}, {"c", c}});
  if (!ws.empty()) doc["weights"] = ws;
  return doc;
}

SubgroupSpec subgroup_from_json(const Json& doc) {
  const Json& rs = field(doc, "reflections", "subgroup");
  if (!rs.is_array()) throw input_error("subgroup: \"reflections\" must be an array");
  SubgroupSpec h;
  for (std::size_t k = 0; k < rs.size(); ++k) {
    const std::string where = "reflections[" + std::to_string(k) + "]";
    SubgroupSpec::Entry e;
    if (rs[k].is_object() && rs[k].contains("root")) {
      e.root = as_vector(rs[k].at("root"), where + ".root");
    } else {
      const Json& w = field(rs[k], "word", where);
      if (!w.is_array()) throw input_error(where + ".word: expected an array");
      for (std::size_t i = 0; i < w.size(); ++i) e.word.push_back(as_int(w[i], where + ".word[" + std::to_string(i) + "]"));
    }
    h.reflections.push_back(std::move(e));
  }
  return h;
}

Json to_json(const SubgroupSpec& h) {
  Json rs = Json::array();
  for (const auto& e : h.reflections) {
    if (e.root)
      rs.push_back({{"root", vector_json(*e.root)}});
    else
      rs.push_back({{"word", e.word}});
  }
  return {{"reflections", rs}};
}

// ---------------------------------------------------------------------------
// Polytopes

Polytope polytope_from_json(const Json& doc, const Tolerances& tol) {
  if (doc.is_object() && doc.contains("triangle")) {
    const Json& t = doc.at("triangle");
    if (!t.is_array() || t.size() != 3) throw input_error("triangle: expected [p, q, r]");
    return realize_triangle(CoxeterMatrix::triangle(as_int(t[0], "triangle[0]"), as_int(t[1], "triangle[1]"),
                                                    as_int(t[2], "triangle[2]")),
                            tol);
  }
  const std::string kind = field(doc, "space", "polytope").get<std::string>();
  Space s;
  if (kind == "hyperbolic")
    s.kind = SpaceKind::Hyperbolic;
  else if (kind == "euclidean")
    s.kind = SpaceKind::Euclidean;
  else
    throw input_error("space: expected \"hyperbolic\" or \"euclidean\"");
  s.dim = doc.contains("dim") ? as_int(doc.at("dim"), "dim") : 2;
  const Json& hs = field(doc, "halfspaces", "polytope");
  if (!hs.is_array()) throw input_error("halfspaces: expected an array");
  std::vector<Hyperplane> planes;
  for (std::size_t k = 0; k < hs.size(); ++k) {
    const std::string where = "halfspaces[" + std::to_string(k) + "]";
    Hyperplane h;
    h.normal = as_vector(field(hs[k], "normal", where), where + ".normal");
    if (h.normal.size() != s.coords())
      throw input_error(where + ".normal: expected " + std::to_string(s.coords()) + " coordinates");
    h.offset = hs[k].contains("offset") ? as_double(hs[k].at("offset"), where + ".offset") : 0.0;
    planes.push_back(std::move(h));
  }
  return Polytope::from_halfspaces(s, planes, tol);
}

Json halfspaces_json(const Polytope& p) {
  Json hs = Json::array();
  for (const auto& h : p.facets()) {
    Json e{{"normal", vector_json(h.normal)}};
    if (!p.space().hyperbolic()) e["offset"] = h.offset;
    hs.push_back(e);
  }
  return {{"space", to_string(p.space().kind)}, {"dim", p.space().dim}, {"halfspaces", hs}};
}

Json to_json(const Polytope& p, const Tolerances& tol) {
  Json doc = halfspaces_json(p);
  Json vs = Json::array();
  for (const auto& v : p.vertices())
    vs.push_back({{"ideal", v.ideal}, {"point", vector_json(v.point)}, {"facets", v.facets}});
  doc["vertices"] = vs;
  Json angles = Json::array();
  for (auto [i, j] : p.adjacent_pairs())
    angles.push_back({{"facets", {i, j}}, {"angle", angle_json(dihedral_angle(p.facets()[i], p.facets()[j], p.space(), tol))}});
  doc["dihedral_angles"] = angles;
  doc["bounded"] = p.bounded();
  doc["finite_volume"] = p.finite_volume();
  doc["coxeter"] = is_coxeter_polytope(p, tol);
  doc["acute_angled"] = is_acute_angled(p, tol);
  if (p.space().dim == 2 && p.finite_volume()) doc["area"] = area2(p, tol);
  return doc;
}

// ---------------------------------------------------------------------------
// Verdicts and reports

TheoremVerdict verdict_from_json(const Json& doc) {
  TheoremVerdict v;
  v.k_f = as_int(field(doc, "k_F", "verdict"), "k_F");
  v.k_p = as_int(field(doc, "k_P", "verdict"), "k_P");
  const Json& idx = field(doc, "index", "verdict");
  if (idx.is_string()) {
    if (idx.get<std::string>() != "exceeded bound") throw input_error("index: expected an integer or \"exceeded bound\"");
  } else {
    v.index = as_int(idx, "index");
  }
  v.finite_volume = field(doc, "finite_volume", "verdict").get<bool>();
  v.holds = field(doc, "holds", "verdict").get<bool>();
  return v;
}

Json to_json(const TheoremVerdict& v) {
  Json doc;
  doc["k_F"] = v.k_f;
  doc["k_P"] = v.k_p;
  if (v.index)
    doc["index"] = *v.index;
  else
    doc["index"] = "exceeded bound";
  doc["finite_volume"] = v.finite_volume;
  doc["holds"] = v.holds;
  return doc;
}

SuiteReport report_from_json(const Json& doc) {
  SuiteReport r;
  r.suite = field(doc, "suite", "report").get<std::string>();
  r.cases = as_int(field(doc, "cases", "report"), "cases");
  r.violations = violations_from(field(doc, "violations", "report"), "violations");
  if (doc.contains("expected")) r.expected = violations_from(doc.at("expected"), "expected");
  if (doc.contains("counters"))
    for (const auto& [k, v] : doc.at("counters").items()) r.counters[k] = v.get<long>();
  r.wall_clock = as_double(field(doc, "wall_clock", "report"), "wall_clock");
  return r;
}

Json to_json(const SuiteReport& r) {
  Json doc;
  doc["suite"] = r.suite;
  doc["pass"] = r.pass();
  doc["cases"] = r.cases;
  doc["violations"] = violations_json(r.violations);
  doc["expected"] = violations_json(r.expected);
  Json counters = Json::object();
  for (const auto& [k, v] : r.counters) counters[k] = v;
  doc["counters"] = counters;
  doc["wall_clock"] = r.wall_clock;
  return doc;
}

Json to_json(const CanonicalSystem& s) {
  Json roots = Json::array();
  for (const auto& r : s.roots) roots.push_back(vector_json(r));
  return {{"roots", roots}};
}

Json diagram_json(const CoxeterDiagram& d) {
  Json edges = Json::array();
  for (const auto& e : d.edges()) {
    Json j{{"a", e.a}, {"b", e.b}};
    if (e.label == kInf) {
      j["label"] = "inf";
      j["weight"] = e.weight;
    } else {
      j["label"] = e.label;
    }
    edges.push_back(j);
  }
  return {{"nodes", d.size()}, {"edges", edges}};
}

Json to_json(const CorpusEntry& e) {
  Json doc;
  doc["group"] = e.group;
  doc["generators"] = e.generators;
  doc["canonical"] = to_json(e.system)["roots"];
  doc["index"] = e.index;
  doc["facet_count"] = e.facet_count;
  doc["verdict"] = to_json(e.verdict);
  doc["area_residual"] = e.area_residual;
  return doc;
}

// ---------------------------------------------------------------------------
// Classification

std::string group_type(const CoxeterMatrix& m, const Tolerances& tol) {
  const DiagramClass c = classify_diagram(CoxeterDiagram(m), tol);
  switch (c.kind) {
    case DiagramKind::Elliptic: return "elliptic";
    case DiagramKind::ParabolicUnion: return "parabolic";
    case DiagramKind::Mixed: return "mixed";
    case DiagramKind::Indefinite: break;
  }
  const Signature s = signature(gram_from_coxeter(m), tol.sig);
  return s.minus == 1 && s.zero == 0 ? "hyperbolic" : "indefinite";
}

ClassifyReport classify_report(const CoxeterMatrix& m, const Tolerances& tol) {
  const CoxeterDiagram d(m);
  const DiagramClass c = classify_diagram(d, tol);
  const Signature s = signature(gram_from_coxeter(m), tol.sig);
  const std::string type = group_type(m, tol);
  ClassifyReport out;
  Json comps = Json::array();
  for (const auto& comp : c.components)
    comps.push_back({{"nodes", comp.nodes}, {"type", to_string(comp.type)}, {"name", comp.name}});
  out.document = {{"rank", m.rank()},
                  {"type", type},
                  {"kind", to_string(c.kind)},
                  {"signature", {s.plus, s.zero, s.minus}},
                  {"components", comps},
                  {"diagram", diagram_json(d)},
                  {"art", diagram_art(d)}};
  std::ostringstream text;
  text << "type: " << type << ", signature (" << s.plus << "," << s.zero << "," << s.minus << "), components [";
  bool first = true;
  for (const auto& name : c.names()) {
    if (name.empty()) continue;
    text << (first ? "" : ", ") << name;
    first = false;
  }
  text << "]\n" << diagram_art(d);
  out.text = text.str();
  return out;
}

}  // namespace refl
