#include "refl/refl.h"

#include <memory>
#include <sstream>
#include <string>

#include "refl/harness.hpp"
#include "refl/io.hpp"
#include "refl/render.hpp"

struct refl_group {
  refl::CoxeterMatrix matrix;
};

struct refl_result {
  std::string json;
  std::string text;
  bool pass = true;
};

namespace {

thread_local std::string last_error;

refl_status status_of(refl::ErrorCode c) {
  switch (c) {
    case refl::ErrorCode::InputError: return REFL_ERR_INPUT;
    case refl::ErrorCode::GeometryError: return REFL_ERR_GEOMETRY;
    case refl::ErrorCode::NonDiscretePair: return REFL_ERR_NON_DISCRETE;
    case refl::ErrorCode::BoundExceeded: return REFL_ERR_BOUND;
    case refl::ErrorCode::IndexBoundExceeded: return REFL_ERR_INDEX_BOUND;
    case refl::ErrorCode::Unsupported: return REFL_ERR_UNSUPPORTED;
  }
  return REFL_ERR_INTERNAL;
}

refl::Tolerances tolerances(const refl_options* o) {
  refl::Tolerances t;
  if (o) {
    t.geo = o->tol_geo;
    t.ang = o->tol_ang;
  }
  return t;
}

refl::Bounds bounds(const refl_options* o) {
  refl::Bounds b;
  if (o) {
    b.max_depth = o->max_depth;
    b.max_chambers = o->max_chambers;
    b.max_index = o->max_index;
  }
  return b;
}

template <class F>
refl_status guarded(refl_result** out, F&& body) {
  last_error.clear();
  if (out) *out = nullptr;
  auto r = std::make_unique<refl_result>();
  try {
    const refl_status s = body(*r);
    if (out) *out = r.release();
    return s;
  } catch (const refl::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    last_error = e.what();
    return REFL_ERR_INTERNAL;
  }
}

std::string report_line(const refl::SuiteReport& r) {
  std::ostringstream s;
  s << r.suite << ": " << (r.pass() ? "PASS" : "FAIL") << " (cases " << r.cases << ", violations "
    << r.violations.size() << ", expected " << r.expected.size() << ")";
  for (const auto& [k, v] : r.counters) s << " " << k << "=" << v;
  s << "\n";
  for (const auto& v : r.violations) s << "  violation " << v.case_id << ": " << v.detail << "\n";
  return s.str();
}

}  // namespace

extern "C" {

void refl_options_init(refl_options* o) {
  if (!o) return;
  const refl::Tolerances t;
  const refl::Corpus c = refl::Corpus::default_corpus();
  o->tol_geo = t.geo;
  o->tol_ang = t.ang;
  o->max_depth = c.bounds.max_depth;
  o->max_chambers = c.bounds.max_chambers;
  o->max_index = c.bounds.max_index;
  o->jobs = 1;
  o->max_rank = 8;
}

refl_status refl_group_parse(const char* json, refl_group** out) {
  last_error.clear();
  if (!json || !out) {
    last_error = "null argument";
    return REFL_ERR_INPUT;
  }
  *out = nullptr;
  try {
    *out = new refl_group{refl::coxeter_from_json(refl::parse_json(json))};
    return REFL_OK;
  } catch (const refl::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    last_error = e.what();
    return REFL_ERR_INPUT;
  }
}

void refl_group_free(refl_group* g) { delete g; }

int refl_group_rank(const refl_group* g) { return g ? g->matrix.rank() : 0; }

refl_status refl_classify(const refl_group* g, const refl_options* opts, refl_result** out) {
  return guarded(out, [&](refl_result& r) {
    if (!g) throw refl::input_error("null group");
    const auto rep = refl::classify_report(g->matrix, tolerances(opts));
    r.json = rep.document.dump(2);
    r.text = rep.text;
    return REFL_OK;
  });
}

refl_status refl_subgroup(const refl_group* g, const char* subgroup_json, const refl_options* opts, refl_result** out) {
  return guarded(out, [&](refl_result& r) {
    if (!g || !subgroup_json) throw refl::input_error("null argument");
    const refl::Tolerances tol = tolerances(opts);
    const refl::SubgroupSpec h = refl::subgroup_from_json(refl::parse_json(subgroup_json));
    const refl::Representation rep(g->matrix, tol);
    const refl::CanonicalSystem sys = refl::canonical_generators(rep, refl::spec_roots(rep, h));
    refl::TheoremVerdict v;
    refl_status status = REFL_OK;
    std::ostringstream text;
    try {
      const refl::SubgroupChamber sc = refl::subgroup_chamber(rep, sys, bounds(opts));
      v = refl::theorem_check(rep, sc);
    } catch (const refl::Error& e) {
      if (e.code() != refl::ErrorCode::IndexBoundExceeded) throw;
      last_error = e.what();
      status = REFL_ERR_INDEX_BOUND;
      v.k_f = g->matrix.rank();
      v.k_p = static_cast<int>(sys.roots.size());
      v.holds = v.k_p >= v.k_f;
    }
    r.json = refl::to_json(v).dump(2);
    r.pass = v.holds || !v.finite_volume;
    text << "canonical roots:\n";
    for (const auto& root : sys.roots) text << "  " << refl::Json(std::vector<double>(root.begin(), root.end())).dump() << "\n";
    text << "k_F " << v.k_f << ", k_P " << v.k_p << ", index "
         << (v.index ? std::to_string(*v.index) : std::string("exceeded bound")) << ", finite_volume "
         << (v.finite_volume ? "true" : "false") << ", holds " << (v.holds ? "true" : "false") << "\n";
    r.text = text.str();
    return status;
  });
}

refl_status refl_enumerate(const refl_group* g, const refl_options* opts, refl_result** out) {
  return guarded(out, [&](refl_result& r) {
    if (!g) throw refl::input_error("null group");
    refl::Corpus c;
    c.groups.push_back({"group", g->matrix});
    c.bounds = bounds(opts);
    c.tol = tolerances(opts);
    c.jobs = opts ? opts->jobs : 1;
    const refl::Enumeration en = refl::enumerate_subgroups(c);
    refl::Json entries = refl::Json::array();
    std::ostringstream text;
    for (const auto& e : en.entries) {
      auto j = refl::to_json(e);
      j.erase("group");
      entries.push_back(j);
      text << "index " << e.index << ", facets " << e.facet_count << ", holds " << (e.verdict.holds ? "true" : "false")
           << ", generators " << refl::Json(e.generators).dump() << "\n";
      r.pass = r.pass && (e.verdict.holds || !e.verdict.finite_volume);
    }
    text << en.entries.size() << " subgroups (" << en.subsets << " subsets, " << en.distinct_systems
         << " distinct systems, " << en.skipped_bound << " over the index bound)\n";
    r.json = refl::Json{{"group", refl::to_json(g->matrix)},
                        {"entries", entries},
                        {"subsets", en.subsets},
                        {"distinct_systems", en.distinct_systems},
                        {"skipped_bound", en.skipped_bound}}
                 .dump(2);
    r.text = text.str();
    return REFL_OK;
  });
}

refl_status refl_verify(const char* suite, const refl_options* opts, refl_result** out) {
  return guarded(out, [&](refl_result& r) {
    const std::string name = suite ? suite : "all";
    const refl::Tolerances tol = tolerances(opts);
    const int jobs = opts ? opts->jobs : 1;
    const bool all = name == "all";
    if (!all && name != "theorem" && name != "lemma1" && name != "lemma2" && name != "lemma3" && name != "remark2")
      throw refl::input_error("unknown suite '" + name + "'");
    std::vector<refl::SuiteReport> reports;
    if (all || name == "theorem") {
      refl::Corpus c = refl::Corpus::default_corpus();
      c.bounds = bounds(opts);
      c.tol = tol;
      c.jobs = jobs;
      reports.push_back(refl::enumerate_and_verify(c));
    }
    if (all || name == "lemma1") reports.push_back(refl::lemma1_suite(refl::polygon_corpus(true, tol), tol, jobs));
    if (all || name == "lemma2") reports.push_back(refl::lemma2_suite(opts ? opts->max_rank : 8, tol));
    if (all || name == "lemma3") reports.push_back(refl::lemma3_suite(refl::polygon_corpus(true, tol), tol, jobs));
    if (all || name == "remark2") reports.push_back(refl::remark2_regression(tol));
    refl::Json docs = refl::Json::array();
    for (const auto& rep : reports) {
      docs.push_back(refl::to_json(rep));
      r.text += report_line(rep);
      r.pass = r.pass && rep.pass();
    }
    r.json = (reports.size() == 1 ? docs[0] : refl::Json{{"pass", r.pass}, {"suites", docs}}).dump(2);
    return REFL_OK;
  });
}

refl_status refl_render(const refl_group* g, const char* render_json, const refl_options* opts, refl_result** out) {
  return guarded(out, [&](refl_result& r) {
    if (!g) throw refl::input_error("null group");
    refl::RenderSpec spec;
    if (render_json) {
      const refl::Json doc = refl::parse_json(render_json);
      if (!doc.is_object()) throw refl::input_error("render options must be an object");
      if (doc.contains("model")) {
        auto m = refl::model_from_string(doc.at("model").get<std::string>());
        if (!m) throw refl::input_error("model: expected poincare_disk, euclidean_plane or auto");
        spec.model = *m;
      }
      if (doc.contains("depth")) spec.depth = doc.at("depth").get<int>();
      if (doc.contains("chamber_stroke")) spec.chamber_stroke = doc.at("chamber_stroke").get<double>();
      if (doc.contains("mirror_stroke")) spec.mirror_stroke = doc.at("mirror_stroke").get<double>();
      if (doc.contains("highlight")) spec.highlight = refl::subgroup_from_json(doc.at("highlight"));
    }
    const refl::Rendering out_svg = refl::render_svg(g->matrix, spec, bounds(opts), tolerances(opts));
    r.text = out_svg.svg;
    r.json = refl::Json{{"chambers", out_svg.chambers}, {"highlighted", out_svg.highlighted}}.dump(2);
    return REFL_OK;
  });
}

refl_status refl_polytope(const char* json, const refl_options* opts, refl_result** out) {
  return guarded(out, [&](refl_result& r) {
    if (!json) throw refl::input_error("null argument");
    const refl::Tolerances tol = tolerances(opts);
    const refl::Polytope p = refl::polytope_from_json(refl::parse_json(json), tol);
    refl::Json doc = refl::to_json(p, tol);
    if (p.space().dim == 2 && p.finite_volume() && refl::is_acute_angled(p, tol)) {
      const refl::AndreevReport a = refl::andreev_verify(p, tol);
      doc["andreev"] = {{"face_pairs", a.face_pairs}, {"disjoint_pairs", a.disjoint_pairs},
                        {"violations", static_cast<int>(a.violations.size())}};
      r.pass = a.pass();
    }
    r.json = doc.dump(2);
    r.text = r.json + "\n";
    return REFL_OK;
  });
}

const char* refl_result_json(const refl_result* r) { return r ? r->json.c_str() : ""; }
const char* refl_result_text(const refl_result* r) { return r ? r->text.c_str() : ""; }
int refl_result_pass(const refl_result* r) { return r && r->pass ? 1 : 0; }
void refl_result_free(refl_result* r) { delete r; }
const char* refl_last_error(void) { return last_error.c_str(); }

const char* refl_status_name(refl_status s) {
  switch (s) {
    case REFL_OK: return "ok";
    case REFL_ERR_INPUT: return "input error";
    case REFL_ERR_GEOMETRY: return "geometry error";
    case REFL_ERR_NON_DISCRETE: return "non-discrete pair";
    case REFL_ERR_BOUND: return "bound exceeded";
    case REFL_ERR_INDEX_BOUND: return "index bound exceeded";
    case REFL_ERR_UNSUPPORTED: return "unsupported";
    case REFL_ERR_INTERNAL: return "internal error";
  }
  return "unknown";
}

}  // extern "C"
