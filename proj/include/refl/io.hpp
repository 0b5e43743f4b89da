#pragma once

#include "json.hpp"

#include <string>

#include "refl/diagrams.hpp"
#include "refl/engine.hpp"
#include "refl/geometry.hpp"
#include "refl/harness.hpp"

namespace refl {

using Json = nlohmann::ordered_json;

/// Parses text, turning syntax errors into InputError.
Json parse_json(const std::string& text);

CoxeterMatrix coxeter_from_json(const Json& doc);
Json to_json(const CoxeterMatrix& m);

SubgroupSpec subgroup_from_json(const Json& doc);
Json to_json(const SubgroupSpec& h);

/// Halfspace list ({"space", "dim", "halfspaces": [{"normal", "offset"}]})
/// or {"triangle": [p, q, r]}.
Polytope polytope_from_json(const Json& doc, const Tolerances& tol = {});
/// Halfspace document plus derived data (vertices, angles, volume flags).
Json to_json(const Polytope& p, const Tolerances& tol = {});
Json halfspaces_json(const Polytope& p);

TheoremVerdict verdict_from_json(const Json& doc);
Json to_json(const TheoremVerdict& v);

SuiteReport report_from_json(const Json& doc);
Json to_json(const SuiteReport& r);

Json to_json(const CanonicalSystem& s);
Json diagram_json(const CoxeterDiagram& d);
Json to_json(const CorpusEntry& e);

struct ClassifyReport {
  Json document;
  std::string text;
};

/// "elliptic", "parabolic", "mixed", "hyperbolic" (signature (n-1,0,1)) or "indefinite".
std::string group_type(const CoxeterMatrix& m, const Tolerances& tol = {});
ClassifyReport classify_report(const CoxeterMatrix& m, const Tolerances& tol = {});

}  // namespace refl
