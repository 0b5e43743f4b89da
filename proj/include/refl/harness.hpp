#pragma once

#include <map>
#include <string>
#include <vector>

#include "refl/common.hpp"
#include "refl/engine.hpp"
#include "refl/geometry.hpp"

namespace refl {

struct Violation {
  std::string case_id;
  std::string detail;
  std::string input;  ///< JSON document reproducing the case
  bool operator==(const Violation&) const = default;
};

struct SuiteReport {
  std::string suite;
  int cases = 0;
  std::vector<Violation> violations;
  std::vector<Violation> expected;  ///< counterexamples outside the hypotheses
  std::map<std::string, long> counters;
  double wall_clock = 0.0;  ///< seconds

  bool pass() const { return violations.empty(); }
  bool operator==(const SuiteReport&) const = default;
};

struct NamedGroup {
  std::string name;
  CoxeterMatrix matrix;
};

struct CorpusEntry {
  std::string group;
  CoxeterMatrix matrix;
  std::vector<std::vector<int>> generators;  ///< words of the reflections that produced the entry
  CanonicalSystem system;
  int index = 0;
  int facet_count = 0;
  TheoremVerdict verdict;
  double area_residual = 0.0;  ///< |area(H chamber) - index * area(F)|, finite-area entries
};

struct Corpus {
  std::vector<NamedGroup> groups;
  Bounds bounds;
  Tolerances tol;
  int max_subset = 4;
  int jobs = 1;

  /// (3,3,3), (2,4,4), (2,3,6), (2,3,7), (2,3,8), (2,4,5) at depth 8, index 48.
  static Corpus default_corpus();
};

struct Enumeration {
  std::vector<CorpusEntry> entries;  ///< closed within bounds, sorted by group then roots
  long subsets = 0;
  long distinct_systems = 0;
  long skipped_bound = 0;
  std::vector<Violation> errors;  ///< entries that failed for reasons other than the index bound
};

/// Reflection subgroups generated by up to max_subset reflections with
/// conjugators of length <= max_depth / 2, deduplicated by canonical roots.
Enumeration enumerate_subgroups(const Corpus& c);
SuiteReport enumerate_and_verify(const Corpus& c);

struct NamedPolygon {
  std::string name;
  Polytope polytope;
};

/// Finite-area polygons: corpus triangles, square, rectangle, right-angled
/// pentagon, Lambert quadrilateral. With `strips`, the E^2 and H^2 strips too.
std::vector<NamedPolygon> polygon_corpus(bool strips, const Tolerances& tol = {});
/// Lines through pairs of boundary samples on distinct edges (24 per edge).
std::vector<Hyperplane> splitting_lines(const Polytope& p, int samples = 24);

SuiteReport lemma1_suite(const std::vector<NamedPolygon>& polygons, const Tolerances& tol = {}, int jobs = 1);
SuiteReport lemma2_suite(int max_rank, const Tolerances& tol = {});
SuiteReport lemma3_suite(const std::vector<NamedPolygon>& polygons, const Tolerances& tol = {}, int jobs = 1);
SuiteReport remark2_regression(const Tolerances& tol = {});

/// Half-strip group: walls y = 0, y = 1, x = 0 of E^2 (or divergent H^2 walls
/// at distance `distance` with their common perpendicular).
CoxeterMatrix half_strip_group(bool hyperbolic, double distance = 1.0);

}  // namespace refl
