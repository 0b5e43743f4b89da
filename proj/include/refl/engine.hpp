#pragma once

#include <Eigen/Dense>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "refl/common.hpp"
#include "refl/diagrams.hpp"
#include "refl/geometry.hpp"

namespace refl {

/// Search limits shared by the BFS-style loops.
struct Bounds {
  int max_depth = 8;
  int max_chambers = 200000;
  int max_index = 1000;
};

/// Coordinates in the simple-root basis of the geometric representation.
using Root = Eigen::VectorXd;
using ElementKey = std::vector<long long>;

struct GroupElement {
  std::vector<int> word;
  Eigen::MatrixXd matrix;   ///< product of simple reflections along word
  Eigen::MatrixXd inverse;  ///< product along the reversed word
  ElementKey key;
};

/// Geometric representation of a Coxeter group on the span of its simple roots.
class Representation {
 public:
  explicit Representation(const CoxeterMatrix& m, const Tolerances& tol = {});

  const CoxeterMatrix& matrix() const { return m_; }
  const GramMatrix& gram() const { return g_; }
  const Tolerances& tolerances() const { return tol_; }
  int rank() const { return m_.rank(); }
  const Eigen::MatrixXd& generator(int i) const { return gens_[i]; }
  const Eigen::VectorXd& probe() const { return probe_; }

  double form(const Root& a, const Root& b) const { return a.dot(g_ * b); }
  Root simple_root(int i) const;
  Eigen::MatrixXd reflection_matrix(const Root& r) const;
  ElementKey key(const Eigen::MatrixXd& matrix) const;
  GroupElement identity() const;
  GroupElement times_generator(const GroupElement& w, int i) const;
  GroupElement element(const std::vector<int>& word) const;

 private:
  CoxeterMatrix m_;
  Tolerances tol_;
  GramMatrix g_;
  std::vector<Eigen::MatrixXd> gens_;
  Eigen::VectorXd probe_;
};

std::vector<GroupElement> simple_reflections(const CoxeterMatrix& m, const Tolerances& tol = {});

/// sigma_by(r) = r - 2 B(by, r) by.
Root reflect_root(const GramMatrix& g, const Root& r, const Root& by);
/// +1 when all coordinates are >= -tol, -1 when all are <= tol, 0 otherwise.
int root_sign(const Root& r, double tol = 1e-9);
/// Positive representative, scaled to B(r, r) = 1.
Root normalize_root(const GramMatrix& g, const Root& r, double tol = 1e-9);
bool same_root(const Root& a, const Root& b, double tol = 1e-6);
ElementKey root_key(const Root& r, double grid = 1e-6);

/// Word w and index i with w(alpha_i) = r for a positive real root r;
/// nullopt when r is not a root of the group.
std::optional<std::pair<std::vector<int>, int>> root_word(const Representation& rep, const Root& r,
                                                          int max_steps = 10000);

struct ChamberSet {
  std::vector<GroupElement> chambers;  ///< chambers[0] is the base chamber
  /// neighbors[c][i]: index of chambers[c] * s_i, or -1 when outside the set
  std::vector<std::vector<int>> neighbors;
  bool exceeded = false;

  int size() const { return static_cast<int>(chambers.size()); }
};

/// All elements of word length <= max_depth, capped at max_chambers.
ChamberSet chamber_bfs(const CoxeterMatrix& m, int max_depth, int max_chambers,
                       const Tolerances& tol = {});

struct SubgroupSpec {
  struct Entry {
    std::vector<int> word;       ///< full word of the reflection, e.g. {0, 2, 0}
    std::optional<Root> root;    ///< used instead of word when present
  };
  std::vector<Entry> reflections;

  static SubgroupSpec from_words(const std::vector<std::vector<int>>& words);
  static SubgroupSpec from_roots(const std::vector<Root>& roots);
};

/// Positive unit roots of the reflections listed in the spec; throws
/// InputError for entries that are not reflections of the group.
std::vector<Root> spec_roots(const Representation& rep, const SubgroupSpec& h);

struct CanonicalSystem {
  std::vector<Root> roots;  ///< sorted by root_key

  /// Pairwise products each <= -1 or equal to -cos(pi/m).
  bool well_formed(const GramMatrix& g, const Tolerances& tol = {}) const;
};

CanonicalSystem canonical_generators(const CoxeterMatrix& m, const SubgroupSpec& h,
                                     const Tolerances& tol = {});
CanonicalSystem canonical_generators(const Representation& rep, const std::vector<Root>& roots);

struct SubgroupChamber {
  CanonicalSystem system;
  ChamberSet chambers;      ///< chambers of G inside the chamber of H
  std::vector<Root> walls;  ///< positive roots separating inside from outside
  int index = 0;
  int facet_count = 0;
};

/// Throws IndexBoundExceeded when the cone does not close within bounds.
SubgroupChamber subgroup_chamber(const CoxeterMatrix& m, const SubgroupSpec& h,
                                 const Bounds& bounds = {}, const Tolerances& tol = {});
SubgroupChamber subgroup_chamber(const Representation& rep, const CanonicalSystem& system,
                                 const Bounds& bounds = {});

/// Chamber of the group in E^2/H^2 (rank 3) or H^3 (rank 4 simplices).
Polytope realize_fundamental(const CoxeterMatrix& m, const Tolerances& tol = {});
/// Chamber of H inside the model, from the roots mapped onto F's normals.
Polytope realize_subgroup_chamber(const Polytope& f, const CanonicalSystem& system,
                                  const Tolerances& tol = {});
/// Finite covolume decided from the diagram alone (simplex chambers).
bool finite_covolume_by_diagram(const CoxeterMatrix& m, const Tolerances& tol = {});

struct Tile {
  std::vector<int> word;
  ModelMap map;
  Polytope polytope;
};

struct TileAdjacency {
  int a = 0;
  int b = 0;
  int wall = 0;  ///< facet of tile a (as a facet of F) shared with tile b
};

struct Tiling {
  std::vector<Tile> tiles;
  std::vector<TileAdjacency> adjacency;
};

/// Images of F under the chambers' words (dim 2).
Tiling build_tiling(const Polytope& f, const ChamberSet& t, const Tolerances& tol = {});

/// Walls of tiles interior to P, deduplicated; none supports a facet of P.
/// Throws GeometryError when a tile sticks out of P.
std::vector<Hyperplane> mirrors_of_decomposition(const Polytope& p, const Tiling& t,
                                                 const Tolerances& tol = {});
/// Per vertex of P: true when no mirror passes through it.
std::vector<bool> fundamental_angles(const Polytope& p, const std::vector<Hyperplane>& mirrors,
                                     const Tolerances& tol = {});

struct DecompositionReport {
  bool congruent = true;
  bool disjoint = true;
  bool covers = true;
  bool symmetric = true;
  double area_residual = 0.0;
  std::vector<std::string> failures;

  bool pass() const { return congruent && disjoint && covers && symmetric; }
};

DecompositionReport verify_decomposition(const Polytope& p, const Polytope& f, const Tiling& t,
                                         const Tolerances& tol = {});

struct TheoremVerdict {
  int k_f = 0;
  int k_p = 0;
  std::optional<int> index;  ///< nullopt: exceeded bound
  bool finite_volume = false;
  bool holds = false;

  bool operator==(const TheoremVerdict&) const = default;
};

/// Compares facet counts of the chambers of G and H. `f` overrides the
/// realization of G's chamber (needed for ranks other than 3).
TheoremVerdict theorem_check(const CoxeterMatrix& m, const SubgroupSpec& h, const Bounds& bounds = {},
                             const Tolerances& tol = {}, const std::optional<Polytope>& f = std::nullopt);
TheoremVerdict theorem_check(const Representation& rep, const SubgroupChamber& sc,
                             const std::optional<Polytope>& f = std::nullopt);

}  // namespace refl
