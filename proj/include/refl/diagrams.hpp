#pragma once

#include <Eigen/Dense>

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "refl/common.hpp"

namespace refl {

/// Entry value standing for an infinite label, as in the input documents.
inline constexpr int kInf = 0;

/// Symmetric matrix of dihedral orders m[i][j]. Infinite pairs may carry a
/// Gram weight c <= -1 (c == -1: parallel, c < -1: divergent).
class CoxeterMatrix {
 public:
  CoxeterMatrix() = default;
  /// Throws InputError naming the offending position.
  explicit CoxeterMatrix(std::vector<std::vector<int>> m,
                         std::map<std::pair<int, int>, double> weights = {});

  /// Triangle group with m01 = p, m12 = q, m02 = r (0 for infinity).
  static CoxeterMatrix triangle(int p, int q, int r);

  int rank() const { return static_cast<int>(m_.size()); }
  int operator()(int i, int j) const { return m_[i][j]; }
  bool infinite(int i, int j) const { return i != j && m_[i][j] == kInf; }
  /// Gram entry for an infinite pair.
  double weight(int i, int j) const;
  int max_label() const;

  const std::vector<std::vector<int>>& entries() const { return m_; }
  /// Keys are (i, j) with i < j; only entries differing from -1 are stored.
  const std::map<std::pair<int, int>, double>& weights() const { return weights_; }

  bool operator==(const CoxeterMatrix&) const = default;

 private:
  std::vector<std::vector<int>> m_;
  std::map<std::pair<int, int>, double> weights_;
};

struct DiagramEdge {
  int a = 0;
  int b = 0;
  int label = 3;        ///< >= 3, or kInf
  double weight = -1.0; ///< meaningful for kInf; < -1 draws a dotted edge

  bool dotted() const { return label == kInf && weight < -1.0; }
};

/// Graph view of a Coxeter matrix: an edge for every m >= 3 or infinity.
/// `ids` remembers the node names of the originating diagram so induced
/// sub-diagrams stay traceable.
class CoxeterDiagram {
 public:
  CoxeterDiagram() = default;
  explicit CoxeterDiagram(CoxeterMatrix m);
  CoxeterDiagram(CoxeterMatrix m, std::vector<int> ids);
  CoxeterDiagram(int nodes, const std::vector<DiagramEdge>& edges);

  int size() const { return matrix_.rank(); }
  const CoxeterMatrix& matrix() const { return matrix_; }
  const std::vector<int>& ids() const { return ids_; }
  std::vector<DiagramEdge> edges() const;
  bool has_dotted_edge() const;

 private:
  CoxeterMatrix matrix_;
  std::vector<int> ids_;
};

using GramMatrix = Eigen::MatrixXd;

struct Signature {
  int plus = 0;
  int zero = 0;
  int minus = 0;
  bool operator==(const Signature&) const = default;
};

enum class ComponentType { Elliptic, Parabolic, Indefinite };

enum class DiagramKind {
  Elliptic,        ///< every component elliptic (Gram positive definite)
  ParabolicUnion,  ///< every component connected parabolic
  Mixed,           ///< semidefinite, elliptic and parabolic components together
  Indefinite,      ///< some component neither elliptic nor parabolic
};

struct DiagramComponent {
  std::vector<int> nodes;  ///< local indices into the classified diagram
  ComponentType type = ComponentType::Indefinite;
  std::string name;        ///< table name, empty when no table entry applies
};

struct DiagramClass {
  DiagramKind kind = DiagramKind::Elliptic;
  std::vector<DiagramComponent> components;

  std::vector<std::string> names() const;
};

struct NamedDiagram {
  std::string name;
  ComponentType type;
  CoxeterDiagram diagram;
};

GramMatrix gram_from_coxeter(const CoxeterMatrix& m);
Signature signature(const GramMatrix& g, double tau = Tolerances{}.sig);

/// Connected components under the edge relation (local indices, sorted).
std::vector<std::vector<int>> connected_components(const CoxeterDiagram& d);
CoxeterDiagram induced(const CoxeterDiagram& d, const std::vector<int>& nodes);
/// Throws InputError for an unknown node.
CoxeterDiagram remove_node(const CoxeterDiagram& d, int v);
CoxeterDiagram disjoint_union(const CoxeterDiagram& a, const CoxeterDiagram& b);

/// Brute-force search for a label-preserving node bijection.
bool isomorphic(const CoxeterDiagram& a, const CoxeterDiagram& b);

/// Connected finite (elliptic) and affine (parabolic) diagrams with at most
/// `max_nodes` nodes. I2(m) is listed for 5 <= m <= max_label.
std::vector<NamedDiagram> elliptic_table(int max_nodes = 10, int max_label = 12);
std::vector<NamedDiagram> parabolic_table(int max_nodes = 10);
/// Name of the rank-2 elliptic diagram with label m (A2, B2, I2(m)).
std::string dihedral_name(int m);

/// Per-component classification by eigenvalue signature alone.
DiagramClass classify_by_signature(const CoxeterDiagram& d, const Tolerances& tol = {});
/// Per-component classification by isomorphism against the named tables;
/// components matching no table entry come back Indefinite and unnamed.
DiagramClass classify_by_table(const CoxeterDiagram& d);
/// Table names with the signature as oracle. A disagreement between the two
/// routes throws std::logic_error.
DiagramClass classify_diagram(const CoxeterDiagram& d, const Tolerances& tol = {});

/// Disjoint unions of connected parabolic diagrams with total node count
/// <= max_rank, one per isomorphism class (max_rank <= 10).
std::vector<CoxeterDiagram> enumerate_parabolic_unions(int max_rank);
/// Names of the components making up each entry of enumerate_parabolic_unions.
std::vector<std::vector<std::string>> enumerate_parabolic_union_names(int max_rank);

std::string to_string(DiagramKind k);
std::string to_string(ComponentType t);
/// One line per node listing its edges; empty diagram renders as "(empty)".
std::string diagram_art(const CoxeterDiagram& d);

}  // namespace refl
