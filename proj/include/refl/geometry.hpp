#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

#include "refl/common.hpp"
#include "refl/diagrams.hpp"

namespace refl {

enum class SpaceKind { Euclidean, Hyperbolic };

struct Space {
  SpaceKind kind = SpaceKind::Hyperbolic;
  int dim = 2;

  bool hyperbolic() const { return kind == SpaceKind::Hyperbolic; }
  /// Length of model-space coordinate vectors.
  int coords() const { return hyperbolic() ? dim + 1 : dim; }
  bool operator==(const Space&) const = default;
};

/// Lorentzian form of signature (n,1): the last coordinate is timelike.
double lorentz(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

/// Oriented hyperplane bounding the half-space <normal, x> <= 0 (hyperbolic,
/// hyperboloid model) or normal . x <= offset (Euclidean). Normals point out
/// of the half-space and are normalized to unit length in the ambient form.
struct Hyperplane {
  Eigen::VectorXd normal;
  double offset = 0.0;

  static Hyperplane hyperbolic(const Eigen::VectorXd& e);
  static Hyperplane euclidean(const Eigen::VectorXd& u, double b);

  /// Signed value at a model point: negative inside the half-space.
  double value(const Space& s, const Eigen::VectorXd& x) const;
  Hyperplane flipped() const { return {-normal, -offset}; }
};

/// Inner product of two normals in the ambient form.
double normal_product(const Space& s, const Hyperplane& a, const Hyperplane& b);

struct AngleClass {
  enum Kind { Intersecting, Parallel, Divergent } kind = Intersecting;
  double value = 0.0;  ///< angle for Intersecting, distance for Divergent
};

/// Dihedral angle inside the intersection of the two half-spaces.
/// Throws GeometryError for identical hyperplanes.
AngleClass dihedral_angle(const Hyperplane& h1, const Hyperplane& h2, const Space& s,
                          const Tolerances& tol = {});

/// Isometry of the model: x -> linear * x + translation (translation is
/// empty for hyperbolic space, where linear preserves the Lorentz form).
struct ModelMap {
  Eigen::MatrixXd linear;
  Eigen::VectorXd translation;

  static ModelMap identity(const Space& s);
  static ModelMap reflection(const Space& s, const Hyperplane& h);
  ModelMap then(const ModelMap& next) const;  ///< next o this
  Eigen::VectorXd apply(const Space& s, const Eigen::VectorXd& x, bool ideal = false) const;
  Hyperplane apply(const Space& s, const Hyperplane& h) const;
};

struct Vertex {
  bool ideal = false;
  Eigen::VectorXd point;     ///< hyperboloid point, lightlike ray with t = 1, or affine point
  std::vector<int> facets;   ///< incident facet indices, sorted
};

enum class CornerKind { Ordinary, Ideal, Open };

/// One facet in the boundary walk of a 2D polytope, in a planar chart
/// (affine coordinates for E^2, the Klein disk for H^2).
struct BoundarySegment {
  int facet = 0;
  Eigen::Vector2d start;
  Eigen::Vector2d end;
};

class Polytope {
 public:
  /// Intersection of half-spaces. Redundant half-spaces are dropped (2D).
  /// Throws GeometryError when the interior is empty.
  static Polytope from_halfspaces(const Space& s, const std::vector<Hyperplane>& halfspaces,
                                  const Tolerances& tol = {});

  const Space& space() const { return space_; }
  const std::vector<Hyperplane>& facets() const { return facets_; }
  int facet_count() const { return static_cast<int>(facets_.size()); }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  int ordinary_vertex_count() const;
  int ideal_vertex_count() const;

  /// Facet pairs forming a dihedral angle (2D: consecutive facets meeting at
  /// an ordinary or ideal vertex; 3D: facets sharing at least two vertices).
  const std::vector<std::pair<int, int>>& adjacent_pairs() const { return adjacent_; }

  /// 2D: facets in counterclockwise boundary order, with corners[k] joining
  /// cycle[k] and cycle[k + 1].
  const std::vector<int>& cycle() const { return cycle_; }
  const std::vector<CornerKind>& corners() const { return corners_; }
  const std::vector<BoundarySegment>& segments() const { return segments_; }
  /// 2D Euclidean unbounded directions (one per open end, deduplicated).
  const std::vector<Eigen::Vector2d>& recession_directions() const { return recession_; }

  bool bounded() const { return bounded_; }
  bool finite_volume() const { return finite_volume_; }

  /// Gram matrix of the facet normals in the ambient form.
  Eigen::MatrixXd normal_gram() const;

 private:
  Space space_;
  std::vector<Hyperplane> facets_;
  std::vector<Vertex> vertices_;
  std::vector<std::pair<int, int>> adjacent_;
  std::vector<int> cycle_;
  std::vector<CornerKind> corners_;
  std::vector<BoundarySegment> segments_;
  std::vector<Eigen::Vector2d> recession_;
  bool bounded_ = false;
  bool finite_volume_ = false;

  void build_2d(const std::vector<Hyperplane>& halfspaces, const Tolerances& tol);
  void build_nd(const std::vector<Hyperplane>& halfspaces, const Tolerances& tol);
};

/// Chart coordinates of a model point (Klein disk or the plane itself).
Eigen::Vector2d chart_point(const Space& s, const Eigen::VectorXd& x);
/// Model point of a chart point; points on the unit circle become ideal rays.
Eigen::VectorXd model_point(const Space& s, const Eigen::Vector2d& p);
/// Line through two distinct chart points, as a hyperplane of a 2D space.
Hyperplane line_through(const Space& s, const Eigen::Vector2d& p, const Eigen::Vector2d& q);

bool is_coxeter_polytope(const Polytope& p, const Tolerances& tol = {});
bool is_acute_angled(const Polytope& p, const Tolerances& tol = {});

/// Integer m in [2, max_m] with |angle - pi/m| <= tol, if any.
std::optional<int> submultiple_of_pi(double angle, double tol, int max_m = 1000);

struct VertexLink {
  bool ideal = false;
  std::vector<int> facets;                         ///< facets through the vertex
  std::vector<std::pair<std::pair<int, int>, AngleClass>> angles;  ///< pairwise, in facet order
  std::optional<CoxeterDiagram> diagram;           ///< when the angles are all pi/m or parallel
  std::optional<DiagramClass> classification;
  /// Elliptic for ordinary vertices, ParabolicUnion for ideal ones.
  DiagramKind expected() const { return ideal ? DiagramKind::ParabolicUnion : DiagramKind::Elliptic; }
};

/// Throws GeometryError when the vertex lies on fewer than dim facets.
VertexLink vertex_link(const Polytope& p, int vertex, const Tolerances& tol = {});

/// Exact for dim 2; dim 3 only for simplices (by vertex-link signatures).
bool has_finite_volume(const Polytope& p, const Tolerances& tol = {});

enum class ExtensionRelation { Meet, Disjoint };

/// Faces are given as facet-index sets; throws GeometryError for a face with
/// no points in the model space.
ExtensionRelation extension_relation(const Polytope& p, const std::vector<int>& f1,
                                     const std::vector<int>& f2, const Tolerances& tol = {});
/// Whether the face cut out by the facet set has a point in the model space
/// (ideal points excluded).
bool face_nonempty(const Polytope& p, const std::vector<int>& face);

struct AndreevViolation {
  std::vector<int> face1, face2;
};

struct AndreevReport {
  int face_pairs = 0;
  int disjoint_pairs = 0;
  std::vector<AndreevViolation> violations;
  bool pass() const { return violations.empty(); }
};

/// Disjoint faces must have disjoint extensions. Checks facet pairs (2D) or
/// facet/edge pairs (3D). Throws GeometryError unless the polytope is acute.
AndreevReport andreev_verify(const Polytope& p, const Tolerances& tol = {});

struct Split {
  Polytope first;   ///< side where the cutting hyperplane's value is <= 0
  Polytope second;
  bool meets_every_facet_interior = false;
  bool contains_vertex = false;
  int facets_met = 0;  ///< number of facets whose relative interior is crossed
};

/// 2D only. Throws GeometryError when the hyperplane misses the interior.
Split split_by_hyperplane(const Polytope& p, const Hyperplane& a, const Tolerances& tol = {});

/// Area of a finite-area 2D polytope (Gauss-Bonnet in H^2, shoelace in E^2).
double area2(const Polytope& p, const Tolerances& tol = {});

/// Interior angles at the 2D corners in cycle order (0 at ideal vertices).
std::vector<double> interior_angles(const Polytope& p, const Tolerances& tol = {});

/// Triangle (or, with infinite labels, possibly unbounded three-sided
/// region) realizing a rank-3 Coxeter matrix in E^2 or H^2. The pair of
/// walls listed first with |G_ij| < 1 meets at the chart origin.
Polytope realize_triangle(const CoxeterMatrix& m, const Tolerances& tol = {});
/// Polytope in H^n bounded by n+1 hyperplanes with Gram matrix g of
/// signature (n,0,1).
Polytope realize_hyperbolic(const GramMatrix& g, const Tolerances& tol = {});
/// Regular H^2 polygon with n sides and the given interior angle.
Polytope regular_hyperbolic_polygon(int n, double angle, const Tolerances& tol = {});

std::string to_string(SpaceKind k);

}  // namespace refl
