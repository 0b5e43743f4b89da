#include "refl/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>

namespace refl {

namespace {

Eigen::VectorXd lorentz_dual(const Eigen::VectorXd& v) {
  Eigen::VectorXd w = v;
  w(w.size() - 1) = -w(w.size() - 1);
  return w;
}

// Half-plane a.p <= c in the chart, tagged with its facet index (-1 for the
// bounding box).
struct ChartLine {
  Eigen::Vector2d a;
  double c = 0.0;
  int label = -1;
};

struct ChartVertex {
  Eigen::Vector2d p;
  int label;  // label of the edge from this vertex to the next
};

ChartLine chart_line(const Space& s, const Hyperplane& h, int label) {
  if (s.hyperbolic()) return {Eigen::Vector2d(h.normal(0), h.normal(1)), h.normal(2), label};
  return {Eigen::Vector2d(h.normal(0), h.normal(1)), h.offset, label};
}

std::vector<ChartVertex> clip(const std::vector<ChartVertex>& poly, const ChartLine& line,
                              double eps) {
  std::vector<ChartVertex> out;
  const std::size_t n = poly.size();
  for (std::size_t k = 0; k < n; ++k) {
    const auto& P = poly[k];
    const auto& Q = poly[(k + 1) % n];
    const double sp = line.a.dot(P.p) - line.c;
    const double sq = line.a.dot(Q.p) - line.c;
    if (sp <= eps) {
      if (sp < -eps && sq > eps) {
        out.push_back(P);
        out.push_back({P.p + (Q.p - P.p) * (sp / (sp - sq)), line.label});
      } else {
        out.push_back({P.p, sq > eps ? line.label : P.label});
      }
    } else if (sq < -eps) {
      out.push_back({P.p + (Q.p - P.p) * (sp / (sp - sq)), P.label});
    }
  }
  // Drop zero-length edges.
  std::vector<ChartVertex> clean;
  for (std::size_t k = 0; k < out.size(); ++k) {
    const auto& nxt = out[(k + 1) % out.size()];
    if ((out[k].p - nxt.p).norm() > eps) clean.push_back(out[k]);
  }
  return clean;
}

double chart_area(const std::vector<ChartVertex>& poly) {
  double a = 0.0;
  for (std::size_t k = 0; k < poly.size(); ++k) {
    const auto& p = poly[k].p;
    const auto& q = poly[(k + 1) % poly.size()].p;
    a += p.x() * q.y() - p.y() * q.x();
  }
  return 0.5 * a;
}

// Parameter interval of p + t d, t in [0,1], inside the closed unit disk.
std::optional<std::pair<double, double>> disk_interval(const Eigen::Vector2d& p,
                                                       const Eigen::Vector2d& d) {
  const double A = d.squaredNorm(), B = 2.0 * p.dot(d), C = p.squaredNorm() - 1.0;
  const double disc = B * B - 4.0 * A * C;
  if (A == 0.0 || disc <= 0.0) return std::nullopt;
  const double r = std::sqrt(disc);
  const double t1 = std::max(0.0, (-B - r) / (2.0 * A));
  const double t2 = std::min(1.0, (-B + r) / (2.0 * A));
  if (t2 <= t1) return std::nullopt;
  return std::make_pair(t1, t2);
}

Eigen::VectorXd hyperbolic_meet(const Hyperplane& a, const Hyperplane& b) {
  const Eigen::Vector3d e1 = a.normal.head<3>(), e2 = b.normal.head<3>();
  Eigen::Vector3d c = e1.cross(e2);
  c(2) = -c(2);
  return c;
}

// Normalizes a kernel vector to a model point; nullopt for spacelike vectors.
std::optional<std::pair<Eigen::VectorXd, bool>> normalize_hyperbolic(Eigen::VectorXd x,
                                                                     double tol) {
  const double q = lorentz(x, x) / x.squaredNorm();
  const double t = x(x.size() - 1);
  if (q < -tol) {
    x /= std::sqrt(-lorentz(x, x));
    if (t < 0) x = -x;
    return std::make_pair(x, false);
  }
  if (std::abs(q) <= tol) {
    if (std::abs(t) < 1e-300) return std::nullopt;
    x /= t;
    return std::make_pair(x, true);
  }
  return std::nullopt;
}

}  // namespace

// ---------------------------------------------------------------------------
// Basics

double lorentz(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const auto n = a.size();
  return a.head(n - 1).dot(b.head(n - 1)) - a(n - 1) * b(n - 1);
}

Hyperplane Hyperplane::hyperbolic(const Eigen::VectorXd& e) {
  const double q = lorentz(e, e);
  if (!(q > 0.0)) throw geometry_error("hyperplane normal must be spacelike");
  return {e / std::sqrt(q), 0.0};
}

Hyperplane Hyperplane::euclidean(const Eigen::VectorXd& u, double b) {
  const double n = u.norm();
  if (!(n > 0.0)) throw geometry_error("hyperplane normal must be nonzero");
  return {u / n, b / n};
}

double Hyperplane::value(const Space& s, const Eigen::VectorXd& x) const {
  return s.hyperbolic() ? lorentz(normal, x) : normal.dot(x) - offset;
}

double normal_product(const Space& s, const Hyperplane& a, const Hyperplane& b) {
  return s.hyperbolic() ? lorentz(a.normal, b.normal) : a.normal.dot(b.normal);
}

AngleClass dihedral_angle(const Hyperplane& h1, const Hyperplane& h2, const Space& s,
                          const Tolerances& tol) {
  const double p = normal_product(s, h1, h2);
  const bool same = (h1.normal - h2.normal).norm() <= tol.geo && std::abs(h1.offset - h2.offset) <= tol.geo;
  const bool opposite = (h1.normal + h2.normal).norm() <= tol.geo && std::abs(h1.offset + h2.offset) <= tol.geo;
  if (same || opposite) throw geometry_error("identical hyperplanes");
  if (std::abs(p) < 1.0 - tol.geo) return {AngleClass::Intersecting, std::acos(-p)};
  if (!s.hyperbolic()) return {AngleClass::Parallel, 0.0};
  if (std::abs(std::abs(p) - 1.0) <= tol.geo) return {AngleClass::Parallel, 0.0};
  return {AngleClass::Divergent, std::acosh(std::abs(p))};
}

ModelMap ModelMap::identity(const Space& s) {
  ModelMap m{Eigen::MatrixXd::Identity(s.coords(), s.coords()), Eigen::VectorXd()};
  if (!s.hyperbolic()) m.translation = Eigen::VectorXd::Zero(s.coords());
  return m;
}

ModelMap ModelMap::reflection(const Space& s, const Hyperplane& h) {
  const int n = s.coords();
  if (s.hyperbolic()) {
    return {Eigen::MatrixXd::Identity(n, n) - 2.0 * h.normal * lorentz_dual(h.normal).transpose(),
            Eigen::VectorXd()};
  }
  return {Eigen::MatrixXd::Identity(n, n) - 2.0 * h.normal * h.normal.transpose(),
          2.0 * h.offset * h.normal};
}

ModelMap ModelMap::then(const ModelMap& next) const {
  ModelMap out{next.linear * linear, Eigen::VectorXd()};
  if (translation.size() > 0) out.translation = next.linear * translation + next.translation;
  return out;
}

Eigen::VectorXd ModelMap::apply(const Space& s, const Eigen::VectorXd& x, bool ideal) const {
  if (s.hyperbolic()) {
    Eigen::VectorXd y = linear * x;
    if (ideal) y /= y(y.size() - 1);
    return y;
  }
  return linear * x + translation;
}

Hyperplane ModelMap::apply(const Space& s, const Hyperplane& h) const {
  Hyperplane out{linear * h.normal, h.offset};
  if (!s.hyperbolic()) out.offset = h.offset + out.normal.dot(translation);
  return out;
}

Eigen::Vector2d chart_point(const Space& s, const Eigen::VectorXd& x) {
  if (s.hyperbolic()) return {x(0) / x(2), x(1) / x(2)};
  return {x(0), x(1)};
}

Eigen::VectorXd model_point(const Space& s, const Eigen::Vector2d& p) {
  if (!s.hyperbolic()) return Eigen::Vector2d(p);
  const double r2 = p.squaredNorm();
  Eigen::Vector3d x(p.x(), p.y(), 1.0);
  if (r2 >= 1.0 - 1e-12) {
    x.head<2>() /= std::sqrt(r2);
    return x;
  }
  return x / std::sqrt(1.0 - r2);
}

Hyperplane line_through(const Space& s, const Eigen::Vector2d& p, const Eigen::Vector2d& q) {
  const Eigen::Vector2d d = q - p;
  if (d.norm() == 0.0) throw geometry_error("line through coincident points");
  const Eigen::Vector2d a(-d.y(), d.x());
  const double c = a.dot(p);
  if (s.hyperbolic()) {
    if (a.squaredNorm() - c * c <= 0.0) throw geometry_error("chart line misses the disk");
    return Hyperplane::hyperbolic(Eigen::Vector3d(a.x(), a.y(), c));
  }
  return Hyperplane::euclidean(a, c);
}

std::string to_string(SpaceKind k) {
  return k == SpaceKind::Hyperbolic ? "hyperbolic" : "euclidean";
}

// ---------------------------------------------------------------------------
// Polytope construction

Polytope Polytope::from_halfspaces(const Space& s, const std::vector<Hyperplane>& halfspaces,
                                   const Tolerances& tol) {
  if (s.dim != 2 && s.dim != 3) throw Error(ErrorCode::Unsupported, "dimension must be 2 or 3");
  if (halfspaces.empty()) throw geometry_error("polytope needs at least one half-space");
  std::vector<Hyperplane> hs;
  for (const auto& h : halfspaces) {
    if (h.normal.size() != s.coords())
      throw geometry_error("normal has " + std::to_string(h.normal.size()) + " coordinates, expected " +
                           std::to_string(s.coords()));
    hs.push_back(s.hyperbolic() ? Hyperplane::hyperbolic(h.normal)
                                : Hyperplane::euclidean(h.normal, h.offset));
  }
  Polytope p;
  p.space_ = s;
  if (s.dim == 2)
    p.build_2d(hs, tol);
  else
    p.build_nd(hs, tol);
  return p;
}

void Polytope::build_2d(const std::vector<Hyperplane>& hs, const Tolerances& tol) {
  const Space& s = space_;
  const int n = static_cast<int>(hs.size());
  std::vector<ChartLine> lines;
  for (int i = 0; i < n; ++i) lines.push_back(chart_line(s, hs[i], i));

  double half = 2.0;
  if (!s.hyperbolic()) {
    double extent = 0.0;
    for (const auto& l : lines) extent = std::max(extent, std::abs(l.c));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        Eigen::Matrix2d A;
        A << lines[i].a.transpose(), lines[j].a.transpose();
        if (std::abs(A.determinant()) < 1e-12) continue;
        const Eigen::Vector2d x = A.partialPivLu().solve(Eigen::Vector2d(lines[i].c, lines[j].c));
        bool feasible = true;
        for (const auto& l : lines) feasible = feasible && l.a.dot(x) - l.c <= 1e-9 * (1.0 + x.norm());
        if (feasible) extent = std::max(extent, x.cwiseAbs().maxCoeff());
      }
    half = 10.0 * (1.0 + extent);
  }
  const double eps = 1e-13 * half;
  std::vector<ChartVertex> poly{{{-half, -half}, -1}, {{half, -half}, -1}, {{half, half}, -1},
                                {{-half, half}, -1}};
  for (const auto& l : lines) {
    poly = clip(poly, l, eps);
    if (poly.size() < 3) throw geometry_error("polytope has empty interior");
  }
  if (chart_area(poly) <= 1e-12 * half * half) throw geometry_error("polytope has empty interior");

  // Boundary segments inside the model, in counterclockwise order.
  struct Seg {
    int label;
    Eigen::Vector2d a, b;
    std::size_t kedge;
    bool clipped_end;
  };
  std::vector<Seg> segs;
  const std::size_t kn = poly.size();
  for (std::size_t k = 0; k < kn; ++k) {
    if (poly[k].label < 0) continue;
    const Eigen::Vector2d P = poly[k].p, Q = poly[(k + 1) % kn].p;
    if (!s.hyperbolic()) {
      segs.push_back({poly[k].label, P, Q, k, false});
      continue;
    }
    auto iv = disk_interval(P, Q - P);
    if (!iv || (iv->second - iv->first) * (Q - P).norm() <= 1e-12) continue;
    segs.push_back({poly[k].label, P + iv->first * (Q - P), P + iv->second * (Q - P), k,
                    iv->second < 1.0});
  }
  if (segs.empty()) throw geometry_error("polytope has empty interior or no facets");

  // Resolve facets in input order.
  std::vector<int> used;
  for (const auto& sg : segs) used.push_back(sg.label);
  std::ranges::sort(used);
  std::map<int, int> remap;
  for (int lbl : used) {
    remap[lbl] = static_cast<int>(facets_.size());
    facets_.push_back(hs[lbl]);
  }
  // Rotate so the walk starts at the lowest facet.
  auto first = std::ranges::min_element(segs, {}, [&](const Seg& sg) { return remap[sg.label]; });
  std::rotate(segs.begin(), first, segs.end());

  const std::size_t m = segs.size();
  for (std::size_t k = 0; k < m; ++k) {
    const Seg& cur = segs[k];
    const Seg& nxt = segs[(k + 1) % m];
    const int fi = remap[cur.label], fj = remap[nxt.label];
    cycle_.push_back(fi);
    segments_.push_back({fi, cur.a, cur.b});
    CornerKind kind = CornerKind::Open;
    const bool consecutive = m > 1 && (cur.kedge + 1) % kn == nxt.kedge;
    if (consecutive) {
      if (!s.hyperbolic()) {
        kind = CornerKind::Ordinary;
      } else {
        const double pr = lorentz(facets_[fi].normal, facets_[fj].normal);
        if (std::abs(pr + 1.0) <= tol.geo)
          kind = CornerKind::Ideal;
        else if (!cur.clipped_end && cur.b.squaredNorm() < 1.0 - 1e-12 && std::abs(pr) < 1.0)
          kind = CornerKind::Ordinary;
      }
    }
    corners_.push_back(kind);
    if (kind == CornerKind::Open) {
      if (!s.hyperbolic()) {
        const Eigen::Vector2d d1 = (cur.b - cur.a).normalized();
        const Eigen::Vector2d d2 = -(nxt.b - nxt.a).normalized();
        for (const Eigen::Vector2d& d : {d1, d2}) {
          bool seen = false;
          for (const auto& r : recession_) seen = seen || (r - d).norm() < 1e-9;
          if (!seen) recession_.push_back(d);
        }
      }
      continue;
    }
    Vertex v;
    v.ideal = kind == CornerKind::Ideal;
    v.facets = {std::min(fi, fj), std::max(fi, fj)};
    if (s.hyperbolic()) {
      const Eigen::VectorXd y = hyperbolic_meet(facets_[fi], facets_[fj]);
      if (v.ideal) {
        v.point = y / y(2);
      } else {
        auto x = normalize_hyperbolic(y, 0.0);
        v.point = x && !x->second ? x->first : model_point(s, cur.b);
      }
    } else {
      Eigen::Matrix2d A;
      A << facets_[fi].normal.transpose(), facets_[fj].normal.transpose();
      v.point = A.partialPivLu().solve(Eigen::Vector2d(facets_[fi].offset, facets_[fj].offset));
    }
    vertices_.push_back(std::move(v));
    adjacent_.push_back({std::min(fi, fj), std::max(fi, fj)});
  }
  finite_volume_ = m >= 2 && std::ranges::none_of(corners_, [](CornerKind c) { return c == CornerKind::Open; });
  bounded_ = finite_volume_ && std::ranges::none_of(corners_, [](CornerKind c) { return c == CornerKind::Ideal; });
}

void Polytope::build_nd(const std::vector<Hyperplane>& hs, const Tolerances& tol) {
  const Space& s = space_;
  const int n = static_cast<int>(hs.size());
  const int d = s.dim;
  facets_ = hs;
  // Brute force over d-subsets of facets.
  std::vector<int> pick(d);
  for (int i = 0; i < d; ++i) pick[i] = i;
  auto try_subset = [&]() {
    std::optional<std::pair<Eigen::VectorXd, bool>> found;
    if (s.hyperbolic()) {
      Eigen::MatrixXd A(d, d + 1);
      for (int r = 0; r < d; ++r) A.row(r) = lorentz_dual(hs[pick[r]].normal).transpose();
      Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
      if (lu.rank() != d) return;
      found = normalize_hyperbolic(lu.kernel().col(0), 1e-9);
    } else {
      Eigen::MatrixXd A(d, d);
      Eigen::VectorXd b(d);
      for (int r = 0; r < d; ++r) {
        A.row(r) = hs[pick[r]].normal.transpose();
        b(r) = hs[pick[r]].offset;
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
      if (lu.rank() != d) return;
      found = std::make_pair(Eigen::VectorXd(lu.solve(b)), false);
    }
    if (!found) return;
    const auto& [x, ideal] = *found;
    Vertex v{ideal, x, {}};
    for (int k = 0; k < n; ++k) {
      const double val = hs[k].value(s, x);
      if (val > tol.geo * (1.0 + x.norm())) return;
      if (std::abs(val) <= tol.geo * (1.0 + x.norm())) v.facets.push_back(k);
    }
    for (const auto& w : vertices_)
      if (w.ideal == v.ideal && (w.point - v.point).norm() < 1e-7) return;
    vertices_.push_back(std::move(v));
  };
  while (true) {
    try_subset();
    int i = d - 1;
    while (i >= 0 && pick[i] == n - d + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < d; ++j) pick[j] = pick[j - 1] + 1;
  }
  if (static_cast<int>(vertices_.size()) < d + 1)
    throw Error(ErrorCode::Unsupported, "3D polytopes must have at least 4 vertices");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      int common = 0;
      for (const auto& v : vertices_)
        common += std::ranges::binary_search(v.facets, i) && std::ranges::binary_search(v.facets, j);
      if (common >= 2) adjacent_.push_back({i, j});
    }
  const bool any_ideal = std::ranges::any_of(vertices_, [](const Vertex& v) { return v.ideal; });
  if (s.hyperbolic()) {
    finite_volume_ = false;
    if (n == d + 1) {
      const Eigen::MatrixXd g = normal_gram();
      finite_volume_ = true;
      for (int skip = 0; skip < n; ++skip) {
        std::vector<int> keep;
        for (int k = 0; k < n; ++k)
          if (k != skip) keep.push_back(k);
        const Eigen::MatrixXd sub = g(keep, keep);
        const Signature sg = signature(sub, tol.sig);
        finite_volume_ = finite_volume_ && (sg == Signature{d, 0, 0} || sg == Signature{d - 1, 1, 0});
      }
    }
    bounded_ = finite_volume_ && !any_ideal;
  } else {
    // Bounded iff the outward normals admit no common recession direction.
    Eigen::MatrixXd U(n, d);
    for (int k = 0; k < n; ++k) U.row(k) = hs[k].normal.transpose();
    bool recedes = Eigen::FullPivLU<Eigen::MatrixXd>(U).rank() < d;
    for (int i = 0; i < n && !recedes; ++i)
      for (int j = i + 1; j < n && !recedes; ++j) {
        const Eigen::Vector3d dir = Eigen::Vector3d(U.row(i)).cross(Eigen::Vector3d(U.row(j)));
        if (dir.norm() < 1e-12) continue;
        for (double sign : {1.0, -1.0})
          recedes = recedes || ((U * (sign * dir)).array() <= 1e-12).all();
      }
    bounded_ = finite_volume_ = !recedes;
  }
}

int Polytope::ordinary_vertex_count() const {
  return static_cast<int>(std::ranges::count_if(vertices_, [](const Vertex& v) { return !v.ideal; }));
}

int Polytope::ideal_vertex_count() const {
  return static_cast<int>(std::ranges::count_if(vertices_, [](const Vertex& v) { return v.ideal; }));
}

Eigen::MatrixXd Polytope::normal_gram() const {
  const int n = facet_count();
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = normal_product(space_, facets_[i], facets_[j]);
  return g;
}

// ---------------------------------------------------------------------------
// Angle predicates

std::optional<int> submultiple_of_pi(double angle, double tol, int max_m) {
  if (!(angle > 0.0)) return std::nullopt;
  const long m = std::lround(kPi / angle);
  for (long c = std::max(2L, m - 1); c <= std::min<long>(max_m, m + 1); ++c)
    if (std::abs(angle - kPi / static_cast<double>(c)) <= tol) return static_cast<int>(c);
  return std::nullopt;
}

bool is_coxeter_polytope(const Polytope& p, const Tolerances& tol) {
  for (auto [i, j] : p.adjacent_pairs()) {
    const AngleClass a = dihedral_angle(p.facets()[i], p.facets()[j], p.space(), tol);
    if (a.kind == AngleClass::Intersecting && !submultiple_of_pi(a.value, tol.ang)) return false;
  }
  return true;
}

bool is_acute_angled(const Polytope& p, const Tolerances& tol) {
  for (auto [i, j] : p.adjacent_pairs()) {
    const AngleClass a = dihedral_angle(p.facets()[i], p.facets()[j], p.space(), tol);
    if (a.kind == AngleClass::Intersecting && a.value > kPi / 2 + tol.ang) return false;
  }
  return true;
}

std::vector<double> interior_angles(const Polytope& p, const Tolerances& tol) {
  if (p.space().dim != 2) throw Error(ErrorCode::Unsupported, "interior angles need dim 2");
  std::vector<double> out;
  const auto& cyc = p.cycle();
  for (std::size_t k = 0; k < cyc.size(); ++k) {
    switch (p.corners()[k]) {
      case CornerKind::Open: throw geometry_error("polygon has an open corner");
      case CornerKind::Ideal: out.push_back(0.0); break;
      case CornerKind::Ordinary:
        out.push_back(dihedral_angle(p.facets()[cyc[k]], p.facets()[cyc[(k + 1) % cyc.size()]],
                                     p.space(), tol)
                          .value);
        break;
    }
  }
  return out;
}

double area2(const Polytope& p, const Tolerances& tol) {
  if (p.space().dim != 2) throw Error(ErrorCode::Unsupported, "area2 needs dim 2");
  if (!p.finite_volume()) throw geometry_error("infinite area");
  if (p.space().hyperbolic()) {
    const auto angles = interior_angles(p, tol);
    double sum = 0.0;
    for (double a : angles) sum += a;
    return (static_cast<double>(angles.size()) - 2.0) * kPi - sum;
  }
  const auto& vs = p.vertices();  // corner order
  double a = 0.0;
  for (std::size_t k = 0; k < vs.size(); ++k) {
    const auto& u = vs[k].point;
    const auto& w = vs[(k + 1) % vs.size()].point;
    a += u(0) * w(1) - u(1) * w(0);
  }
  return 0.5 * a;
}

// ---------------------------------------------------------------------------
// Links and volume

VertexLink vertex_link(const Polytope& p, int vertex, const Tolerances& tol) {
  if (vertex < 0 || vertex >= static_cast<int>(p.vertices().size()))
    throw geometry_error("no vertex " + std::to_string(vertex));
  const Vertex& v = p.vertices()[vertex];
  if (static_cast<int>(v.facets.size()) < p.space().dim)
    throw geometry_error("vertex lies on fewer than dim facets");
  VertexLink link;
  link.ideal = v.ideal;
  link.facets = v.facets;
  const int k = static_cast<int>(v.facets.size());
  std::vector<std::vector<int>> m(k, std::vector<int>(k, 1));
  std::map<std::pair<int, int>, double> weights;
  bool coxeter = true;
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) {
      const AngleClass ang =
          dihedral_angle(p.facets()[v.facets[a]], p.facets()[v.facets[b]], p.space(), tol);
      link.angles.push_back({{v.facets[a], v.facets[b]}, ang});
      int label = kInf;
      if (ang.kind == AngleClass::Intersecting) {
        auto sub = submultiple_of_pi(ang.value, tol.ang);
        if (!sub) coxeter = false;
        label = sub.value_or(2);
      } else if (ang.kind == AngleClass::Divergent) {
        weights[{a, b}] = -std::cosh(ang.value);
      }
      m[a][b] = m[b][a] = label;
    }
  if (coxeter) {
    link.diagram = CoxeterDiagram(CoxeterMatrix(m, weights), v.facets);
    link.classification = classify_diagram(*link.diagram, tol);
  }
  return link;
}

bool has_finite_volume(const Polytope& p, const Tolerances&) {
  if (p.space().dim == 2) return p.finite_volume();
  if (p.space().hyperbolic() && p.facet_count() != p.space().dim + 1)
    throw Error(ErrorCode::Unsupported, "3D hyperbolic volume test needs a simplex");
  return p.finite_volume();
}

// ---------------------------------------------------------------------------
// Faces and extensions

bool face_nonempty(const Polytope& p, const std::vector<int>& face) {
  for (int f : face)
    if (f < 0 || f >= p.facet_count()) throw geometry_error("facet index " + std::to_string(f) + " out of range");
  std::set<int> uniq(face.begin(), face.end());
  if (uniq.empty()) throw geometry_error("empty face description");
  if (uniq.size() == 1) return true;
  int count = 0;
  for (const auto& v : p.vertices()) {
    const bool on_all = std::ranges::all_of(uniq, [&](int f) { return std::ranges::binary_search(v.facets, f); });
    if (!on_all) continue;
    if (!v.ideal) return true;
    ++count;
  }
  return count >= 2;
}

ExtensionRelation extension_relation(const Polytope& p, const std::vector<int>& f1,
                                     const std::vector<int>& f2, const Tolerances& tol) {
  if (!face_nonempty(p, f1) || !face_nonempty(p, f2)) throw geometry_error("invalid face");
  std::set<int> all(f1.begin(), f1.end());
  all.insert(f2.begin(), f2.end());
  const std::vector<int> idx(all.begin(), all.end());
  const Space& s = p.space();
  const int k = static_cast<int>(idx.size());
  Eigen::MatrixXd N(s.coords(), k);
  for (int c = 0; c < k; ++c) N.col(c) = p.facets()[idx[c]].normal;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(N);
  svd.setThreshold(1e-9);
  const auto rank = svd.rank();
  if (s.hyperbolic()) {
    // The flats meet in H^n iff the span of the normals is spacelike.
    const Eigen::MatrixXd g = p.normal_gram()(idx, idx);
    return signature(g, tol.sig).plus == rank ? ExtensionRelation::Meet : ExtensionRelation::Disjoint;
  }
  Eigen::MatrixXd aug(k, s.dim + 1);
  for (int c = 0; c < k; ++c) {
    aug.block(c, 0, 1, s.dim) = p.facets()[idx[c]].normal.transpose();
    aug(c, s.dim) = p.facets()[idx[c]].offset;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd2(aug);
  svd2.setThreshold(1e-9);
  return svd2.rank() == rank ? ExtensionRelation::Meet : ExtensionRelation::Disjoint;
}

AndreevReport andreev_verify(const Polytope& p, const Tolerances& tol) {
  if (!is_acute_angled(p, tol)) throw geometry_error("andreev_verify needs an acute-angled polytope");
  std::vector<std::vector<int>> faces;
  for (int i = 0; i < p.facet_count(); ++i) faces.push_back({i});
  if (p.space().dim == 3)
    for (auto [i, j] : p.adjacent_pairs()) faces.push_back({i, j});
  AndreevReport rep;
  for (std::size_t a = 0; a < faces.size(); ++a)
    for (std::size_t b = a + 1; b < faces.size(); ++b) {
      ++rep.face_pairs;
      std::vector<int> uni = faces[a];
      uni.insert(uni.end(), faces[b].begin(), faces[b].end());
      if (face_nonempty(p, uni)) continue;
      ++rep.disjoint_pairs;
      if (extension_relation(p, faces[a], faces[b], tol) == ExtensionRelation::Meet)
        rep.violations.push_back({faces[a], faces[b]});
    }
  return rep;
}

// ---------------------------------------------------------------------------
// Splitting

Split split_by_hyperplane(const Polytope& p, const Hyperplane& a, const Tolerances& tol) {
  const Space& s = p.space();
  if (s.dim != 2) throw Error(ErrorCode::Unsupported, "split_by_hyperplane needs dim 2");
  const Hyperplane cut = s.hyperbolic() ? Hyperplane::hyperbolic(a.normal) : Hyperplane::euclidean(a.normal, a.offset);
  // A facet is met when the cut crosses it at a point strictly inside every
  // other half-space.
  int met = 0;
  for (int f = 0; f < p.facet_count(); ++f) {
    const Hyperplane& h = p.facets()[f];
    Eigen::VectorXd x;
    if (s.hyperbolic()) {
      auto y = normalize_hyperbolic(hyperbolic_meet(h, cut), tol.geo);
      if (!y || y->second) continue;
      x = y->first;
    } else {
      Eigen::Matrix2d A;
      A << h.normal.transpose(), cut.normal.transpose();
      if (std::abs(A.determinant()) < 1e-12) continue;
      x = A.partialPivLu().solve(Eigen::Vector2d(h.offset, cut.offset));
    }
    bool interior = true;
    for (int g = 0; g < p.facet_count() && interior; ++g)
      if (g != f) interior = p.facets()[g].value(s, x) < -tol.geo * (1.0 + x.norm());
    met += interior;
  }
  bool on_vertex = false;
  for (const auto& v : p.vertices())
    on_vertex = on_vertex || std::abs(cut.value(s, v.point)) <= tol.geo;

  auto with = [&](const Hyperplane& h) {
    std::vector<Hyperplane> hs = p.facets();
    hs.push_back(h);
    return Polytope::from_halfspaces(s, hs, tol);
  };
  try {
    Polytope first = with(cut);
    Polytope second = with(cut.flipped());
    auto has_cut = [&](const Polytope& q) {
      // The cut must bound both parts; otherwise it misses the interior.
      return std::ranges::any_of(q.facets(), [&](const Hyperplane& h) {
        return (h.normal - cut.normal).norm() < 1e-12 || (h.normal + cut.normal).norm() < 1e-12;
      });
    };
    if (!has_cut(first) || !has_cut(second)) throw geometry_error("hyperplane misses the interior");
    return {std::move(first), std::move(second), met == p.facet_count(), on_vertex, met};
  } catch (const Error&) {
    throw geometry_error("hyperplane misses the interior");
  }
}

// ---------------------------------------------------------------------------
// Realizations

namespace {

std::optional<Polytope> try_polytope(const Space& s, const std::vector<Hyperplane>& hs, const Tolerances& tol) {
  try {
    Polytope p = Polytope::from_halfspaces(s, hs, tol);
    if (p.facet_count() == static_cast<int>(hs.size())) return p;
  } catch (const Error&) {
  }
  return std::nullopt;
}

}  // namespace

Polytope realize_triangle(const CoxeterMatrix& m, const Tolerances& tol) {
  if (m.rank() != 3) throw input_error("realize_triangle needs a rank-3 Coxeter matrix");
  const GramMatrix g = gram_from_coxeter(m);
  const Signature sig = signature(g, tol.sig);
  int i = -1, j = -1, k = -1;
  for (auto [a, b, c] : {std::array{0, 1, 2}, std::array{0, 2, 1}, std::array{1, 2, 0}})
    if (std::abs(g(a, b)) < 1.0 - 1e-12) {
      i = a, j = b, k = c;
      break;
    }
  std::vector<std::vector<Hyperplane>> candidates;
  Space space;
  if (sig == Signature{2, 1, 0}) {
    space = {SpaceKind::Euclidean, 2};
    if (i < 0) throw geometry_error("no intersecting pair of walls");
    const double gij = g(i, j);
    const Eigen::Vector2d ui(0.0, -1.0);
    const Eigen::Vector2d uj(-std::sqrt(1.0 - gij * gij), -gij);
    const double yk = -g(i, k);
    const Eigen::Vector2d uk((g(j, k) - uj.y() * yk) / uj.x(), yk);
    std::vector<Hyperplane> hs(3);
    hs[i] = Hyperplane::euclidean(ui, 0.0);
    hs[j] = Hyperplane::euclidean(uj, 0.0);
    hs[k] = Hyperplane::euclidean(uk, 1.0);
    candidates.push_back(hs);
  } else if (sig == Signature{2, 0, 1}) {
    space = {SpaceKind::Hyperbolic, 2};
    std::vector<Eigen::Vector3d> eks;
    Eigen::Vector3d ei(1.0, 0.0, 0.0), ej;
    if (i >= 0) {
      const double gij = g(i, j), sij = std::sqrt(1.0 - gij * gij);
      ej = {gij, sij, 0.0};
      const double a = g(i, k), b = (g(j, k) - gij * a) / sij;
      const double c = std::sqrt(std::max(0.0, a * a + b * b - 1.0));
      eks = {{a, b, c}, {a, b, -c}};
    } else {
      i = 0, j = 1, k = 2;
      const double gij = g(i, j), t = std::abs(gij);
      ej = {gij, 1.0, t};
      const double a = g(i, k), beta = g(j, k) - gij * a;
      // b = beta + t c with a^2 + b^2 - c^2 = 1.
      const double qa = t * t - 1.0, qb = 2.0 * beta * t, qc = beta * beta + a * a - 1.0;
      std::vector<double> cs;
      if (std::abs(qa) < 1e-12) {
        if (std::abs(qb) > 1e-300) cs.push_back(-qc / qb);
      } else {
        const double disc = qb * qb - 4.0 * qa * qc;
        if (disc >= 0) {
          cs.push_back((-qb + std::sqrt(disc)) / (2.0 * qa));
          cs.push_back((-qb - std::sqrt(disc)) / (2.0 * qa));
        }
      }
      for (double c : cs) eks.push_back({a, beta + t * c, c});
    }
    for (const auto& ek : eks) {
      std::vector<Hyperplane> hs(3);
      hs[i] = Hyperplane::hyperbolic(ei);
      hs[j] = Hyperplane::hyperbolic(ej);
      hs[k] = Hyperplane::hyperbolic(ek);
      candidates.push_back(hs);
    }
  } else {
    throw geometry_error("signature admits no E^2 or H^2 realization");
  }
  for (const auto& hs : candidates)
    if (auto p = try_polytope(space, hs, tol)) return *p;
  throw geometry_error("could not realize the Coxeter matrix");
}

Polytope realize_hyperbolic(const GramMatrix& g, const Tolerances& tol) {
  const int n = static_cast<int>(g.rows());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
  const auto& ev = es.eigenvalues();
  const Signature sig = signature(g, tol.sig);
  if (sig != Signature{n - 1, 0, 1}) throw geometry_error("Gram matrix is not of hyperbolic signature");
  // Eigenvalues ascend, so column 0 is the timelike direction.
  std::vector<Eigen::VectorXd> normals(n, Eigen::VectorXd(n));
  for (int r = 0; r < n; ++r) {
    for (int c = 1; c < n; ++c) normals[r](c - 1) = es.eigenvectors()(r, c) * std::sqrt(ev(c));
    normals[r](n - 1) = es.eigenvectors()(r, 0) * std::sqrt(-ev(0));
  }
  const Eigen::VectorXd lambda = -g.fullPivLu().solve(Eigen::VectorXd::Ones(n));
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  for (int r = 0; r < n; ++r) x += lambda(r) * normals[r];
  if (x(n - 1) < 0)
    for (auto& e : normals) e(n - 1) = -e(n - 1);
  std::vector<Hyperplane> hs;
  for (const auto& e : normals) hs.push_back(Hyperplane::hyperbolic(e));
  return Polytope::from_halfspaces({SpaceKind::Hyperbolic, n - 1}, hs, tol);
}

Polytope regular_hyperbolic_polygon(int n, double angle, const Tolerances& tol) {
  const double ch2 = (1.0 + std::cos(angle)) / (1.0 - std::cos(2.0 * kPi / n));
  if (!(ch2 > 1.0)) throw geometry_error("angle too large for a hyperbolic regular polygon");
  const double ch = std::sqrt(ch2), sh = std::sqrt(ch2 - 1.0);
  std::vector<Hyperplane> hs;
  for (int k = 0; k < n; ++k) {
    const double th = 2.0 * kPi * k / n;
    hs.push_back(Hyperplane::hyperbolic(Eigen::Vector3d(ch * std::cos(th), ch * std::sin(th), sh)));
  }
  return Polytope::from_halfspaces({SpaceKind::Hyperbolic, 2}, hs, tol);
}

}  // namespace refl
