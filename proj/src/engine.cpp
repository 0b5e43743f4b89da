#include "refl/engine.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>

namespace refl {

// ---------------------------------------------------------------------------
// Representation

namespace {

constexpr int kProbePrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

ElementKey round_key(const double* data, Eigen::Index n, double grid) {
  ElementKey key(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) key[k] = std::llround(data[k] / grid);
  return key;
}

}  // namespace

Representation::Representation(const CoxeterMatrix& m, const Tolerances& tol)
    : m_(m), tol_(tol), g_(gram_from_coxeter(m)) {
  const int n = m.rank();
  if (n > static_cast<int>(std::size(kProbePrimes)) + 1) throw input_error("rank too large");
  for (int i = 0; i < n; ++i) {
    Eigen::MatrixXd s = Eigen::MatrixXd::Identity(n, n);
    s.row(i) -= 2.0 * g_.row(i);
    gens_.push_back(std::move(s));
  }
  probe_ = Eigen::VectorXd(n);
  probe_(0) = 1.0;
  for (int i = 1; i < n; ++i) probe_(i) = std::sqrt(static_cast<double>(kProbePrimes[i - 1])) - 1.0;
}

Root Representation::simple_root(int i) const { return Root::Unit(rank(), i); }

Eigen::MatrixXd Representation::reflection_matrix(const Root& r) const {
  return Eigen::MatrixXd::Identity(rank(), rank()) - 2.0 * r * (g_ * r).transpose();
}

ElementKey Representation::key(const Eigen::MatrixXd& matrix) const {
  return round_key(matrix.data(), matrix.size(), tol_.id);
}

GroupElement Representation::identity() const {
  const Eigen::MatrixXd e = Eigen::MatrixXd::Identity(rank(), rank());
  return {{}, e, e, key(e)};
}

GroupElement Representation::times_generator(const GroupElement& w, int i) const {
  GroupElement out;
  out.word = w.word;
  out.word.push_back(i);
  out.matrix = w.matrix * gens_[i];
  out.inverse = gens_[i] * w.inverse;
  out.key = key(out.matrix);
  return out;
}

GroupElement Representation::element(const std::vector<int>& word) const {
  GroupElement w = identity();
  for (int i : word) {
    if (i < 0 || i >= rank()) throw input_error("generator index " + std::to_string(i) + " out of range");
    w = times_generator(w, i);
  }
  return w;
}

std::vector<GroupElement> simple_reflections(const CoxeterMatrix& m, const Tolerances& tol) {
  Representation rep(m, tol);
  std::vector<GroupElement> out;
  for (int i = 0; i < m.rank(); ++i) out.push_back(rep.element({i}));
  return out;
}

// ---------------------------------------------------------------------------
// Roots

Root reflect_root(const GramMatrix& g, const Root& r, const Root& by) {
  return r - 2.0 * by.dot(g * r) * by;
}

int root_sign(const Root& r, double tol) {
  if ((r.array() >= -tol).all()) return 1;
  if ((r.array() <= tol).all()) return -1;
  return 0;
}

Root normalize_root(const GramMatrix& g, const Root& r, double tol) {
  const double q = r.dot(g * r);
  if (!(q > 0.0)) throw input_error("root has non-positive norm");
  Root out = r / std::sqrt(q);
  const int sign = root_sign(out, tol * (1.0 + out.cwiseAbs().maxCoeff()));
  if (sign == 0) throw input_error("root has coordinates of mixed sign");
  if (sign < 0) out = -out;
  for (auto& x : out) x = std::abs(x) < tol ? 0.0 : x;
  return out;
}

bool same_root(const Root& a, const Root& b, double tol) {
  const double scale = 1.0 + std::max(a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff());
  return (a - b).cwiseAbs().maxCoeff() <= tol * scale;
}

ElementKey root_key(const Root& r, double grid) { return round_key(r.data(), r.size(), grid); }

std::optional<std::pair<std::vector<int>, int>> root_word(const Representation& rep, const Root& r,
                                                          int max_steps) {
  if (root_sign(r, 1e-9 * (1.0 + r.cwiseAbs().maxCoeff())) <= 0) return std::nullopt;
  Root cur = r;
  std::vector<int> word;
  for (int step = 0; step < max_steps; ++step) {
    for (int i = 0; i < rep.rank(); ++i)
      if (same_root(cur, rep.simple_root(i))) return std::make_pair(word, i);
    int pick = -1;
    double best = 1e-9;
    for (int i = 0; i < rep.rank(); ++i) {
      const double b = rep.form(cur, rep.simple_root(i));
      if (b > best) best = b, pick = i;
    }
    if (pick < 0) return std::nullopt;
    cur = reflect_root(rep.gram(), cur, rep.simple_root(pick));
    if (root_sign(cur, 1e-9 * (1.0 + cur.cwiseAbs().maxCoeff())) <= 0) return std::nullopt;
    word.push_back(pick);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Chambers

ChamberSet chamber_bfs(const CoxeterMatrix& m, int max_depth, int max_chambers, const Tolerances& tol) {
  if (max_depth < 0 || max_chambers < 1) throw input_error("bounds must be positive");
  Representation rep(m, tol);
  ChamberSet out;
  std::map<ElementKey, int> index;
  out.chambers.push_back(rep.identity());
  out.neighbors.emplace_back(m.rank(), -1);
  index[out.chambers[0].key] = 0;
  std::size_t frontier_begin = 0;
  for (int depth = 0; depth < max_depth; ++depth) {
    const std::size_t frontier_end = out.chambers.size();
    for (std::size_t c = frontier_begin; c < frontier_end; ++c)
      for (int i = 0; i < m.rank(); ++i) {
        GroupElement nb = rep.times_generator(out.chambers[c], i);
        auto it = index.find(nb.key);
        if (it == index.end()) {
          if (out.size() >= max_chambers) {
            out.exceeded = true;
            continue;
          }
          it = index.emplace(nb.key, out.size()).first;
          out.chambers.push_back(std::move(nb));
          out.neighbors.emplace_back(m.rank(), -1);
        }
        out.neighbors[c][i] = it->second;
        out.neighbors[it->second][i] = static_cast<int>(c);
      }
    frontier_begin = frontier_end;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Subgroups

SubgroupSpec SubgroupSpec::from_words(const std::vector<std::vector<int>>& words) {
  SubgroupSpec h;
  for (const auto& w : words) h.reflections.push_back({w, std::nullopt});
  return h;
}

SubgroupSpec SubgroupSpec::from_roots(const std::vector<Root>& roots) {
  SubgroupSpec h;
  for (const auto& r : roots) h.reflections.push_back({{}, r});
  return h;
}

std::vector<Root> spec_roots(const Representation& rep, const SubgroupSpec& h) {
  const int n = rep.rank();
  std::vector<Root> out;
  for (std::size_t k = 0; k < h.reflections.size(); ++k) {
    const auto& e = h.reflections[k];
    const std::string where = "reflection " + std::to_string(k);
    Root r;
    if (e.root) {
      if (e.root->size() != n) throw input_error(where + ": root needs " + std::to_string(n) + " coordinates");
      try {
        r = normalize_root(rep.gram(), *e.root);
      } catch (const Error& err) {
        throw input_error(where + ": " + err.what());
      }
      if (!root_word(rep, r)) throw input_error(where + ": not a root of the group");
    } else {
      if (e.word.empty()) throw input_error(where + ": empty word");
      const GroupElement w = rep.element(e.word);
      const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
      const double scale = 1.0 + w.matrix.cwiseAbs().maxCoeff();
      if ((w.matrix * w.matrix - id).cwiseAbs().maxCoeff() > 1e-9 * scale * scale)
        throw input_error(where + ": word is not an involution");
      const Eigen::MatrixXd d = id - w.matrix;
      Eigen::Index col = 0;
      d.colwise().norm().maxCoeff(&col);
      if (d.col(col).norm() < 1e-9) throw input_error(where + ": word is the identity");
      try {
        r = normalize_root(rep.gram(), d.col(col));
      } catch (const Error&) {
        throw input_error(where + ": word is not a reflection");
      }
      if ((rep.reflection_matrix(r) - w.matrix).cwiseAbs().maxCoeff() > 1e-7 * scale)
        throw input_error(where + ": word is not a reflection");
    }
    out.push_back(r);
  }
  return out;
}

namespace {

// m >= 2 with B == -cos(pi/m), or 0 for B <= -1; -1 when neither holds.
int pair_label(double b, const Tolerances& tol) {
  if (b <= -1.0 + tol.geo) return kInf;
  const double angle = std::acos(std::clamp(-b, -1.0, 1.0));
  if (!(angle > 0.0)) return -1;
  const long m = std::lround(kPi / angle);
  if (m < 2) return -1;
  return std::abs(b + std::cos(kPi / static_cast<double>(m))) <= tol.ang ? static_cast<int>(m) : -1;
}

void sort_unique(std::vector<Root>& roots) {
  std::ranges::sort(roots, [](const Root& a, const Root& b) { return root_key(a) < root_key(b); });
  std::vector<Root> out;
  for (auto& r : roots)
    if (out.empty() || !same_root(out.back(), r)) out.push_back(std::move(r));
  roots = std::move(out);
}

double height(const Root& r) { return r.sum(); }

std::pair<Root, Root> finite_dihedral_pair(const Representation& rep, const Root& beta, const Root& gamma) {
  const auto& tol = rep.tolerances();
  const GramMatrix& g = rep.gram();
  const double b = rep.form(beta, gamma);
  const double theta = std::acos(std::clamp(b, -1.0, 1.0));
  int order = -1;
  for (int m = 2; m <= 1000 && order < 0; ++m) {
    const double k = std::round(theta * m / kPi);
    if (std::abs(theta - k * kPi / m) <= tol.ang) order = m;
  }
  if (order < 0) throw Error(ErrorCode::NonDiscretePair, "angle between reflections is not a rational multiple of pi");
  std::vector<Root> closure{beta, gamma, -beta, -gamma};
  const std::size_t limit = 2 * static_cast<std::size_t>(std::max(order, rep.matrix().max_label())) + 4;
  for (std::size_t a = 0; a < closure.size(); ++a)
    for (std::size_t c = 0; c < closure.size(); ++c) {
      const Root r = reflect_root(g, closure[c], closure[a]);
      if (std::ranges::none_of(closure, [&](const Root& x) { return same_root(x, r); })) {
        closure.push_back(r);
        if (closure.size() > limit) throw Error(ErrorCode::BoundExceeded, "dihedral closure exceeds bound");
        a = 0;
        c = 0;
      }
    }
  std::vector<Root> positive;
  for (const auto& r : closure)
    if (root_sign(r, 1e-9 * (1.0 + r.cwiseAbs().maxCoeff())) > 0) positive.push_back(r);
  std::pair<Root, Root> best;
  double best_b = 2.0;
  for (std::size_t i = 0; i < positive.size(); ++i)
    for (std::size_t j = i + 1; j < positive.size(); ++j) {
      const double v = rep.form(positive[i], positive[j]);
      if (v < best_b) best_b = v, best = {positive[i], positive[j]};
    }
  const int m = static_cast<int>(positive.size());
  if (m < 2 || std::abs(best_b + std::cos(kPi / m)) > 1e-6)
    throw Error(ErrorCode::NonDiscretePair, "dihedral subsystem has no simple pair");
  return best;
}

std::pair<Root, Root> nested_pair(const Representation& rep, Root beta, Root gamma) {
  const GramMatrix& g = rep.gram();
  auto positive = [](const Root& r) { return root_sign(r, 1e-9 * (1.0 + r.cwiseAbs().maxCoeff())) > 0; };
  for (int step = 0; step < 100000; ++step) {
    const Root sg = reflect_root(g, gamma, beta);
    if (positive(sg)) return {beta, sg};
    const Root sb = reflect_root(g, beta, gamma);
    if (positive(sb)) return {gamma, sb};
    if (height(beta) > height(gamma))
      beta = -sb;
    else
      gamma = -sg;
  }
  throw Error(ErrorCode::BoundExceeded, "nested pair reduction did not terminate");
}

}  // namespace

bool CanonicalSystem::well_formed(const GramMatrix& g, const Tolerances& tol) const {
  if (roots.empty()) return false;
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j)
      if (pair_label(roots[i].dot(g * roots[j]), tol) < 0) return false;
  return true;
}

CanonicalSystem canonical_generators(const Representation& rep, const std::vector<Root>& input) {
  const auto& tol = rep.tolerances();
  std::vector<Root> roots = input;
  sort_unique(roots);
  if (roots.empty()) throw input_error("subgroup needs at least one reflection");
  for (int iter = 0; iter < 100000; ++iter) {
    std::optional<std::pair<std::size_t, std::size_t>> bad;
    for (std::size_t i = 0; i < roots.size() && !bad; ++i)
      for (std::size_t j = i + 1; j < roots.size() && !bad; ++j)
        if (pair_label(rep.form(roots[i], roots[j]), tol) < 0) bad = {i, j};
    if (!bad) return {roots};
    const Root beta = roots[bad->first], gamma = roots[bad->second];
    const double b = rep.form(beta, gamma);
    auto [d1, d2] = b >= 1.0 - tol.geo ? nested_pair(rep, beta, gamma) : finite_dihedral_pair(rep, beta, gamma);
    roots.erase(roots.begin() + static_cast<std::ptrdiff_t>(bad->second));
    roots.erase(roots.begin() + static_cast<std::ptrdiff_t>(bad->first));
    roots.push_back(normalize_root(rep.gram(), d1));
    roots.push_back(normalize_root(rep.gram(), d2));
    sort_unique(roots);
  }
  throw Error(ErrorCode::BoundExceeded, "rank-2 replacement did not terminate");
}

CanonicalSystem canonical_generators(const CoxeterMatrix& m, const SubgroupSpec& h, const Tolerances& tol) {
  Representation rep(m, tol);
  return canonical_generators(rep, spec_roots(rep, h));
}

SubgroupChamber subgroup_chamber(const Representation& rep, const CanonicalSystem& system, const Bounds& bounds) {
  if (bounds.max_index < 1 || bounds.max_chambers < 1) throw input_error("bounds must be positive");
  const int n = rep.rank();
  SubgroupChamber out;
  out.system = system;
  auto inside = [&](const GroupElement& w) {
    const Eigen::RowVectorXd f = rep.probe().transpose() * w.inverse;
    return std::ranges::all_of(system.roots, [&](const Root& d) { return f.dot(d) > 0.0; });
  };
  std::map<ElementKey, int> index;
  auto& cs = out.chambers;
  cs.chambers.push_back(rep.identity());
  cs.neighbors.emplace_back(n, -1);
  index[cs.chambers[0].key] = 0;
  for (std::size_t c = 0; c < cs.chambers.size(); ++c)
    for (int i = 0; i < n; ++i) {
      GroupElement nb = rep.times_generator(cs.chambers[c], i);
      auto it = index.find(nb.key);
      if (it == index.end()) {
        if (!inside(nb)) {
          const Root wall = normalize_root(rep.gram(), cs.chambers[c].matrix.col(i));
          if (std::ranges::none_of(out.walls, [&](const Root& x) { return same_root(x, wall); }))
            out.walls.push_back(wall);
          continue;
        }
        if (cs.size() >= bounds.max_index || cs.size() >= bounds.max_chambers)
          throw Error(ErrorCode::IndexBoundExceeded,
                      "chamber of the subgroup exceeds " + std::to_string(std::min(bounds.max_index, bounds.max_chambers)) +
                          " chambers");
        it = index.emplace(nb.key, cs.size()).first;
        cs.chambers.push_back(std::move(nb));
        cs.neighbors.emplace_back(n, -1);
      }
      cs.neighbors[c][i] = it->second;
      cs.neighbors[it->second][i] = static_cast<int>(c);
    }
  sort_unique(out.walls);
  out.index = cs.size();
  out.facet_count = static_cast<int>(out.walls.size());
  return out;
}

SubgroupChamber subgroup_chamber(const CoxeterMatrix& m, const SubgroupSpec& h, const Bounds& bounds,
                                 const Tolerances& tol) {
  Representation rep(m, tol);
  return subgroup_chamber(rep, canonical_generators(rep, spec_roots(rep, h)), bounds);
}

// ---------------------------------------------------------------------------
// Geometry of chambers

Polytope realize_fundamental(const CoxeterMatrix& m, const Tolerances& tol) {
  if (m.rank() == 3) return realize_triangle(m, tol);
  const GramMatrix g = gram_from_coxeter(m);
  if (m.rank() == 4 && signature(g, tol.sig) == Signature{3, 0, 1}) return realize_hyperbolic(g, tol);
  throw Error(ErrorCode::Unsupported, "no realization for rank " + std::to_string(m.rank()));
}

Polytope realize_subgroup_chamber(const Polytope& f, const CanonicalSystem& system, const Tolerances& tol) {
  const Space& s = f.space();
  std::vector<Hyperplane> hs;
  for (const auto& r : system.roots) {
    if (r.size() != f.facet_count()) throw input_error("root and chamber disagree on rank");
    Eigen::VectorXd normal = Eigen::VectorXd::Zero(s.coords());
    double offset = 0.0;
    for (int i = 0; i < f.facet_count(); ++i) {
      normal += r(i) * f.facets()[i].normal;
      offset += r(i) * f.facets()[i].offset;
    }
    hs.push_back(s.hyperbolic() ? Hyperplane::hyperbolic(normal) : Hyperplane::euclidean(normal, offset));
  }
  return Polytope::from_halfspaces(s, hs, tol);
}

bool finite_covolume_by_diagram(const CoxeterMatrix& m, const Tolerances& tol) {
  const CoxeterDiagram d(m);
  const GramMatrix g = gram_from_coxeter(m);
  const Signature sig = signature(g, tol.sig);
  const int n = m.rank();
  if (sig.plus == n) return true;
  if (sig.minus == 0) return sig.zero == 1 && classify_diagram(d, tol).kind == DiagramKind::ParabolicUnion &&
                              connected_components(d).size() == 1;
  if (sig != Signature{n - 1, 0, 1}) return false;
  for (int v = 0; v < n; ++v) {
    const DiagramKind k = classify_diagram(remove_node(d, v), tol).kind;
    if (k == DiagramKind::Elliptic) continue;
    if (k != DiagramKind::ParabolicUnion) return false;
    const Signature link = signature(gram_from_coxeter(remove_node(d, v).matrix()), tol.sig);
    if (link.plus != n - 2) return false;
  }
  return true;
}

Tiling build_tiling(const Polytope& f, const ChamberSet& t, const Tolerances& tol) {
  const Space& s = f.space();
  if (s.dim != 2) throw Error(ErrorCode::Unsupported, "tilings need dim 2");
  std::vector<ModelMap> gens;
  for (const auto& h : f.facets()) gens.push_back(ModelMap::reflection(s, h));
  Tiling out;
  for (const auto& c : t.chambers) {
    ModelMap map = ModelMap::identity(s);
    for (int i : c.word) {
      if (i >= static_cast<int>(gens.size())) throw input_error("word uses a generator F does not have");
      map = gens[i].then(map);
    }
    std::vector<Hyperplane> hs;
    for (const auto& h : f.facets()) hs.push_back(map.apply(s, h));
    out.tiles.push_back({c.word, map, Polytope::from_halfspaces(s, hs, tol)});
  }
  for (int a = 0; a < t.size(); ++a)
    for (std::size_t i = 0; i < t.neighbors[a].size(); ++i) {
      const int b = t.neighbors[a][i];
      if (b > a) out.adjacency.push_back({a, b, static_cast<int>(i)});
    }
  return out;
}

namespace {

double side_scale(const Eigen::VectorXd& x) { return 1.0 + x.cwiseAbs().maxCoeff(); }

bool same_hyperplane(const Space& s, const Hyperplane& a, const Hyperplane& b, double tol) {
  for (double sign : {1.0, -1.0}) {
    const bool n = (a.normal - sign * b.normal).cwiseAbs().maxCoeff() <= tol;
    const bool o = s.hyperbolic() || std::abs(a.offset - sign * b.offset) <= tol * (1.0 + std::abs(a.offset));
    if (n && o) return true;
  }
  return false;
}

bool inside(const Space& s, const Polytope& p, const Vertex& v, double tol) {
  return std::ranges::all_of(p.facets(), [&](const Hyperplane& h) {
    return h.value(s, v.point) <= tol * side_scale(v.point);
  });
}

}  // namespace

std::vector<Hyperplane> mirrors_of_decomposition(const Polytope& p, const Tiling& t, const Tolerances& tol) {
  const Space& s = p.space();
  const double eps = std::max(tol.geo * 1e2, 1e-7);
  std::vector<Hyperplane> out;
  for (std::size_t k = 0; k < t.tiles.size(); ++k) {
    const Polytope& tile = t.tiles[k].polytope;
    for (const auto& v : tile.vertices())
      if (!inside(s, p, v, eps)) throw geometry_error("tile " + std::to_string(k) + " is not contained in P");
    for (const auto& h : tile.facets()) {
      const bool of_p = std::ranges::any_of(p.facets(), [&](const Hyperplane& f) { return same_hyperplane(s, f, h, eps); });
      const bool seen = std::ranges::any_of(out, [&](const Hyperplane& f) { return same_hyperplane(s, f, h, eps); });
      if (!of_p && !seen) out.push_back(h);
    }
  }
  return out;
}

std::vector<bool> fundamental_angles(const Polytope& p, const std::vector<Hyperplane>& mirrors,
                                     const Tolerances& tol) {
  const double eps = std::max(tol.geo * 1e2, 1e-7);
  std::vector<bool> out;
  for (const auto& v : p.vertices())
    out.push_back(std::ranges::none_of(mirrors, [&](const Hyperplane& h) {
      return std::abs(h.value(p.space(), v.point)) <= eps * side_scale(v.point);
    }));
  return out;
}

namespace {

std::vector<double> sorted_angles(const Polytope& p, const Tolerances& tol) {
  auto a = interior_angles(p, tol);
  std::ranges::sort(a);
  return a;
}

bool separated(const Space& s, const Polytope& a, const Polytope& b, double eps) {
  return std::ranges::any_of(a.facets(), [&](const Hyperplane& h) {
    return std::ranges::all_of(b.vertices(), [&](const Vertex& v) {
      return h.value(s, v.point) >= -eps * side_scale(v.point);
    });
  });
}

bool same_vertex_sets(const std::vector<Eigen::VectorXd>& a, const std::vector<Vertex>& b, double eps) {
  if (a.size() != b.size()) return false;
  return std::ranges::all_of(a, [&](const Eigen::VectorXd& x) {
    return std::ranges::any_of(b, [&](const Vertex& v) { return (x - v.point).norm() <= eps * side_scale(x); });
  });
}

}  // namespace

DecompositionReport verify_decomposition(const Polytope& p, const Polytope& f, const Tiling& t, const Tolerances& tol) {
  DecompositionReport rep;
  const Space& s = p.space();
  const double eps = std::max(tol.geo * 1e2, 1e-7);
  if (!f.finite_volume() || !p.finite_volume()) {
    rep.covers = false;
    rep.failures.push_back("infinite area");
    return rep;
  }
  const double area_f = area2(f, tol);
  const auto angles_f = sorted_angles(f, tol);
  double total = 0.0;
  for (std::size_t k = 0; k < t.tiles.size(); ++k) {
    const Polytope& tile = t.tiles[k].polytope;
    if (!tile.finite_volume() || tile.facet_count() != f.facet_count()) {
      rep.congruent = false;
      rep.failures.push_back("tile " + std::to_string(k) + " is not congruent to F");
      continue;
    }
    const double a = area2(tile, tol);
    const auto angles = sorted_angles(tile, tol);
    bool same = std::abs(a - area_f) <= 1e-9 && angles.size() == angles_f.size();
    for (std::size_t i = 0; same && i < angles.size(); ++i) same = std::abs(angles[i] - angles_f[i]) <= tol.ang;
    if (!same) {
      rep.congruent = false;
      rep.failures.push_back("tile " + std::to_string(k) + " is not congruent to F");
    }
    total += a;
    for (const auto& v : tile.vertices())
      if (!inside(s, p, v, eps)) {
        rep.covers = false;
        rep.failures.push_back("tile " + std::to_string(k) + " leaves P");
        break;
      }
  }
  for (std::size_t a = 0; a < t.tiles.size(); ++a)
    for (std::size_t b = a + 1; b < t.tiles.size(); ++b) {
      const auto& A = t.tiles[a].polytope;
      const auto& B = t.tiles[b].polytope;
      if (!separated(s, A, B, eps) && !separated(s, B, A, eps)) {
        rep.disjoint = false;
        rep.failures.push_back("tiles " + std::to_string(a) + " and " + std::to_string(b) + " overlap");
      }
    }
  rep.area_residual = std::abs(area2(p, tol) - total);
  if (rep.area_residual > 1e-9) {
    rep.covers = false;
    rep.failures.push_back("tile areas do not add up to the area of P");
  }
  for (const auto& adj : t.adjacency) {
    const Tile& ta = t.tiles[adj.a];
    const Hyperplane wall = ta.map.apply(s, f.facets()[adj.wall]);
    const ModelMap r = ModelMap::reflection(s, wall);
    std::vector<Eigen::VectorXd> image;
    for (const auto& v : ta.polytope.vertices()) image.push_back(r.apply(s, v.point, v.ideal));
    if (!same_vertex_sets(image, t.tiles[adj.b].polytope.vertices(), eps)) {
      rep.symmetric = false;
      rep.failures.push_back("tiles " + std::to_string(adj.a) + " and " + std::to_string(adj.b) +
                             " are not mirror images across their common wall");
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Verdict

TheoremVerdict theorem_check(const Representation& rep, const SubgroupChamber& sc, const std::optional<Polytope>& f) {
  TheoremVerdict v;
  const auto& tol = rep.tolerances();
  std::optional<Polytope> chamber = f;
  if (!chamber && rep.rank() == 3) chamber = realize_fundamental(rep.matrix(), tol);
  v.k_f = chamber ? chamber->facet_count() : rep.rank();
  v.k_p = sc.facet_count;
  v.index = sc.index;
  if (chamber && chamber->space().dim == 2)
    v.finite_volume = realize_subgroup_chamber(*chamber, sc.system, tol).finite_volume();
  else
    v.finite_volume = finite_covolume_by_diagram(rep.matrix(), tol);
  v.holds = v.k_p >= v.k_f;
  return v;
}

TheoremVerdict theorem_check(const CoxeterMatrix& m, const SubgroupSpec& h, const Bounds& bounds,
                             const Tolerances& tol, const std::optional<Polytope>& f) {
  Representation rep(m, tol);
  return theorem_check(rep, subgroup_chamber(rep, canonical_generators(rep, spec_roots(rep, h)), bounds), f);
}

}  // namespace refl
