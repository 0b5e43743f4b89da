#include "refl/diagrams.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

namespace refl {

namespace {

std::string pos(int i, int j) {
  return "m[" + std::to_string(i) + "][" + std::to_string(j) + "]";
}

// Builds a matrix from an edge list, all other pairs commuting.
CoxeterMatrix from_edges(int n, const std::vector<DiagramEdge>& edges) {
  std::vector<std::vector<int>> m(n, std::vector<int>(n, 2));
  std::map<std::pair<int, int>, double> w;
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  for (const auto& e : edges) {
    if (e.a < 0 || e.b < 0 || e.a >= n || e.b >= n || e.a == e.b)
      throw input_error("edge (" + std::to_string(e.a) + "," + std::to_string(e.b) +
                        ") out of range");
    m[e.a][e.b] = m[e.b][e.a] = e.label;
    if (e.label == kInf && e.weight != -1.0) w[{std::min(e.a, e.b), std::max(e.a, e.b)}] = e.weight;
  }
  return CoxeterMatrix(std::move(m), std::move(w));
}

CoxeterDiagram path(const std::vector<int>& labels) {
  std::vector<DiagramEdge> edges;
  for (int i = 0; i < static_cast<int>(labels.size()); ++i) edges.push_back({i, i + 1, labels[i]});
  return CoxeterDiagram(static_cast<int>(labels.size()) + 1, edges);
}

bool edge_relation(const CoxeterMatrix& m, int i, int j) { return i != j && m(i, j) != 2; }

}  // namespace

// ---------------------------------------------------------------------------
// CoxeterMatrix

CoxeterMatrix::CoxeterMatrix(std::vector<std::vector<int>> m,
                             std::map<std::pair<int, int>, double> weights)
    : m_(std::move(m)) {
  const int n = rank();
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(m_[i].size()) != n)
      throw input_error("row " + std::to_string(i) + " has " + std::to_string(m_[i].size()) +
                        " entries, expected " + std::to_string(n));
  }
  for (int i = 0; i < n; ++i) {
    if (m_[i][i] != 1) throw input_error(pos(i, i) + " must be 1");
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (m_[i][j] != kInf && m_[i][j] < 2)
        throw input_error(pos(i, j) + " = " + std::to_string(m_[i][j]) +
                          " (off-diagonal entries are >= 2, or 0 for infinity)");
      if (m_[i][j] != m_[j][i]) throw input_error(pos(i, j) + " differs from " + pos(j, i));
    }
  }
  for (auto [key, c] : weights) {
    auto [i, j] = key;
    if (i > j) std::swap(i, j);
    if (i < 0 || j >= n || i == j)
      throw input_error("weight (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
    if (m_[i][j] != kInf) throw input_error("weight given for finite " + pos(i, j));
    if (!(c <= -1.0)) throw input_error("weight for " + pos(i, j) + " must be <= -1");
    if (c != -1.0) weights_[{i, j}] = c;
  }
}

CoxeterMatrix CoxeterMatrix::triangle(int p, int q, int r) {
  return CoxeterMatrix({{1, p, r}, {p, 1, q}, {r, q, 1}});
}

double CoxeterMatrix::weight(int i, int j) const {
  auto it = weights_.find({std::min(i, j), std::max(i, j)});
  return it == weights_.end() ? -1.0 : it->second;
}

int CoxeterMatrix::max_label() const {
  int best = 1;
  for (const auto& row : m_)
    for (int v : row) best = std::max(best, v);
  return best;
}

// ---------------------------------------------------------------------------
// CoxeterDiagram

CoxeterDiagram::CoxeterDiagram(CoxeterMatrix m) : matrix_(std::move(m)) {
  ids_.resize(matrix_.rank());
  std::iota(ids_.begin(), ids_.end(), 0);
}

CoxeterDiagram::CoxeterDiagram(CoxeterMatrix m, std::vector<int> ids)
    : matrix_(std::move(m)), ids_(std::move(ids)) {
  if (static_cast<int>(ids_.size()) != matrix_.rank()) throw input_error("node id count mismatch");
}

CoxeterDiagram::CoxeterDiagram(int nodes, const std::vector<DiagramEdge>& edges)
    : CoxeterDiagram(from_edges(nodes, edges)) {}

std::vector<DiagramEdge> CoxeterDiagram::edges() const {
  std::vector<DiagramEdge> out;
  for (int i = 0; i < size(); ++i)
    for (int j = i + 1; j < size(); ++j)
      if (edge_relation(matrix_, i, j))
        out.push_back({i, j, matrix_(i, j), matrix_.infinite(i, j) ? matrix_.weight(i, j) : -1.0});
  return out;
}

bool CoxeterDiagram::has_dotted_edge() const {
  return std::ranges::any_of(edges(), [](const DiagramEdge& e) { return e.dotted(); });
}

std::vector<std::string> DiagramClass::names() const {
  std::vector<std::string> out;
  for (const auto& c : components) out.push_back(c.name);
  return out;
}

// ---------------------------------------------------------------------------
// Gram matrix and signature

GramMatrix gram_from_coxeter(const CoxeterMatrix& m) {
  const int n = m.rank();
  GramMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j)
        g(i, j) = 1.0;
      else if (m.infinite(i, j))
        g(i, j) = m.weight(i, j);
      else
        g(i, j) = -std::cos(kPi / m(i, j));
    }
  return g;
}

Signature signature(const GramMatrix& g, double tau) {
  Signature s;
  if (g.rows() == 0) return s;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g, Eigen::EigenvaluesOnly);
  for (double ev : solver.eigenvalues()) {
    if (ev > tau)
      ++s.plus;
    else if (ev < -tau)
      ++s.minus;
    else
      ++s.zero;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Sub-diagrams

std::vector<std::vector<int>> connected_components(const CoxeterDiagram& d) {
  const int n = d.size();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> nodes{s}, stack{s};
    comp[s] = static_cast<int>(out.size());
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int u = 0; u < n; ++u)
        if (comp[u] < 0 && edge_relation(d.matrix(), v, u)) {
          comp[u] = comp[s];
          nodes.push_back(u);
          stack.push_back(u);
        }
    }
    std::ranges::sort(nodes);
    out.push_back(std::move(nodes));
  }
  return out;
}

CoxeterDiagram induced(const CoxeterDiagram& d, const std::vector<int>& nodes) {
  const int k = static_cast<int>(nodes.size());
  std::vector<std::vector<int>> m(k, std::vector<int>(k));
  std::map<std::pair<int, int>, double> w;
  std::vector<int> ids;
  for (int a = 0; a < k; ++a) {
    ids.push_back(d.ids()[nodes[a]]);
    for (int b = 0; b < k; ++b) {
      m[a][b] = d.matrix()(nodes[a], nodes[b]);
      if (a < b && d.matrix().infinite(nodes[a], nodes[b]))
        w[{a, b}] = d.matrix().weight(nodes[a], nodes[b]);
    }
  }
  return CoxeterDiagram(CoxeterMatrix(std::move(m), std::move(w)), std::move(ids));
}

CoxeterDiagram remove_node(const CoxeterDiagram& d, int v) {
  auto it = std::ranges::find(d.ids(), v);
  if (it == d.ids().end()) throw input_error("unknown node " + std::to_string(v));
  const int skip = static_cast<int>(it - d.ids().begin());
  std::vector<int> keep;
  for (int i = 0; i < d.size(); ++i)
    if (i != skip) keep.push_back(i);
  return induced(d, keep);
}

CoxeterDiagram disjoint_union(const CoxeterDiagram& a, const CoxeterDiagram& b) {
  const int na = a.size(), n = a.size() + b.size();
  std::vector<DiagramEdge> edges = a.edges();
  for (auto e : b.edges()) {
    e.a += na;
    e.b += na;
    edges.push_back(e);
  }
  return CoxeterDiagram(n, edges);
}

// ---------------------------------------------------------------------------
// Isomorphism

bool isomorphic(const CoxeterDiagram& a, const CoxeterDiagram& b) {
  const int n = a.size();
  if (n != b.size()) return false;
  const auto& ma = a.matrix();
  const auto& mb = b.matrix();
  auto same_pair = [&](int i, int j, int p, int q) {
    if (ma(i, j) != mb(p, q)) return false;
    if (ma.infinite(i, j)) return std::abs(ma.weight(i, j) - mb.weight(p, q)) <= 1e-12;
    return true;
  };
  // Node invariant: sorted list of incident labels.
  auto profile = [](const CoxeterMatrix& m, int i) {
    std::vector<int> labels;
    for (int j = 0; j < m.rank(); ++j)
      if (j != i && m(i, j) != 2) labels.push_back(m(i, j));
    std::ranges::sort(labels);
    return labels;
  };
  std::vector<std::vector<int>> pa(n), pb(n);
  for (int i = 0; i < n; ++i) {
    pa[i] = profile(ma, i);
    pb[i] = profile(mb, i);
  }
  {
    auto sa = pa, sb = pb;
    std::ranges::sort(sa);
    std::ranges::sort(sb);
    if (sa != sb) return false;
  }
  std::vector<int> map(n, -1);
  std::vector<bool> used(n, false);
  std::function<bool(int)> extend = [&](int i) {
    if (i == n) return true;
    for (int p = 0; p < n; ++p) {
      if (used[p] || pa[i] != pb[p]) continue;
      bool ok = true;
      for (int j = 0; j < i && ok; ++j) ok = same_pair(i, j, p, map[j]);
      if (!ok) continue;
      map[i] = p;
      used[p] = true;
      if (extend(i + 1)) return true;
      used[p] = false;
    }
    return false;
  };
  return extend(0);
}

// ---------------------------------------------------------------------------
// Named tables

std::string dihedral_name(int m) {
  if (m == 3) return "A2";
  if (m == 4) return "B2";
  return "I2(" + std::to_string(m) + ")";
}

std::vector<NamedDiagram> elliptic_table(int max_nodes, int max_label) {
  std::vector<NamedDiagram> t;
  auto add = [&](std::string name, CoxeterDiagram d) {
    if (d.size() <= max_nodes) t.push_back({std::move(name), ComponentType::Elliptic, std::move(d)});
  };
  add("A1", CoxeterDiagram(1, {}));
  for (int n = 2; n <= max_nodes; ++n) add("A" + std::to_string(n), path(std::vector<int>(n - 1, 3)));
  for (int n = 2; n <= max_nodes; ++n) {
    std::vector<int> labels(n - 1, 3);
    labels.back() = 4;
    add("B" + std::to_string(n), path(labels));
  }
  for (int n = 4; n <= max_nodes; ++n) {
    std::vector<DiagramEdge> e;
    for (int i = 0; i + 1 < n - 1; ++i) e.push_back({i, i + 1, 3});
    e.push_back({n - 1, n - 3, 3});
    add("D" + std::to_string(n), CoxeterDiagram(n, e));
  }
  for (int n = 6; n <= 8; ++n) {
    std::vector<DiagramEdge> e;
    for (int i = 0; i + 1 < n - 1; ++i) e.push_back({i, i + 1, 3});
    e.push_back({n - 1, 2, 3});
    add("E" + std::to_string(n), CoxeterDiagram(n, e));
  }
  add("F4", path({3, 4, 3}));
  add("H3", path({5, 3}));
  add("H4", path({5, 3, 3}));
  for (int m = 5; m <= max_label; ++m) add(dihedral_name(m), path({m}));
  return t;
}

std::vector<NamedDiagram> parabolic_table(int max_nodes) {
  // Precomposed "Ã"; other letters take a combining tilde.
  const std::string tilde = "̃";
  std::vector<NamedDiagram> t;
  auto add = [&](std::string name, CoxeterDiagram d) {
    if (d.size() <= max_nodes) t.push_back({std::move(name), ComponentType::Parabolic, std::move(d)});
  };
  add("Ã1", path({kInf}));
  for (int n = 2; n + 1 <= max_nodes; ++n) {
    std::vector<DiagramEdge> e;
    for (int i = 0; i <= n; ++i) e.push_back({i, (i + 1) % (n + 1), 3});
    add("Ã" + std::to_string(n), CoxeterDiagram(n + 1, e));
  }
  for (int n = 3; n + 1 <= max_nodes; ++n) {
    std::vector<DiagramEdge> e{{0, 2, 3}, {1, 2, 3}};
    for (int i = 2; i < n; ++i) e.push_back({i, i + 1, i + 1 == n ? 4 : 3});
    add("B" + tilde + std::to_string(n), CoxeterDiagram(n + 1, e));
  }
  for (int n = 2; n + 1 <= max_nodes; ++n) {
    std::vector<int> labels(n, 3);
    labels.front() = labels.back() = 4;
    add("C" + tilde + std::to_string(n), path(labels));
  }
  for (int n = 4; n + 1 <= max_nodes; ++n) {
    std::vector<DiagramEdge> e{{0, 2, 3}, {1, 2, 3}};
    for (int i = 2; i < n - 2; ++i) e.push_back({i, i + 1, 3});
    e.push_back({n - 1, n - 2, 3});
    e.push_back({n, n - 2, 3});
    add("D" + tilde + std::to_string(n), CoxeterDiagram(n + 1, e));
  }
  add("E" + tilde + "6",
      CoxeterDiagram(7, {{0, 1, 3}, {1, 2, 3}, {0, 3, 3}, {3, 4, 3}, {0, 5, 3}, {5, 6, 3}}));
  {
    std::vector<DiagramEdge> e;
    for (int i = 0; i < 6; ++i) e.push_back({i, i + 1, 3});
    e.push_back({7, 3, 3});
    add("E" + tilde + "7", CoxeterDiagram(8, e));
  }
  {
    std::vector<DiagramEdge> e;
    for (int i = 0; i < 7; ++i) e.push_back({i, i + 1, 3});
    e.push_back({8, 2, 3});
    add("E" + tilde + "8", CoxeterDiagram(9, e));
  }
  add("F" + tilde + "4", path({3, 3, 4, 3}));
  add("G" + tilde + "2", path({3, 6}));
  return t;
}

namespace {

const std::vector<NamedDiagram>& cached_table(ComponentType type) {
  static const auto elliptic = elliptic_table(10, 4);  // rank-2 handled by dihedral_name
  static const auto parabolic = parabolic_table(10);
  return type == ComponentType::Elliptic ? elliptic : parabolic;
}

DiagramKind combine(const std::vector<DiagramComponent>& comps) {
  bool any_e = false, any_p = false;
  for (const auto& c : comps) {
    if (c.type == ComponentType::Indefinite) return DiagramKind::Indefinite;
    (c.type == ComponentType::Elliptic ? any_e : any_p) = true;
  }
  if (any_p && any_e) return DiagramKind::Mixed;
  return any_p ? DiagramKind::ParabolicUnion : DiagramKind::Elliptic;
}

std::pair<ComponentType, std::string> lookup(const CoxeterDiagram& c) {
  const int k = c.size();
  if (k == 1) return {ComponentType::Elliptic, "A1"};
  if (k == 2) {
    const auto& m = c.matrix();
    if (!m.infinite(0, 1)) return {ComponentType::Elliptic, dihedral_name(m(0, 1))};
    if (m.weight(0, 1) == -1.0) return {ComponentType::Parabolic, "Ã1"};
    return {ComponentType::Indefinite, ""};
  }
  for (auto type : {ComponentType::Elliptic, ComponentType::Parabolic})
    for (const auto& entry : cached_table(type))
      if (entry.diagram.size() == k && isomorphic(entry.diagram, c)) return {type, entry.name};
  return {ComponentType::Indefinite, ""};
}

}  // namespace

DiagramClass classify_by_signature(const CoxeterDiagram& d, const Tolerances& tol) {
  DiagramClass out;
  const GramMatrix g = gram_from_coxeter(d.matrix());
  for (auto& nodes : connected_components(d)) {
    const int k = static_cast<int>(nodes.size());
    GramMatrix sub(k, k);
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) sub(a, b) = g(nodes[a], nodes[b]);
    const Signature s = signature(sub, tol.sig);
    ComponentType type = ComponentType::Indefinite;
    if (s == Signature{k, 0, 0})
      type = ComponentType::Elliptic;
    else if (s == Signature{k - 1, 1, 0})
      type = ComponentType::Parabolic;
    out.components.push_back({std::move(nodes), type, ""});
  }
  out.kind = combine(out.components);
  return out;
}

DiagramClass classify_by_table(const CoxeterDiagram& d) {
  DiagramClass out;
  for (auto& nodes : connected_components(d)) {
    auto [type, name] = lookup(induced(d, nodes));
    out.components.push_back({std::move(nodes), type, std::move(name)});
  }
  out.kind = combine(out.components);
  return out;
}

DiagramClass classify_diagram(const CoxeterDiagram& d, const Tolerances& tol) {
  DiagramClass by_table = classify_by_table(d);
  const DiagramClass by_sig = classify_by_signature(d, tol);
  for (std::size_t c = 0; c < by_table.components.size(); ++c) {
    const auto& t = by_table.components[c];
    if (t.type != by_sig.components[c].type)
      throw std::logic_error("table and signature disagree on component " +
                             (t.name.empty() ? std::string("(unnamed)") : t.name) + " of size " +
                             std::to_string(t.nodes.size()));
  }
  if (d.has_dotted_edge()) by_table.kind = DiagramKind::Indefinite;
  return by_table;
}

// ---------------------------------------------------------------------------
// Parabolic unions

namespace {

template <class Visit>
void for_each_union(int max_rank, Visit visit) {
  const auto table = parabolic_table(std::min(max_rank, 10));
  std::vector<int> chosen;
  std::function<void(int, int)> rec = [&](int start, int budget) {
    if (!chosen.empty()) visit(table, chosen);
    for (int i = start; i < static_cast<int>(table.size()); ++i) {
      const int sz = table[i].diagram.size();
      if (sz > budget) continue;
      chosen.push_back(i);
      rec(i, budget - sz);
      chosen.pop_back();
    }
  };
  rec(0, max_rank);
}

}  // namespace

std::vector<CoxeterDiagram> enumerate_parabolic_unions(int max_rank) {
  if (max_rank > 10) throw input_error("max_rank must be <= 10");
  std::vector<CoxeterDiagram> out;
  for_each_union(max_rank, [&](const std::vector<NamedDiagram>& t, const std::vector<int>& idx) {
    CoxeterDiagram d = t[idx[0]].diagram;
    for (std::size_t k = 1; k < idx.size(); ++k) d = disjoint_union(d, t[idx[k]].diagram);
    out.push_back(std::move(d));
  });
  return out;
}

std::vector<std::vector<std::string>> enumerate_parabolic_union_names(int max_rank) {
  if (max_rank > 10) throw input_error("max_rank must be <= 10");
  std::vector<std::vector<std::string>> out;
  for_each_union(max_rank, [&](const std::vector<NamedDiagram>& t, const std::vector<int>& idx) {
    std::vector<std::string> names;
    for (int i : idx) names.push_back(t[i].name);
    out.push_back(std::move(names));
  });
  return out;
}

// ---------------------------------------------------------------------------
// Text

std::string to_string(DiagramKind k) {
  switch (k) {
    case DiagramKind::Elliptic: return "elliptic";
    case DiagramKind::ParabolicUnion: return "parabolic";
    case DiagramKind::Mixed: return "mixed";
    case DiagramKind::Indefinite: return "indefinite";
  }
  return "?";
}

std::string to_string(ComponentType t) {
  switch (t) {
    case ComponentType::Elliptic: return "elliptic";
    case ComponentType::Parabolic: return "parabolic";
    case ComponentType::Indefinite: return "indefinite";
  }
  return "?";
}

std::string diagram_art(const CoxeterDiagram& d) {
  if (d.size() == 0) return "(empty)\n";
  std::ostringstream os;
  std::vector<bool> touched(d.size(), false);
  for (const auto& e : d.edges()) {
    touched[e.a] = touched[e.b] = true;
    os << d.ids()[e.a];
    if (e.dotted()) {
      std::ostringstream w;
      w.precision(6);
      w << e.weight;
      os << " ..(" << w.str() << ").. ";
    } else if (e.label == kInf) {
      os << " --∞-- ";
    } else if (e.label == 3) {
      os << " ----- ";
    } else {
      os << " --" << e.label << "-- ";
    }
    os << d.ids()[e.b] << "\n";
  }
  for (int i = 0; i < d.size(); ++i)
    if (!touched[i]) os << d.ids()[i] << "\n";
  return os.str();
}

}  // namespace refl
