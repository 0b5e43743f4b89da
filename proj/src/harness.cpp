#include "refl/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <thread>

#include "refl/io.hpp"

namespace refl {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Runs fn(0..n-1) on up to `jobs` threads; fn writes into its own slot.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
  const auto workers = static_cast<std::size_t>(std::clamp(jobs, 1, 256));
  if (workers == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < std::min(workers, n); ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  for (auto& t : pool) t.join();
}

std::vector<int> reflection_word(const std::vector<int>& w, int i) {
  std::vector<int> out = w;
  out.push_back(i);
  out.insert(out.end(), w.rbegin(), w.rend());
  return out;
}

ElementKey system_key(const CanonicalSystem& s) {
  ElementKey key;
  for (const auto& r : s.roots) {
    const ElementKey k = root_key(r);
    key.insert(key.end(), k.begin(), k.end());
  }
  return key;
}

std::string case_input(const CoxeterMatrix& m, const std::vector<std::vector<int>>& words) {
  return Json{{"group", to_json(m)}, {"subgroup", to_json(SubgroupSpec::from_words(words))}}.dump();
}

std::string polygon_input(const Polytope& p, const Hyperplane& line) {
  Json cut{{"normal", std::vector<double>(line.normal.begin(), line.normal.end())}};
  if (!p.space().hyperbolic()) cut["offset"] = line.offset;
  return Json{{"polytope", halfspaces_json(p)}, {"line", cut}}.dump();
}

struct SystemCase {
  CanonicalSystem system;
  std::vector<std::vector<int>> generators;
};

}  // namespace

// ---------------------------------------------------------------------------
// Theorem corpus

Corpus Corpus::default_corpus() {
  Corpus c;
  for (auto [p, q, r] : {std::array{3, 3, 3}, std::array{2, 4, 4}, std::array{2, 3, 6}, std::array{2, 3, 7},
                         std::array{2, 3, 8}, std::array{2, 4, 5}})
    c.groups.push_back({"(" + std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(r) + ")",
                        CoxeterMatrix::triangle(p, q, r)});
  c.bounds.max_depth = 8;
  c.bounds.max_index = 48;
  return c;
}

Enumeration enumerate_subgroups(const Corpus& c) {
  Enumeration out;
  for (const auto& g : c.groups) {
    const Representation rep(g.matrix, c.tol);
    const ChamberSet conj = chamber_bfs(g.matrix, c.bounds.max_depth / 2, c.bounds.max_chambers, c.tol);
    std::vector<Root> roots;
    std::vector<std::vector<int>> words;
    std::map<ElementKey, int> seen;
    for (const auto& w : conj.chambers)
      for (int i = 0; i < rep.rank(); ++i) {
        const Root r = normalize_root(rep.gram(), w.matrix.col(i));
        if (seen.emplace(root_key(r), static_cast<int>(roots.size())).second) {
          roots.push_back(r);
          words.push_back(reflection_word(w.word, i));
        }
      }

    std::vector<std::vector<int>> subsets;
    const int n = static_cast<int>(roots.size());
    std::vector<int> pick;
    std::function<void(int)> grow = [&](int from) {
      if (!pick.empty()) subsets.push_back(pick);
      if (static_cast<int>(pick.size()) == c.max_subset) return;
      for (int k = from; k < n; ++k) {
        pick.push_back(k);
        grow(k + 1);
        pick.pop_back();
      }
    };
    grow(0);
    out.subsets += static_cast<long>(subsets.size());

    std::vector<std::optional<CanonicalSystem>> systems(subsets.size());
    parallel_for(subsets.size(), c.jobs, [&](std::size_t s) {
      std::vector<Root> rs;
      for (int k : subsets[s]) rs.push_back(roots[k]);
      try {
        systems[s] = canonical_generators(rep, rs);
      } catch (const Error&) {
      }
    });
    std::map<ElementKey, std::size_t> first;
    std::vector<SystemCase> unique;
    for (std::size_t s = 0; s < subsets.size(); ++s) {
      if (!systems[s]) continue;
      if (!first.emplace(system_key(*systems[s]), unique.size()).second) continue;
      SystemCase sc{*systems[s], {}};
      for (int k : subsets[s]) sc.generators.push_back(words[k]);
      unique.push_back(std::move(sc));
    }
    out.distinct_systems += static_cast<long>(unique.size());

    const Polytope f = realize_fundamental(g.matrix, c.tol);
    const double area_f = f.finite_volume() ? area2(f, c.tol) : 0.0;
    std::vector<std::optional<CorpusEntry>> entries(unique.size());
    std::vector<std::string> errors(unique.size());
    parallel_for(unique.size(), c.jobs, [&](std::size_t u) {
      try {
        const SubgroupChamber sc = subgroup_chamber(rep, unique[u].system, c.bounds);
        CorpusEntry e{g.name, g.matrix, unique[u].generators, sc.system, sc.index, sc.facet_count,
                      theorem_check(rep, sc, f), 0.0};
        if (e.verdict.finite_volume && f.finite_volume()) {
          const Polytope p = realize_subgroup_chamber(f, sc.system, c.tol);
          e.area_residual = std::abs(area2(p, c.tol) - sc.index * area_f);
        }
        entries[u] = std::move(e);
      } catch (const Error& err) {
        if (err.code() != ErrorCode::IndexBoundExceeded) errors[u] = err.what();
      }
    });
    for (std::size_t u = 0; u < unique.size(); ++u) {
      if (entries[u])
        out.entries.push_back(std::move(*entries[u]));
      else if (errors[u].empty())
        ++out.skipped_bound;
      else
        out.errors.push_back({g.name, errors[u], case_input(g.matrix, unique[u].generators)});
    }
  }
  return out;
}

SuiteReport enumerate_and_verify(const Corpus& c) {
  const auto t0 = Clock::now();
  SuiteReport rep;
  rep.suite = "theorem";
  const Enumeration en = enumerate_subgroups(c);
  long finite = 0, matches = 0;
  rep.violations = en.errors;
  for (std::size_t k = 0; k < en.entries.size(); ++k) {
    const CorpusEntry& e = en.entries[k];
    ++rep.cases;
    const std::string id = e.group + " #" + std::to_string(k);
    const std::string input = case_input(e.matrix, e.generators);
    const Representation r(e.matrix, c.tol);
    if (!e.system.well_formed(r.gram(), c.tol)) rep.violations.push_back({id, "canonical system violates the pairwise condition", input});
    if (static_cast<int>(e.system.roots.size()) == e.facet_count)
      ++matches;
    else
      rep.violations.push_back({id, "canonical roots " + std::to_string(e.system.roots.size()) +
                                        " != chamber facets " + std::to_string(e.facet_count), input});
    if (e.verdict.finite_volume) {
      ++finite;
      if (!e.verdict.holds)
        rep.violations.push_back({id, "k_P = " + std::to_string(e.verdict.k_p) + " < k_F = " + std::to_string(e.verdict.k_f), input});
      if (e.area_residual > 1e-9)
        rep.violations.push_back({id, "area residual " + std::to_string(e.area_residual), input});
    } else if (!e.verdict.holds) {
      rep.expected.push_back({id, "infinite covolume, k_P < k_F", input});
    }
  }
  rep.counters["groups"] = static_cast<long>(c.groups.size());
  rep.counters["subsets"] = en.subsets;
  rep.counters["distinct_systems"] = en.distinct_systems;
  rep.counters["entries"] = static_cast<long>(en.entries.size());
  rep.counters["finite_covolume_entries"] = finite;
  rep.counters["skipped_bound"] = en.skipped_bound;
  rep.counters["cross_check_matches"] = matches;
  rep.wall_clock = seconds_since(t0);
  return rep;
}

// ---------------------------------------------------------------------------
// Polygons and splitting lines

CoxeterMatrix half_strip_group(bool hyperbolic, double distance) {
  std::map<std::pair<int, int>, double> w;
  if (hyperbolic) w[{0, 1}] = -std::cosh(distance);
  return CoxeterMatrix({{1, kInf, 2}, {kInf, 1, 2}, {2, 2, 1}}, w);
}

std::vector<NamedPolygon> polygon_corpus(bool strips, const Tolerances& tol) {
  std::vector<NamedPolygon> out;
  for (const auto& g : Corpus::default_corpus().groups) out.push_back({g.name, realize_triangle(g.matrix, tol)});
  const Space e2{SpaceKind::Euclidean, 2}, h2{SpaceKind::Hyperbolic, 2};
  auto box = [&](double w, double h) {
    return Polytope::from_halfspaces(e2, {Hyperplane::euclidean(Eigen::Vector2d(-1, 0), 0), Hyperplane::euclidean(Eigen::Vector2d(1, 0), w),
                                          Hyperplane::euclidean(Eigen::Vector2d(0, -1), 0), Hyperplane::euclidean(Eigen::Vector2d(0, 1), h)},
                                     tol);
  };
  out.push_back({"square", box(1.0, 1.0)});
  out.push_back({"rectangle", box(2.0, 1.0)});
  out.push_back({"right-angled pentagon", regular_hyperbolic_polygon(5, kPi / 2, tol)});
  const double d = 1.0, w = std::cosh(d) / (2.0 * std::sinh(d));
  out.push_back({"Lambert quadrilateral",
                 Polytope::from_halfspaces(h2,
                                           {Hyperplane::hyperbolic(Eigen::Vector3d(1, 0, 0)), Hyperplane::hyperbolic(Eigen::Vector3d(0, 1, 0)),
                                            Hyperplane::hyperbolic(Eigen::Vector3d(-std::cosh(d), 0, std::sinh(d))),
                                            Hyperplane::hyperbolic(Eigen::Vector3d(-0.5, -std::sqrt(0.75 + w * w), w))},
                                           tol)});
  if (strips) {
    out.push_back({"E2 strip", Polytope::from_halfspaces(e2, {Hyperplane::euclidean(Eigen::Vector2d(0, -1), 0),
                                                              Hyperplane::euclidean(Eigen::Vector2d(0, 1), 1)},
                                                         tol)});
    const Polytope hs = realize_triangle(half_strip_group(true), tol);
    out.push_back({"H2 strip", Polytope::from_halfspaces(h2, {hs.facets()[0], hs.facets()[1]}, tol)});
  }
  return out;
}

std::vector<Hyperplane> splitting_lines(const Polytope& p, int samples) {
  const Space& s = p.space();
  if (s.dim != 2) throw Error(ErrorCode::Unsupported, "splitting lines need dim 2");
  std::vector<std::pair<int, Eigen::Vector2d>> pts;
  for (std::size_t k = 0; k < p.segments().size(); ++k) {
    const auto& sg = p.segments()[k];
    for (int j = 0; j < samples; ++j)
      pts.push_back({static_cast<int>(k), sg.start + (sg.end - sg.start) * (static_cast<double>(j) / samples)});
  }
  std::vector<Hyperplane> out;
  std::map<ElementKey, bool> seen;
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      if (pts[a].first == pts[b].first || (pts[a].second - pts[b].second).norm() < 1e-9) continue;
      const Eigen::VectorXd xa = model_point(s, pts[a].second), xb = model_point(s, pts[b].second);
      if (std::ranges::any_of(p.facets(), [&](const Hyperplane& f) {
            return std::abs(f.value(s, xa)) < 1e-9 && std::abs(f.value(s, xb)) < 1e-9;
          }))
        continue;
      Hyperplane h;
      try {
        h = line_through(s, pts[a].second, pts[b].second);
      } catch (const Error&) {
        continue;
      }
      Eigen::VectorXd v(s.coords() + 1);
      v << h.normal, h.offset;
      Eigen::Index lead = 0;
      v.cwiseAbs().maxCoeff(&lead);
      if (v(lead) < 0) v = -v;
      if (!seen.emplace(root_key(v, 1e-9), true).second) continue;
      out.push_back(h);
    }
  return out;
}

namespace {

struct SplitCase {
  std::size_t polygon;
  Hyperplane line;
};

std::vector<SplitCase> split_cases(const std::vector<NamedPolygon>& polygons) {
  std::vector<SplitCase> out;
  for (std::size_t k = 0; k < polygons.size(); ++k)
    for (auto& h : splitting_lines(polygons[k].polytope)) out.push_back({k, std::move(h)});
  return out;
}

}  // namespace

SuiteReport lemma1_suite(const std::vector<NamedPolygon>& polygons, const Tolerances& tol, int jobs) {
  const auto t0 = Clock::now();
  SuiteReport rep;
  rep.suite = "lemma1";
  const auto cases = split_cases(polygons);
  struct Outcome {
    bool split = false, both = false, meets_all_coxeter = false;
    std::vector<std::string> failures;
  };
  std::vector<Outcome> outs(cases.size());
  parallel_for(cases.size(), jobs, [&](std::size_t i) {
    const Polytope& p = polygons[cases[i].polygon].polytope;
    Outcome& o = outs[i];
    std::optional<Split> sp;
    try {
      sp = split_by_hyperplane(p, cases[i].line, tol);
    } catch (const Error&) {
      return;
    }
    o.split = true;
    const int k = p.facet_count();
    o.both = sp->first.facet_count() >= k + 1 && sp->second.facet_count() >= k + 1;
    const bool p1_coxeter = is_coxeter_polytope(sp->first, tol);
    if (o.both) {
      if (!sp->meets_every_facet_interior) o.failures.push_back("both parts have k+1 facets but the line misses a facet interior");
      if (p1_coxeter && !is_coxeter_polytope(p, tol)) o.failures.push_back("P1 is Coxeter but P is not");
    }
    if (sp->meets_every_facet_interior && p1_coxeter) {
      o.meets_all_coxeter = true;
      if (!is_coxeter_polytope(p, tol)) o.failures.push_back("line meets every facet, P1 Coxeter, P not Coxeter");
    }
  });
  long both = 0, coxeter = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    if (!outs[i].split) continue;
    ++rep.cases;
    both += outs[i].both;
    coxeter += outs[i].meets_all_coxeter;
    for (const auto& f : outs[i].failures)
      rep.violations.push_back({polygons[cases[i].polygon].name, f, polygon_input(polygons[cases[i].polygon].polytope, cases[i].line)});
  }
  rep.counters["polygons"] = static_cast<long>(polygons.size());
  rep.counters["lines"] = static_cast<long>(cases.size());
  rep.counters["hypothesis_k_plus_1"] = both;
  rep.counters["hypothesis_coxeter_meets_all"] = coxeter;
  rep.wall_clock = seconds_since(t0);
  return rep;
}

SuiteReport lemma3_suite(const std::vector<NamedPolygon>& polygons, const Tolerances& tol, int jobs) {
  const auto t0 = Clock::now();
  SuiteReport rep;
  rep.suite = "lemma3";
  const auto cases = split_cases(polygons);
  enum class Result { NoSplit, Outside, Holds, Acute };
  std::vector<Result> outs(cases.size(), Result::NoSplit);
  parallel_for(cases.size(), jobs, [&](std::size_t i) {
    const Polytope& p = polygons[cases[i].polygon].polytope;
    std::optional<Split> sp;
    try {
      sp = split_by_hyperplane(p, cases[i].line, tol);
    } catch (const Error&) {
      return;
    }
    if (!sp->meets_every_facet_interior || sp->contains_vertex) {
      outs[i] = Result::Outside;
      return;
    }
    outs[i] = is_acute_angled(sp->first, tol) || is_acute_angled(sp->second, tol) ? Result::Acute : Result::Holds;
  });
  long hyp_finite = 0, hyp_infinite = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    if (outs[i] == Result::NoSplit) continue;
    ++rep.cases;
    if (outs[i] == Result::Outside) continue;
    const auto& poly = polygons[cases[i].polygon];
    const bool finite = poly.polytope.finite_volume();
    (finite ? hyp_finite : hyp_infinite)++;
    if (outs[i] != Result::Acute) continue;
    Violation v{poly.name, "a part is acute-angled", polygon_input(poly.polytope, cases[i].line)};
    if (finite)
      rep.violations.push_back(std::move(v));
    else
      rep.expected.push_back(std::move(v));
  }
  rep.counters["polygons"] = static_cast<long>(polygons.size());
  rep.counters["lines"] = static_cast<long>(cases.size());
  rep.counters["hypothesis_finite_volume"] = hyp_finite;
  rep.counters["hypothesis_infinite_volume"] = hyp_infinite;
  rep.wall_clock = seconds_since(t0);
  return rep;
}

// ---------------------------------------------------------------------------
// Diagram suite

SuiteReport lemma2_suite(int max_rank, const Tolerances& tol) {
  if (max_rank < 1 || max_rank > 8) throw input_error("lemma2 max rank must be in [1, 8]");
  const auto t0 = Clock::now();
  SuiteReport rep;
  rep.suite = "lemma2";
  const auto unions = enumerate_parabolic_unions(max_rank);
  const auto names = enumerate_parabolic_union_names(max_rank);
  long nodes = 0, parabolic_cases = 0, elliptic_cases = 0;
  for (std::size_t k = 0; k < unions.size(); ++k) {
    const auto& d = unions[k];
    nodes += d.size();
    std::string label;
    for (const auto& n : names[k]) label += (label.empty() ? "" : " + ") + n;
    for (int v = 0; v < d.size(); ++v) {
      ++parabolic_cases;
      const DiagramClass c = classify_diagram(remove_node(d, d.ids()[v]), tol);
      if (c.kind == DiagramKind::ParabolicUnion)
        rep.violations.push_back({label + " minus node " + std::to_string(v), "still a parabolic union",
                                  Json{{"diagram", diagram_json(d)}, {"removed", v}}.dump()});
    }
  }
  for (const auto& e : elliptic_table(max_rank, 12)) {
    for (int v = 0; v < e.diagram.size(); ++v) {
      ++elliptic_cases;
      const DiagramClass c = classify_diagram(remove_node(e.diagram, e.diagram.ids()[v]), tol);
      if (c.kind != DiagramKind::Elliptic)
        rep.violations.push_back({e.name + " minus node " + std::to_string(v), "not elliptic",
                                  Json{{"diagram", diagram_json(e.diagram)}, {"removed", v}}.dump()});
    }
  }
  rep.cases = static_cast<int>(parabolic_cases + elliptic_cases);
  rep.counters["parabolic_unions"] = static_cast<long>(unions.size());
  rep.counters["parabolic_node_total"] = nodes;
  rep.counters["parabolic_cases"] = parabolic_cases;
  rep.counters["elliptic_cases"] = elliptic_cases;
  rep.wall_clock = seconds_since(t0);
  return rep;
}

// ---------------------------------------------------------------------------
// Infinite-volume regression

SuiteReport remark2_regression(const Tolerances& tol) {
  const auto t0 = Clock::now();
  SuiteReport rep;
  rep.suite = "remark2";
  const std::vector<std::vector<int>> strip{{0}, {1}};
  for (bool hyperbolic : {false, true}) {
    const CoxeterMatrix m = half_strip_group(hyperbolic);
    const std::string id = hyperbolic ? "H2 strip" : "E2 strip";
    const std::string input = case_input(m, strip);
    ++rep.cases;
    try {
      const TheoremVerdict v = theorem_check(m, SubgroupSpec::from_words(strip), {}, tol);
      const std::string got = Json(to_json(v)).dump();
      if (v.holds || v.finite_volume || v.k_f != 3 || v.k_p != 2)
        rep.violations.push_back({id, "expected k_F = 3, k_P = 2, holds = false, finite_volume = false; got " + got, input});
      else
        rep.expected.push_back({id, "infinite volume, k_P < k_F: " + got, input});
    } catch (const Error& e) {
      rep.violations.push_back({id, e.what(), input});
    }
  }
  // Rectangle [0,2]x[0,1] cut by its mid-line into two unit squares.
  const CoxeterMatrix sq({{1, kInf, 2, 2}, {kInf, 1, 2, 2}, {2, 2, 1, kInf}, {2, 2, kInf, 1}});
  const Space e2{SpaceKind::Euclidean, 2};
  const Polytope f = Polytope::from_halfspaces(
      e2, {Hyperplane::euclidean(Eigen::Vector2d(-1, 0), 0), Hyperplane::euclidean(Eigen::Vector2d(1, 0), 1),
           Hyperplane::euclidean(Eigen::Vector2d(0, -1), 0), Hyperplane::euclidean(Eigen::Vector2d(0, 1), 1)},
      tol);
  const std::vector<std::vector<int>> rect{{0}, {1, 0, 1}, {2}, {3}};
  ++rep.cases;
  try {
    const TheoremVerdict v = theorem_check(sq, SubgroupSpec::from_words(rect), {}, tol, f);
    if (!v.holds || !v.finite_volume || v.k_p != 4 || v.index != 2)
      rep.violations.push_back({"rectangle", "expected index 2, k_P = 4, holds = true; got " + Json(to_json(v)).dump(),
                                case_input(sq, rect)});
  } catch (const Error& e) {
    rep.violations.push_back({"rectangle", e.what(), case_input(sq, rect)});
  }
  rep.wall_clock = seconds_since(t0);
  return rep;
}

}  // namespace refl
