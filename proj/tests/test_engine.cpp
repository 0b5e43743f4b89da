#include "doctest.h"

#include <cmath>
#include <map>
#include <random>
#include <set>

#include "refl/engine.hpp"

using namespace refl;

namespace {

// Reflection matrices in the simple-root basis, built from the Gram matrix
// alone: s_r(x) = x - 2 B(r, x) r.
Eigen::MatrixXd reflection_oracle(const Eigen::MatrixXd& g, const Eigen::VectorXd& r) {
  return Eigen::MatrixXd::Identity(g.rows(), g.rows()) - 2.0 * r * (g * r).transpose() / r.dot(g * r);
}

std::vector<long long> matrix_key(const Eigen::MatrixXd& m) {
  std::vector<long long> k;
  for (Eigen::Index i = 0; i < m.size(); ++i) k.push_back(std::llround(m.data()[i] * 1e5));
  return k;
}

// Closure of a matrix set under multiplication by the generators.
std::set<std::vector<long long>> closure(const std::vector<Eigen::MatrixXd>& gens, std::size_t cap = 100000) {
  const Eigen::Index n = gens.front().rows();
  std::set<std::vector<long long>> seen{matrix_key(Eigen::MatrixXd::Identity(n, n))};
  std::vector<Eigen::MatrixXd> queue{Eigen::MatrixXd::Identity(n, n)};
  for (std::size_t q = 0; q < queue.size() && seen.size() < cap; ++q)
    for (const auto& s : gens) {
      Eigen::MatrixXd x = queue[q] * s;
      if (seen.insert(matrix_key(x)).second) queue.push_back(std::move(x));
    }
  return seen;
}

// Number of distinct elements of word length <= depth, by brute-force word listing.
std::size_t word_ball(const CoxeterMatrix& m, int depth) {
  const Eigen::MatrixXd g = gram_from_coxeter(m);
  const int n = m.rank();
  std::vector<Eigen::MatrixXd> gens;
  for (int i = 0; i < n; ++i) gens.push_back(reflection_oracle(g, Eigen::VectorXd::Unit(n, i)));
  std::set<std::vector<long long>> seen;
  std::vector<Eigen::MatrixXd> layer{Eigen::MatrixXd::Identity(n, n)};
  seen.insert(matrix_key(layer[0]));
  for (int d = 0; d < depth; ++d) {
    std::vector<Eigen::MatrixXd> next;
    for (const auto& w : layer)
      for (const auto& s : gens) next.push_back(w * s);
    for (const auto& w : next) seen.insert(matrix_key(w));
    layer = std::move(next);
  }
  return seen.size();
}

// All reflections of a finite group: conjugates of simple reflections.
std::vector<Eigen::VectorXd> all_positive_roots(const CoxeterMatrix& m) {
  const Eigen::MatrixXd g = gram_from_coxeter(m);
  const int n = m.rank();
  std::vector<Eigen::VectorXd> roots;
  for (int i = 0; i < n; ++i) roots.push_back(Eigen::VectorXd::Unit(n, i));
  for (std::size_t a = 0; a < roots.size(); ++a)
    for (int i = 0; i < n; ++i) {
      Eigen::VectorXd r = reflection_oracle(g, Eigen::VectorXd::Unit(n, i)) * roots[a];
      if (r.sum() < 0) r = -r;
      bool known = false;
      for (const auto& x : roots) known = known || (x - r).norm() < 1e-6;
      if (!known) roots.push_back(r);
    }
  return roots;
}

}  // namespace

TEST_SUITE("engine") {
  TEST_CASE("generators are involutions preserving the form and the braid relations") {
    for (const auto& m : {CoxeterMatrix::triangle(2, 3, 7), CoxeterMatrix::triangle(3, 3, 3),
                          CoxeterMatrix::triangle(kInf, 3, 4)}) {
      const Representation rep(m);
      const int n = rep.rank();
      for (int i = 0; i < n; ++i) {
        const Eigen::MatrixXd& s = rep.generator(i);
        CHECK((s * s - Eigen::MatrixXd::Identity(n, n)).norm() < 1e-12);
        CHECK((s.transpose() * rep.gram() * s - rep.gram()).norm() < 1e-12);
        CHECK((s - reflection_oracle(rep.gram(), rep.simple_root(i))).norm() < 1e-12);
        for (int j = i + 1; j < n; ++j) {
          if (m.infinite(i, j)) continue;
          Eigen::MatrixXd p = Eigen::MatrixXd::Identity(n, n);
          for (int k = 0; k < m(i, j); ++k) p = p * s * rep.generator(j);
          CHECK((p - Eigen::MatrixXd::Identity(n, n)).norm() < 1e-9);
        }
      }
    }
  }

  TEST_CASE("element inverse and key") {
    const Representation rep(CoxeterMatrix::triangle(2, 3, 7));
    const GroupElement w = rep.element({0, 1, 2, 1, 0, 2});
    CHECK((w.matrix * w.inverse - Eigen::MatrixXd::Identity(3, 3)).norm() < 1e-9);
    CHECK(rep.element({0, 0}).key == rep.identity().key);
    CHECK(rep.element({0, 2, 0, 2, 0, 2, 0, 2, 0, 2, 0, 2, 0, 2}).key == rep.identity().key);
    CHECK(rep.element({1, 2}).key != rep.element({2, 1}).key);
  }

  TEST_CASE("ball sizes match word listing") {
    for (const auto& m : {CoxeterMatrix::triangle(2, 3, 7), CoxeterMatrix::triangle(3, 3, 3),
                          CoxeterMatrix::triangle(2, 4, 5), CoxeterMatrix::triangle(kInf, kInf, kInf)}) {
      for (int depth = 0; depth <= 6; ++depth) {
        const ChamberSet cs = chamber_bfs(m, depth, 100000);
        CHECK(static_cast<std::size_t>(cs.size()) == word_ball(m, depth));
        CHECK_FALSE(cs.exceeded);
      }
    }
    CHECK(chamber_bfs(CoxeterMatrix::triangle(2, 3, 7), 0, 10).size() == 1);
    CHECK(chamber_bfs(CoxeterMatrix::triangle(2, 3, 7), 1, 10).size() == 4);
    CHECK(chamber_bfs(CoxeterMatrix::triangle(2, 3, 7), 2, 10).size() == 9);
    const ChamberSet capped = chamber_bfs(CoxeterMatrix::triangle(2, 3, 7), 20, 50);
    CHECK(capped.exceeded);
    CHECK(capped.size() <= 50);
  }

  TEST_CASE("finite group orders") {
    CHECK(chamber_bfs(CoxeterMatrix::triangle(3, 3, 2), 30, 1000).size() == 24);
    CHECK(chamber_bfs(CoxeterMatrix::triangle(4, 3, 2), 30, 1000).size() == 48);
    CHECK(chamber_bfs(CoxeterMatrix::triangle(5, 3, 2), 30, 1000).size() == 120);
  }

  TEST_CASE("neighbor table is symmetric") {
    const ChamberSet cs = chamber_bfs(CoxeterMatrix::triangle(2, 3, 8), 5, 10000);
    for (int c = 0; c < cs.size(); ++c)
      for (int i = 0; i < 3; ++i) {
        const int d = cs.neighbors[c][i];
        if (d >= 0) CHECK(cs.neighbors[d][i] == c);
      }
  }

  TEST_CASE("root helpers") {
    const Representation rep(CoxeterMatrix::triangle(2, 3, 7));
    const Root a = rep.simple_root(0), b = rep.simple_root(2);
    const Root r = reflect_root(rep.gram(), a, b);
    CHECK(rep.form(r, r) == doctest::Approx(1.0));
    CHECK(root_sign(r) == 1);
    CHECK(root_sign(-r) == -1);
    CHECK(root_sign(a - b) == 0);
    CHECK(same_root(normalize_root(rep.gram(), -3.0 * r), r));
    CHECK(root_key(r) == root_key(r + Root::Constant(3, 1e-9)));
  }

  TEST_CASE("root words recover random roots") {
    const Representation rep(CoxeterMatrix::triangle(2, 3, 8));
    std::mt19937 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<int> word;
      const int len = static_cast<int>(rng() % 10);
      for (int k = 0; k < len; ++k) word.push_back(static_cast<int>(rng() % 3));
      const int i = static_cast<int>(rng() % 3);
      const Root r = normalize_root(rep.gram(), rep.element(word).matrix * rep.simple_root(i));
      const auto found = root_word(rep, r);
      REQUIRE(found);
      const Root back = rep.element(found->first).matrix * rep.simple_root(found->second);
      CHECK(same_root(normalize_root(rep.gram(), back), r));
    }
    CHECK_FALSE(root_word(rep, normalize_root(rep.gram(), Root::Constant(3, 1.0) + Root::Unit(3, 0) * 0.1)));
  }

  TEST_CASE("subgroup roots reject non-reflections") {
    const Representation rep(CoxeterMatrix::triangle(2, 3, 7));
    CHECK_THROWS_AS(spec_roots(rep, SubgroupSpec::from_words({{0, 1}})), Error);
    CHECK_THROWS_AS(spec_roots(rep, SubgroupSpec::from_words({{3}})), Error);
    const auto roots = spec_roots(rep, SubgroupSpec::from_words({{0, 2, 0}}));
    REQUIRE(roots.size() == 1);
    CHECK(same_root(roots[0], normalize_root(rep.gram(), reflect_root(rep.gram(), rep.simple_root(2), rep.simple_root(0)))));
  }

  TEST_CASE("subgroup index equals order ratio in finite groups") {
    std::mt19937 rng(5);
    for (const auto& m : {CoxeterMatrix::triangle(3, 3, 2), CoxeterMatrix::triangle(4, 3, 2), CoxeterMatrix::triangle(5, 3, 2)}) {
      const Representation rep(m);
      const Eigen::MatrixXd g = gram_from_coxeter(m);
      const auto roots = all_positive_roots(m);
      const std::size_t order = closure({rep.generator(0), rep.generator(1), rep.generator(2)}).size();
      for (int trial = 0; trial < 25; ++trial) {
        std::vector<Root> pick;
        std::vector<Eigen::MatrixXd> mats;
        const int k = 1 + static_cast<int>(rng() % 3);
        for (int j = 0; j < k; ++j) {
          const auto& r = roots[rng() % roots.size()];
          pick.push_back(normalize_root(g, r));
          mats.push_back(reflection_oracle(g, r));
        }
        const std::size_t sub = closure(mats).size();
        const CanonicalSystem cs = canonical_generators(rep, pick);
        CHECK(cs.well_formed(rep.gram()));
        const SubgroupChamber sc = subgroup_chamber(rep, cs, Bounds{8, 100000, 1000});
        CHECK(static_cast<std::size_t>(sc.index) * sub == order);
        CHECK(sc.facet_count == static_cast<int>(cs.roots.size()));
      }
    }
  }

  TEST_CASE("canonical generators ignore order and duplicates") {
    const Representation rep(CoxeterMatrix::triangle(2, 3, 8));
    std::vector<std::vector<int>> words{{1}, {2}, {0, 2, 0}, {2, 0, 2, 0, 2}, {0, 1, 0}};
    std::mt19937 rng(9);
    std::optional<CanonicalSystem> first;
    for (int trial = 0; trial < 10; ++trial) {
      std::shuffle(words.begin(), words.end(), rng);
      auto w = words;
      w.push_back(words[0]);
      const CanonicalSystem cs = canonical_generators(rep, spec_roots(rep, SubgroupSpec::from_words(w)));
      CHECK(cs.well_formed(rep.gram()));
      if (!first) {
        first = cs;
        continue;
      }
      REQUIRE(cs.roots.size() == first->roots.size());
      for (std::size_t i = 0; i < cs.roots.size(); ++i) CHECK(same_root(cs.roots[i], first->roots[i]));
    }
  }

  TEST_CASE("canonical generators are idempotent") {
    const Representation rep(CoxeterMatrix::triangle(2, 4, 5));
    const auto cs = canonical_generators(rep, spec_roots(rep, SubgroupSpec::from_words({{0}, {1, 2, 1}, {2, 0, 2}})));
    const auto again = canonical_generators(rep, cs.roots);
    REQUIRE(again.roots.size() == cs.roots.size());
    for (std::size_t i = 0; i < cs.roots.size(); ++i) CHECK(same_root(again.roots[i], cs.roots[i]));
  }

  TEST_CASE("non-discrete pair") {
    const Representation rep(CoxeterMatrix::triangle(2, 3, 7));
    // alpha_0 and alpha_1 are orthogonal; b sits at angle 1.2 radians from alpha_0.
    const Root a = Root::Unit(3, 0);
    const Root b = std::cos(1.2) * a + std::sin(1.2) * Root::Unit(3, 1);
    CHECK(rep.form(b, b) == doctest::Approx(1.0));
    try {
      canonical_generators(rep, {a, b});
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NonDiscretePair);
    }
  }

  TEST_CASE("doubling of (2,3,8)") {
    const CoxeterMatrix m = CoxeterMatrix::triangle(2, 3, 8);
    const SubgroupChamber sc = subgroup_chamber(m, SubgroupSpec::from_words({{1}, {2}, {0, 2, 0}}));
    CHECK(sc.index == 2);
    CHECK(sc.facet_count == 3);
    const TheoremVerdict v = theorem_check(m, SubgroupSpec::from_words({{1}, {2}, {0, 2, 0}}));
    CHECK(v.k_f == 3);
    CHECK(v.k_p == 3);
    CHECK(v.index == 2);
    CHECK(v.finite_volume);
    CHECK(v.holds);
  }

  TEST_CASE("infinite index hits the bound") {
    const CoxeterMatrix m = CoxeterMatrix::triangle(2, 3, 7);
    CHECK_THROWS_AS(subgroup_chamber(m, SubgroupSpec::from_words({{0}, {1}}), Bounds{8, 100000, 200}), Error);
    try {
      subgroup_chamber(m, SubgroupSpec::from_words({{0}, {1}}), Bounds{8, 100000, 200});
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::IndexBoundExceeded);
    }
  }

  TEST_CASE("subgroup chamber realization matches closed-form area") {
    const CoxeterMatrix m = CoxeterMatrix::triangle(2, 4, 4);
    const Polytope f = realize_fundamental(m);
    const SubgroupSpec h = SubgroupSpec::from_words({{0}, {1, 2, 0, 2, 1}, {1, 2, 1, 2, 0, 2, 1, 2, 1}, {2, 1, 0, 1, 2}});
    const SubgroupChamber sc = subgroup_chamber(m, h);
    const Polytope p = realize_subgroup_chamber(f, sc.system);
    CHECK(p.facet_count() == sc.facet_count);
    CHECK(area2(p) == doctest::Approx(sc.index * area2(f)).epsilon(1e-9));
    const Tiling t = build_tiling(f, sc.chambers);
    CHECK(static_cast<int>(t.tiles.size()) == sc.index);
    const DecompositionReport r = verify_decomposition(p, f, t);
    CHECK(r.pass());
    CHECK(r.area_residual < 1e-9);
    const auto mirrors = mirrors_of_decomposition(p, t);
    const auto fund = fundamental_angles(p, mirrors);
    CHECK(fund.size() == p.vertices().size());
  }

  TEST_CASE("finite covolume by diagram") {
    CHECK(finite_covolume_by_diagram(CoxeterMatrix::triangle(2, 3, 7)));
    CHECK(finite_covolume_by_diagram(CoxeterMatrix::triangle(kInf, kInf, kInf)));
    CHECK_FALSE(finite_covolume_by_diagram(CoxeterMatrix({{1, 0, 2}, {0, 1, 2}, {2, 2, 1}}, {{{0, 1}, -1.5}})));
    const CoxeterMatrix t({{1, 5, 2, 2}, {5, 1, 3, 2}, {2, 3, 1, 5}, {2, 2, 5, 1}});
    CHECK(finite_covolume_by_diagram(t));
    CHECK(realize_fundamental(t).facet_count() == 4);
  }
}
