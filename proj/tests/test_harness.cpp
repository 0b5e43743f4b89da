#include "doctest.h"

#include <cmath>
#include <set>

#include "refl/harness.hpp"

using namespace refl;

namespace {

Corpus small_corpus(int jobs) {
  Corpus c;
  c.groups = {{"(2,3,8)", CoxeterMatrix::triangle(2, 3, 8)}, {"(3,3,3)", CoxeterMatrix::triangle(3, 3, 3)}};
  c.bounds = Bounds{4, 100000, 24};
  c.max_subset = 3;
  c.jobs = jobs;
  return c;
}

}  // namespace

TEST_SUITE("harness") {
  TEST_CASE("default corpus") {
    const Corpus c = Corpus::default_corpus();
    CHECK(c.groups.size() == 6);
    CHECK(c.bounds.max_depth == 8);
    CHECK(c.bounds.max_index == 48);
    std::set<std::string> names;
    for (const auto& g : c.groups) names.insert(g.name);
    CHECK(names.count("(2,3,7)") == 1);
    CHECK(names.count("(3,3,3)") == 1);
  }

  TEST_CASE("enumeration entries satisfy their own invariants") {
    const Enumeration en = enumerate_subgroups(small_corpus(1));
    CHECK(en.errors.empty());
    CHECK(!en.entries.empty());
    CHECK(en.distinct_systems >= static_cast<long>(en.entries.size()));
    for (const auto& e : en.entries) {
      CHECK(e.system.well_formed(gram_from_coxeter(e.matrix)));
      CHECK(e.index >= 1);
      CHECK(e.index <= 24);
      CHECK(e.facet_count == static_cast<int>(e.system.roots.size()));
      if (e.verdict.finite_volume) {
        CHECK(e.verdict.holds);
        CHECK(e.area_residual <= 1e-9);
      }
    }
  }

  TEST_CASE("parallel enumeration is deterministic") {
    const Enumeration a = enumerate_subgroups(small_corpus(1));
    const Enumeration b = enumerate_subgroups(small_corpus(4));
    REQUIRE(a.entries.size() == b.entries.size());
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
      CHECK(a.entries[i].group == b.entries[i].group);
      CHECK(a.entries[i].index == b.entries[i].index);
      CHECK(a.entries[i].verdict == b.entries[i].verdict);
    }
    CHECK(a.skipped_bound == b.skipped_bound);
  }

  TEST_CASE("theorem suite on a small corpus") {
    const SuiteReport r = enumerate_and_verify(small_corpus(2));
    CHECK(r.suite == "theorem");
    CHECK(r.pass());
    CHECK(r.counters.at("finite_covolume_entries") == r.counters.at("cross_check_matches"));
    CHECK(r.cases == r.counters.at("entries"));
  }

  TEST_CASE("polygon corpus") {
    const auto plain = polygon_corpus(false);
    const auto strips = polygon_corpus(true);
    CHECK(plain.size() == 10);
    CHECK(strips.size() == 12);
    for (const auto& p : plain) {
      CAPTURE(p.name);
      CHECK(p.polytope.finite_volume());
      CHECK(is_acute_angled(p.polytope));
    }
    CHECK_FALSE(strips.back().polytope.finite_volume());
  }

  TEST_CASE("Lambert quadrilateral has three right angles") {
    for (const auto& p : polygon_corpus(false)) {
      if (p.name != "Lambert quadrilateral") continue;
      int right = 0;
      for (double a : interior_angles(p.polytope)) right += std::abs(a - kPi / 2) < 1e-9;
      CHECK(right == 3);
    }
  }

  TEST_CASE("splitting lines cross the interior") {
    for (const auto& p : polygon_corpus(false)) {
      const auto lines = splitting_lines(p.polytope, 6);
      CHECK(!lines.empty());
      for (const auto& l : lines) CHECK_NOTHROW(split_by_hyperplane(p.polytope, l));
    }
  }

  TEST_CASE("lemma suites pass") {
    const auto polys = polygon_corpus(true);
    const SuiteReport l1 = lemma1_suite(polys, {}, 2);
    CHECK(l1.pass());
    CHECK(l1.counters.at("hypothesis_k_plus_1") > 0);
    const SuiteReport l3 = lemma3_suite(polys, {}, 2);
    CHECK(l3.pass());
    CHECK(l3.counters.at("hypothesis_finite_volume") == 0);
    const SuiteReport l2 = lemma2_suite(6);
    CHECK(l2.pass());
    CHECK(l2.counters.at("parabolic_unions") > 0);
    CHECK_THROWS_AS(lemma2_suite(9), Error);
  }

  TEST_CASE("remark regression records expected counterexamples") {
    const SuiteReport r = remark2_regression();
    CHECK(r.pass());
    CHECK(r.expected.size() == 2);
    for (const auto& e : r.expected) CHECK(!e.input.empty());
  }

  TEST_CASE("half strip group") {
    const CoxeterMatrix e = half_strip_group(false);
    CHECK(e.infinite(0, 1));
    CHECK(e.weight(0, 1) == doctest::Approx(-1.0));
    CHECK(half_strip_group(true, 2.0).weight(0, 1) == doctest::Approx(-std::cosh(2.0)));
  }
}
