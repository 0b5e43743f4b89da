#include "doctest.h"

#include <cmath>

#include "refl/io.hpp"

using namespace refl;

TEST_SUITE("io") {
  TEST_CASE("coxeter documents round-trip") {
    const CoxeterMatrix m({{1, 0, 2}, {0, 1, 2}, {2, 2, 1}}, {{{0, 1}, -1.25}});
    const Json j = to_json(m);
    CHECK(j["rank"] == 3);
    CHECK(coxeter_from_json(j) == m);
    CHECK(coxeter_from_json(parse_json(j.dump())) == m);
  }

  TEST_CASE("malformed documents are input errors") {
    auto code = [](const std::string& text) {
      try {
        coxeter_from_json(parse_json(text));
      } catch (const Error& e) {
        return static_cast<int>(e.code());
      }
      return -1;
    };
    const int input = static_cast<int>(ErrorCode::InputError);
    CHECK(code("{") == input);
    CHECK(code(R"({"rank": 2, "m": [[1, 1], [1, 1]]})") == input);
    CHECK(code(R"({"rank": 3, "m": [[1, 2], [2, 1]]})") == input);
    CHECK(code(R"({"rank": 2, "m": [[1, 3], [4, 1]]})") == input);
    CHECK(code(R"({"m": "x"})") == input);
    try {
      coxeter_from_json(parse_json(R"({"rank": 2, "m": [[1, 1], [1, 1]]})"));
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("m[0][1]") != std::string::npos);
    }
  }

  TEST_CASE("subgroup documents round-trip") {
    SubgroupSpec h = SubgroupSpec::from_words({{0}, {1, 2, 1}});
    h.reflections.push_back({{}, Root(Eigen::Vector3d(1, 0.5, 0))});
    const SubgroupSpec back = subgroup_from_json(to_json(h));
    REQUIRE(back.reflections.size() == 3);
    CHECK(back.reflections[1].word == std::vector<int>{1, 2, 1});
    REQUIRE(back.reflections[2].root);
    CHECK((*back.reflections[2].root - Eigen::Vector3d(1, 0.5, 0)).norm() == 0);
    CHECK_THROWS_AS(subgroup_from_json(parse_json(R"({"reflections": [{"word": ["a"]}]})")), Error);
  }

  TEST_CASE("polytope documents") {
    const Polytope t = polytope_from_json(parse_json(R"({"triangle": [2, 3, 7]})"));
    const Json j = to_json(t);
    CHECK(j["area"].get<double>() == doctest::Approx(kPi / 42));
    CHECK(j["coxeter"] == true);
    CHECK(j["bounded"] == true);
    const Polytope again = polytope_from_json(halfspaces_json(t));
    CHECK(area2(again) == doctest::Approx(kPi / 42));
    CHECK_THROWS_AS(polytope_from_json(parse_json(R"({"space": "spherical", "dim": 2, "halfspaces": []})")), Error);
  }

  TEST_CASE("verdict documents") {
    TheoremVerdict v{3, 3, 2, true, true};
    const Json j = to_json(v);
    CHECK(j["k_F"] == 3);
    CHECK(j["index"] == 2);
    CHECK(verdict_from_json(j) == v);
    v.index.reset();
    CHECK(to_json(v)["index"] == "exceeded bound");
    CHECK(verdict_from_json(to_json(v)) == v);
  }

  TEST_CASE("report documents round-trip") {
    SuiteReport r;
    r.suite = "lemma1";
    r.cases = 4;
    r.violations.push_back({"a", "b", R"({"x":1})"});
    r.expected.push_back({"c", "d", "{}"});
    r.counters["lines"] = 7;
    r.wall_clock = 0.25;
    const Json j = to_json(r);
    CHECK(j["pass"] == false);
    CHECK(report_from_json(j) == r);
  }

  TEST_CASE("classification types") {
    CHECK(group_type(CoxeterMatrix::triangle(2, 3, 7)) == "hyperbolic");
    CHECK(group_type(CoxeterMatrix::triangle(2, 3, 6)) == "parabolic");
    CHECK(group_type(CoxeterMatrix::triangle(2, 3, 5)) == "elliptic");
    CHECK(group_type(CoxeterMatrix({{1, 0, 2}, {0, 1, 2}, {2, 2, 1}})) == "mixed");
    CHECK(group_type(CoxeterMatrix({{1, 3, 3, 3}, {3, 1, 3, 3}, {3, 3, 1, 3}, {3, 3, 3, 1}})) == "hyperbolic");
    CHECK(group_type(CoxeterMatrix({{1, 0, 2, 2}, {0, 1, 2, 2}, {2, 2, 1, 0}, {2, 2, 0, 1}},
                                   {{{0, 1}, -2.0}, {{2, 3}, -2.0}})) == "indefinite");
    const ClassifyReport r = classify_report(CoxeterMatrix::triangle(3, 3, 3));
    CHECK(r.text.rfind("type: parabolic, signature (2,1,0), components [Ã2]", 0) == 0);
    CHECK(r.document["type"] == "parabolic");
  }
}
