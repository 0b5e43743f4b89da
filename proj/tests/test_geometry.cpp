#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "refl/geometry.hpp"

using namespace refl;

namespace {

const Space kE2{SpaceKind::Euclidean, 2};
const Space kH2{SpaceKind::Hyperbolic, 2};

Polytope unit_square() {
  return Polytope::from_halfspaces(kE2, {Hyperplane::euclidean(Eigen::Vector2d(1, 0), 1),
                                         Hyperplane::euclidean(Eigen::Vector2d(-1, 0), 0),
                                         Hyperplane::euclidean(Eigen::Vector2d(0, 1), 1),
                                         Hyperplane::euclidean(Eigen::Vector2d(0, -1), 0)});
}

// Line x = a of the Klein disk, oriented so the origin is inside.
Hyperplane klein_vertical(double a) {
  const double s = a > 0 ? 1.0 : -1.0;
  return Hyperplane::hyperbolic(Eigen::Vector3d(s, 0, std::abs(a)));
}

}  // namespace

TEST_SUITE("geometry") {
  TEST_CASE("hyperplanes are normalized and oriented") {
    const Hyperplane h = klein_vertical(0.5);
    CHECK(lorentz(h.normal, h.normal) == doctest::Approx(1.0));
    CHECK(h.value(kH2, Eigen::Vector3d(0, 0, 1)) < 0);
    const Hyperplane e = Hyperplane::euclidean(Eigen::Vector2d(3, 4), 10);
    CHECK(e.normal.norm() == doctest::Approx(1.0));
    CHECK(e.offset == doctest::Approx(2.0));
  }

  TEST_CASE("dihedral angle classes") {
    const AngleClass d = dihedral_angle(klein_vertical(0.5), klein_vertical(-0.5), kH2);
    CHECK(d.kind == AngleClass::Divergent);
    CHECK(d.value == doctest::Approx(2.0 * std::atanh(0.5)));
    const Hyperplane x0 = Hyperplane::hyperbolic(Eigen::Vector3d(1, 0, 0));
    const Hyperplane y0 = Hyperplane::hyperbolic(Eigen::Vector3d(0, 1, 0));
    CHECK(dihedral_angle(x0, y0, kH2).kind == AngleClass::Intersecting);
    CHECK(dihedral_angle(x0, y0, kH2).value == doctest::Approx(kPi / 2));
    // Lines x = 1 - y and x = -1 + y of the Klein disk meet at the ideal point (0, 1).
    const Hyperplane a = line_through(kH2, Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1));
    const Hyperplane b = line_through(kH2, Eigen::Vector2d(0, 1), Eigen::Vector2d(-1, 0));
    CHECK(dihedral_angle(a, b, kH2).kind == AngleClass::Parallel);
    const Hyperplane e1 = Hyperplane::euclidean(Eigen::Vector2d(0, 1), 1);
    const Hyperplane e2 = Hyperplane::euclidean(Eigen::Vector2d(0, -1), 0);
    CHECK(dihedral_angle(e1, e2, kE2).kind == AngleClass::Parallel);
    CHECK_THROWS_AS(dihedral_angle(e1, e1, kE2), Error);
  }

  TEST_CASE("square") {
    const Polytope sq = unit_square();
    CHECK(sq.facet_count() == 4);
    CHECK(sq.ordinary_vertex_count() == 4);
    CHECK(sq.bounded());
    CHECK(sq.finite_volume());
    CHECK(area2(sq) == doctest::Approx(1.0));
    CHECK(is_coxeter_polytope(sq));
    CHECK(is_acute_angled(sq));
    CHECK(sq.adjacent_pairs().size() == 4);
  }

  TEST_CASE("redundant half-spaces are dropped and empty interiors rejected") {
    std::vector<Hyperplane> hs{Hyperplane::euclidean(Eigen::Vector2d(1, 0), 1), Hyperplane::euclidean(Eigen::Vector2d(1, 0), 2),
                               Hyperplane::euclidean(Eigen::Vector2d(-1, 0), 0), Hyperplane::euclidean(Eigen::Vector2d(0, 1), 1),
                               Hyperplane::euclidean(Eigen::Vector2d(0, -1), 0)};
    CHECK(Polytope::from_halfspaces(kE2, hs).facet_count() == 4);
    hs.push_back(Hyperplane::euclidean(Eigen::Vector2d(1, 0), -3));
    CHECK_THROWS_AS(Polytope::from_halfspaces(kE2, hs), Error);
  }

  TEST_CASE("hyperbolic triangle areas and angles") {
    const int triples[][3] = {{2, 3, 7}, {2, 3, 8}, {2, 4, 5}, {3, 3, 4}, {2, 5, 5}, {4, 4, 4}};
    for (const auto& t : triples) {
      CAPTURE(t[0]);
      CAPTURE(t[1]);
      CAPTURE(t[2]);
      const Polytope p = realize_triangle(CoxeterMatrix::triangle(t[0], t[1], t[2]));
      CHECK(p.space() == kH2);
      CHECK(p.bounded());
      CHECK(area2(p) == doctest::Approx(kPi - kPi / t[0] - kPi / t[1] - kPi / t[2]).epsilon(1e-12));
      std::vector<double> got = interior_angles(p), want{kPi / t[0], kPi / t[1], kPi / t[2]};
      std::sort(got.begin(), got.end());
      std::sort(want.begin(), want.end());
      REQUIRE(got.size() == 3);
      for (int k = 0; k < 3; ++k) CHECK(got[k] == doctest::Approx(want[k]).epsilon(1e-12));
      CHECK(is_coxeter_polytope(p));
    }
  }

  TEST_CASE("Euclidean triangles have angle sum pi") {
    for (auto [p, q, r] : {std::tuple{2, 3, 6}, {2, 4, 4}, {3, 3, 3}}) {
      const Polytope t = realize_triangle(CoxeterMatrix::triangle(p, q, r));
      CHECK(t.space() == kE2);
      const auto a = interior_angles(t);
      CHECK(a[0] + a[1] + a[2] == doctest::Approx(kPi));
      CHECK(area2(t) > 0);
    }
  }

  TEST_CASE("ideal triangle") {
    const Polytope t = realize_triangle(CoxeterMatrix::triangle(kInf, kInf, kInf));
    CHECK(t.ideal_vertex_count() == 3);
    CHECK_FALSE(t.bounded());
    CHECK(t.finite_volume());
    CHECK(area2(t) == doctest::Approx(kPi));
    for (int v = 0; v < 3; ++v) {
      const VertexLink l = vertex_link(t, v);
      CHECK(l.ideal);
      REQUIRE(l.classification);
      CHECK(l.classification->kind == l.expected());
    }
  }

  TEST_CASE("vertex links of a compact triangle are elliptic") {
    const Polytope t = realize_triangle(CoxeterMatrix::triangle(2, 3, 7));
    for (int v = 0; v < 3; ++v) {
      const VertexLink l = vertex_link(t, v);
      REQUIRE(l.classification);
      CHECK(l.classification->kind == DiagramKind::Elliptic);
    }
    CHECK(has_finite_volume(t));
  }

  TEST_CASE("regular polygons") {
    for (int n = 5; n <= 8; ++n) {
      const double angle = kPi / 2 - 0.1 * (n - 5);
      const Polytope p = regular_hyperbolic_polygon(n, angle);
      CHECK(p.facet_count() == n);
      CHECK(area2(p) == doctest::Approx((n - 2) * kPi - n * angle).epsilon(1e-10));
    }
    CHECK_THROWS_AS(regular_hyperbolic_polygon(4, kPi / 2), Error);
  }

  TEST_CASE("half strips have infinite area") {
    const Polytope e = Polytope::from_halfspaces(kE2, {Hyperplane::euclidean(Eigen::Vector2d(0, 1), 1),
                                                       Hyperplane::euclidean(Eigen::Vector2d(0, -1), 0),
                                                       Hyperplane::euclidean(Eigen::Vector2d(-1, 0), 0)});
    CHECK_FALSE(e.bounded());
    CHECK_FALSE(e.finite_volume());
    CHECK_FALSE(has_finite_volume(e));
    CHECK(e.recession_directions().size() == 1);
    const Polytope h = Polytope::from_halfspaces(kH2, {klein_vertical(0.5), klein_vertical(-0.5)});
    CHECK_FALSE(h.finite_volume());
  }

  TEST_CASE("reflections are involutive isometries") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-0.9, 0.9);
    for (int trial = 0; trial < 50; ++trial) {
      Eigen::Vector2d p(u(rng), u(rng)), q(u(rng), u(rng));
      if ((p - q).norm() < 1e-3 || p.norm() >= 1 || q.norm() >= 1) continue;
      const Hyperplane h = line_through(kH2, p, q);
      const ModelMap r = ModelMap::reflection(kH2, h);
      const Eigen::MatrixXd j = Eigen::Vector3d(1, 1, -1).asDiagonal();
      CHECK((r.linear.transpose() * j * r.linear - j).norm() < 1e-9);
      CHECK((r.then(r).linear - Eigen::Matrix3d::Identity()).norm() < 1e-9);
      const Eigen::VectorXd x = model_point(kH2, p);
      CHECK((r.apply(kH2, x) - x).norm() < 1e-9);
      const Hyperplane image = r.apply(kH2, h);
      CHECK((image.normal + h.normal).norm() < 1e-9);
    }
  }

  TEST_CASE("Andreev on right-angled pentagon") {
    const Polytope p = regular_hyperbolic_polygon(5, kPi / 2);
    const AndreevReport r = andreev_verify(p);
    CHECK(r.pass());
    CHECK(r.disjoint_pairs == 5);
    const auto& c = p.cycle();
    CHECK(extension_relation(p, {c[0]}, {c[1]}) == ExtensionRelation::Meet);
    CHECK(extension_relation(p, {c[0]}, {c[2]}) == ExtensionRelation::Disjoint);
    CHECK(face_nonempty(p, {c[0], c[1]}));
    CHECK_FALSE(face_nonempty(p, {c[0], c[2]}));
  }

  TEST_CASE("splits conserve area") {
    const std::vector<Polytope> polys{unit_square(), regular_hyperbolic_polygon(5, kPi / 2),
                                      realize_triangle(CoxeterMatrix::triangle(2, 3, 7))};
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (const Polytope& p : polys) {
      const double total = area2(p);
      const auto& segs = p.segments();
      int splits = 0;
      for (int trial = 0; trial < 200; ++trial) {
        const auto& s1 = segs[rng() % segs.size()];
        const auto& s2 = segs[rng() % segs.size()];
        if (&s1 == &s2) continue;
        const double t1 = 0.05 + 0.9 * u(rng), t2 = 0.05 + 0.9 * u(rng);
        const Eigen::Vector2d a = s1.start + t1 * (s1.end - s1.start);
        const Eigen::Vector2d b = s2.start + t2 * (s2.end - s2.start);
        const Split sp = split_by_hyperplane(p, line_through(p.space(), a, b));
        CHECK(area2(sp.first) + area2(sp.second) == doctest::Approx(total).epsilon(1e-9));
        CHECK(sp.facets_met == 2);
        ++splits;
      }
      CHECK(splits > 100);
    }
  }

  TEST_CASE("compact tetrahedron") {
    const CoxeterMatrix m({{1, 5, 2, 2}, {5, 1, 3, 2}, {2, 3, 1, 5}, {2, 2, 5, 1}});
    const GramMatrix g = gram_from_coxeter(m);
    const Polytope p = realize_hyperbolic(g);
    CHECK(p.space() == Space{SpaceKind::Hyperbolic, 3});
    CHECK(p.facet_count() == 4);
    CHECK(p.ordinary_vertex_count() == 4);
    CHECK((p.normal_gram() - g).norm() < 1e-9);
    CHECK(p.adjacent_pairs().size() == 6);
    CHECK(is_coxeter_polytope(p));
    CHECK(has_finite_volume(p));
    CHECK(andreev_verify(p).pass());
  }

  TEST_CASE("submultiples of pi") {
    CHECK(submultiple_of_pi(kPi / 7, 1e-7) == 7);
    CHECK(submultiple_of_pi(kPi / 2 + 1e-9, 1e-7) == 2);
    CHECK_FALSE(submultiple_of_pi(0.5, 1e-7));
    CHECK_FALSE(submultiple_of_pi(2 * kPi / 5, 1e-7));
  }

  TEST_CASE("chart round trip") {
    for (double x : {-0.7, 0.0, 0.3})
      for (double y : {-0.2, 0.5}) {
        const Eigen::Vector2d p(x, y);
        CHECK((chart_point(kH2, model_point(kH2, p)) - p).norm() < 1e-12);
        CHECK(lorentz(model_point(kH2, p), model_point(kH2, p)) == doctest::Approx(-1.0));
        CHECK((chart_point(kE2, model_point(kE2, p)) - p).norm() < 1e-12);
      }
  }
}
