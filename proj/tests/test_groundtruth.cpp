#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "geogap/analysis.hpp"
#include "geogap/groundtruth.hpp"
#include "test_support.hpp"

using namespace geogap;
using namespace geogap::oracle;
using geogap_test::Rng;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("A(0) maps (P,u,v) to (P,v,-u)") {
  const Mat a0 = step_matrix(Model::Sphere, 0.0);
  // columns: P' = e1, u' = e3, v' = -e2
  CHECK(a0(0, 0) == 1.0);
  CHECK(a0(1, 0) == 0.0);
  CHECK(a0(2, 0) == 0.0);
  CHECK(a0(0, 1) == 0.0);
  CHECK(a0(1, 1) == 0.0);
  CHECK(a0(2, 1) == 1.0);
  CHECK(a0(0, 2) == doctest::Approx(0.0));
  CHECK(a0(1, 2) == -1.0);
  CHECK(a0(2, 2) == 0.0);
  const Mat b0 = step_matrix(Model::Hyperboloid, 0.0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(b0(i, j) == doctest::Approx(a0(i, j)));
}

TEST_CASE("A(pi/2) first column") {
  const Mat a = step_matrix(Model::Sphere, pi / 2);
  CHECK(a(0, 0) == doctest::Approx(0.0));
  CHECK(a(1, 0) == doctest::Approx(1.0));
  CHECK(a(2, 0) == doctest::Approx(0.0));
}

TEST_CASE("group relations: A orthogonal, B eta-orthogonal") {
  for (double s : {0.3, 1.0, -0.7}) {
    CHECK(group_defect(Model::Sphere, step_matrix(Model::Sphere, s)) <= 1e-14);
    CHECK(group_defect(Model::Hyperboloid,
                       step_matrix(Model::Hyperboloid, s)) <= 1e-13);
    CHECK(group_defect(Model::Sphere, step_matrix_inverse(Model::Sphere, s)) <=
          1e-14);
  }
}

TEST_CASE("sphere vertices match the closed forms") {
  for (double s : {0.1, 0.3}) {
    const QuadVertices q = oracle_vertices(Model::Sphere, 1.0, s);
    const double c = std::cos(s), sn = std::sin(s);
    CHECK(geogap_test::max_abs_diff(q.P2, {c * c, c * sn, sn}) <= 1e-14);
    CHECK(geogap_test::max_abs_diff(q.Q2, {c * c, sn, c * sn}) <= 1e-14);
    // Q2 - P2 = (0, sin s (1 - cos s), -sin s (1 - cos s))
    const Vec gap = vsub(q.Q2, q.P2);
    CHECK(gap[0] == doctest::Approx(0.0));
    CHECK(gap[1] == doctest::Approx(sn * (1 - c)).epsilon(1e-13));
    CHECK(gap[2] == doctest::Approx(-sn * (1 - c)).epsilon(1e-13));
    // P4 first column of A^4
    const Vec p4 = {c * c * c * c + 2 * c * sn * sn,
                    c * c * c * sn - c * c * sn + sn * sn * sn,
                    c * c * sn - c * sn};
    CHECK(geogap_test::max_abs_diff(q.P4, p4) <= 1e-14);
  }
}

TEST_CASE("hyperboloid vertices from matrix powers") {
  for (double s : {0.1, 0.4}) {
    const QuadVertices q = oracle_vertices(Model::Hyperboloid, 1.0, s);
    const double c = std::cosh(s), sn = std::sinh(s);
    CHECK(geogap_test::max_abs_diff(q.P2, {c * c, c * sn, sn}) <= 1e-13);
    CHECK(geogap_test::max_abs_diff(q.Q2, {c * c, sn, c * sn}) <= 1e-13);
    // P4 is pinned by explicit matrix powering of B(s)
    const Mat b = step_matrix(Model::Hyperboloid, s);
    const Mat b4 = mmul(mmul(b, b), mmul(b, b));
    CHECK(geogap_test::max_abs_diff(q.P4, b4.col(0)) <= 1e-13);
  }
}

TEST_CASE("s = 0 closes the quadrilateral") {
  const QuadVertices q = oracle_vertices(Model::Sphere, 1.0, 0.0);
  for (const Vec* v : {&q.P1, &q.P2, &q.P3, &q.P4, &q.Q1, &q.Q2})
    CHECK(geogap_test::max_abs_diff(*v, q.P0) == 0.0);
}

TEST_CASE("radius scaling of vertices and limits") {
  const double r = 2.0, s = 0.2;
  const QuadVertices q = oracle_vertices(Model::Sphere, r, s);
  const QuadVertices unit = oracle_vertices(Model::Sphere, 1.0, s / r);
  CHECK(geogap_test::max_abs_diff(q.P3, vscale(r, unit.P3)) <= 1e-14);
  CHECK(geogap_test::max_abs_diff(oracle_gap_limits(Model::Sphere, 2.0),
                                  {0.0, 0.125, -0.125}) == 0.0);
  CHECK(geogap_test::max_abs_diff(oracle_gap_limits(Model::Sphere, 1.0),
                                  {0.0, 0.5, -0.5}) == 0.0);
  CHECK(geogap_test::max_abs_diff(oracle_gap_limits(Model::Hyperboloid, 1.0),
                                  {0.0, -0.5, 0.5}) == 0.0);
}

TEST_CASE("oracle gap ladder extrapolates to the closed-form limit") {
  for (const Model model : {Model::Sphere, Model::Hyperboloid}) {
    Samples gi, gii;
    for (const double s : geometric_ladder(0.1, 7)) {
      const QuadVertices q = oracle_vertices(model, 1.0, s);
      gi.emplace_back(s, vsub(q.P4, q.P0));
      gii.emplace_back(s, vsub(q.Q2, q.P2));
    }
    const Vec want = oracle_gap_limits(model, 1.0);
    CHECK(geogap_test::max_abs_diff(estimate_limit(gi, 3).limit, want) <= 1e-6);
    CHECK(geogap_test::max_abs_diff(estimate_limit(gii, 3).limit, want) <=
          1e-8);
  }
}

TEST_CASE("chart conversions: anchors and round trips") {
  // equator point (1,0,0) maps to (theta = pi/2, phi = 0)
  const Vec eq = ambient_to_chart_point(Model::Sphere, 1.0, {1.0, 0.0, 0.0});
  CHECK(eq[0] == doctest::Approx(pi / 2));
  CHECK(eq[1] == doctest::Approx(0.0));

  Rng rng(501);
  for (int rep = 0; rep < 100; ++rep) {
    const Model model = rep % 2 ? Model::Sphere : Model::Hyperboloid;
    const double radius = rep % 3 ? 1.0 : 2.0;
    Vec q = model == Model::Sphere
                ? Vec{rng.uniform(0.3, 2.8), rng.uniform(-3.1, 3.1)}
                : Vec{rng.uniform(0.1, 3.9), rng.uniform(-3.1, 3.1)};
    const Vec p = chart_to_ambient_point(model, radius, q);
    const Vec back = ambient_to_chart_point(model, radius, p);
    CHECK(geogap_test::max_abs_diff(back, q) <= 1e-12);
    const Vec w = rng.vec(2);
    const Vec amb = chart_to_ambient_tangent(model, radius, q, w);
    const Vec wback = ambient_to_chart_tangent(model, radius, q, amb);
    CHECK(geogap_test::max_abs_diff(wback, w) <= 1e-10);
  }
}

TEST_CASE("north pole request is a chart-domain error") {
  CHECK_THROWS_AS(ambient_to_chart_point(Model::Sphere, 1.0, {0.0, 0.0, 1.0}),
                  DomainError);
  CHECK_THROWS_AS(ambient_to_chart_point(Model::Sphere, 1.0, {1.1, 0.0, 0.0}),
                  DomainError); // off-surface
  CHECK_THROWS_AS(
      ambient_to_chart_point(Model::Hyperboloid, 1.0, {1.0, 0.0, 0.0}),
      DomainError); // rho = 0 is outside the chart
}

TEST_CASE("frame_from_chart produces group elements") {
  // g-orthonormal frame at a sphere point
  const Vec q = {1.1, 0.5};
  const Vec u = {1.0, 0.0};
  const Vec v = {0.0, 1.0 / std::sin(1.1)};
  const OracleFrame f = frame_from_chart(Model::Sphere, 1.0, q, u, v);
  CHECK(group_defect(Model::Sphere, f.X) <= 1e-12);

  const Vec qh = {1.0, 0.3};
  const Vec vh = {0.0, 1.0 / std::sinh(1.0)};
  const OracleFrame fh = frame_from_chart(Model::Hyperboloid, 1.0, qh, u, vh);
  CHECK(group_defect(Model::Hyperboloid, fh.X) <= 1e-12);
}
