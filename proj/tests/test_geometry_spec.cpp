#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "geogap/geometry_spec.hpp"
#include "test_support.hpp"

using namespace geogap;

TEST_CASE("builtin specs resolve to catalog charts") {
  const GeometrySpec sph = parse_geometry_spec(
      R"({"kind":"builtin","name":"sphere","params":{"radius":2.0}})");
  const ConnectionChart chart = resolve_geometry(sph);
  CHECK(chart.dim == 2);
  CHECK(chart.metric);
  CHECK(gaussian_curvature(chart, {1.2, 0.0}) ==
        doctest::Approx(0.25).epsilon(1e-9));

  const GeometrySpec euc = parse_geometry_spec(
      R"({"kind":"builtin","name":"euclidean","params":{"dim":3}})");
  CHECK(resolve_geometry(euc).dim == 3);

  const GeometrySpec ct = parse_geometry_spec(
      R"({"kind":"builtin","name":"constant_torsion","params":{"c":0.3}})");
  const Tensor3 t = torsion_at(resolve_geometry(ct), {0.0, 0.0});
  CHECK(t(0, 0, 1) == doctest::Approx(-0.3));
}

TEST_CASE("custom gamma spec with 1-based keys") {
  const GeometrySpec spec = parse_geometry_spec(
      R"({"kind":"custom","dim":2,"gamma":{"1,1,2":"0.3"}})");
  const ConnectionChart chart = resolve_geometry(spec);
  const Tensor3 g = christoffels_at(chart, {0.1, 0.2});
  CHECK(g(0, 0, 1) == doctest::Approx(0.3));
  CHECK(g(0, 1, 0) == 0.0);
}

TEST_CASE("metric spec routes through levi_civita") {
  const GeometrySpec spec = parse_geometry_spec(
      R"({"kind":"metric","dim":2,"g":{"1,1":"1","2,2":"sin(x1)^2"},)"
      R"("domain":[[0.2,2.9],[null,null]]})");
  const ConnectionChart chart = resolve_geometry(spec);
  CHECK(chart.metric);
  const Tensor3 g = christoffels_at(chart, {1.1, 0.0});
  CHECK(g(0, 1, 1) ==
        doctest::Approx(-std::sin(1.1) * std::cos(1.1)).epsilon(1e-12));
  CHECK(gaussian_curvature(chart, {1.1, 0.0}) ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK_THROWS_AS(christoffels_at(chart, {0.1, 0.0}), DomainError);
}

TEST_CASE("spec errors") {
  CHECK_THROWS_AS(parse_geometry_spec("not json"), ConfigError);
  CHECK_THROWS_AS(parse_geometry_spec(R"({"kind":"nope"})"), ConfigError);
  CHECK_THROWS_AS(parse_geometry_spec(R"({"kind":"builtin"})"), ConfigError);
  CHECK_THROWS_AS(
      resolve_geometry(parse_geometry_spec(
          R"({"kind":"builtin","name":"torus","params":{}})")),
      ConfigError);
  CHECK_THROWS_AS(
      resolve_geometry(parse_geometry_spec(
          R"({"kind":"builtin","name":"sphere","params":{"radius":-1}})")),
      ConfigError);
  CHECK_THROWS_AS(
      resolve_geometry(parse_geometry_spec(
          R"({"kind":"custom","dim":2,"gamma":{"1,1,3":"0.3"}})")),
      ConfigError);
  CHECK_THROWS_AS(
      resolve_geometry(parse_geometry_spec(
          R"({"kind":"custom","dim":2,"gamma":{"1,1,2":"sin("}})")),
      ConfigError);
}

TEST_CASE("canonical_json is stable across key order") {
  const GeometrySpec a = parse_geometry_spec(
      R"({"kind":"builtin","name":"sphere","params":{"radius":1.0}})");
  const GeometrySpec b = parse_geometry_spec(
      R"({"params":{"radius":1.0},"name":"sphere","kind":"builtin"})");
  CHECK(a.canonical_json == b.canonical_json);
}
