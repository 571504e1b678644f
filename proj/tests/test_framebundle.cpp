#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "geogap/analysis.hpp"
#include "geogap/framebundle.hpp"
#include "geogap/quadgap.hpp"
#include "test_support.hpp"

using namespace geogap;
using geogap_test::Rng;

namespace {

constexpr double pi = std::numbers::pi;

// Test-side flattening of the bundle so the frame flow fields can be fed
// through the generic flow integrator (independent of bracket_numeric).
Vec flatten(const FramePoint& y) {
  const int d = int(y.x.size());
  Vec out(std::size_t(d) * (1 + d));
  for (int i = 0; i < d; ++i) out[i] = y.x[i];
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out[d + std::size_t(i) * d + j] = y.frame(i, j);
  return out;
}

FramePoint unflatten(int d, const Vec& y) {
  FramePoint p;
  p.x.assign(y.begin(), y.begin() + d);
  p.frame = Mat(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) p.frame(i, j) = y[d + std::size_t(i) * d + j];
  return p;
}

VectorField bundle_field(const ConnectionChart& chart, int m) {
  const int d = chart.dim;
  return [&chart, m, d](const Vec& flat) {
    const FramePoint y = unflatten(d, flat);
    const BundleVector f = xi_field(chart, m, y);
    Vec out(flat.size());
    for (int i = 0; i < d; ++i) out[i] = f.base[i];
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        out[d + std::size_t(i) * d + j] = f.vert(i, j);
    return out;
  };
}

} // namespace

TEST_CASE("xi_field: flat chart has no vertical part") {
  const ConnectionChart chart = make_euclidean(2);
  Mat frame(2);
  frame(0, 0) = 1.0;
  frame(1, 0) = 0.5;
  frame(0, 1) = -0.25;
  frame(1, 1) = 2.0;
  for (int m = 0; m < 2; ++m) {
    const BundleVector f = xi_field(chart, m, {{0.3, 0.4}, frame});
    CHECK(geogap_test::max_abs_diff(f.base, frame.col(m)) == 0.0);
    for (int i = 0; i < 2; ++i)
      for (int l = 0; l < 2; ++l) CHECK(f.vert(i, l) == 0.0);
  }
}

TEST_CASE("xi_field: pushforward is u_m by construction") {
  Rng rng(801);
  const ConnectionChart chart = make_sphere(1.0);
  for (int rep = 0; rep < 20; ++rep) {
    Mat frame(2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) frame(i, j) = rng.uniform(-2, 2);
    frame(0, 0) += 3.0;
    const FramePoint y{{rng.uniform(0.6, 2.4), rng.uniform(-2, 2)}, frame};
    for (int m = 0; m < 2; ++m)
      CHECK(geogap_test::max_abs_diff(xi_field(chart, m, y).base,
                                      frame.col(m)) == 0.0);
  }
}

TEST_CASE("xi_field: vertical part matches an independent contraction") {
  Rng rng(802);
  const ConnectionChart chart = make_sphere(1.0);
  for (int rep = 0; rep < 20; ++rep) {
    Mat frame = Mat::identity(2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) frame(i, j) += rng.uniform(-0.3, 0.3);
    const Vec x = {rng.uniform(0.7, 2.3), rng.uniform(-2, 2)};
    const FramePoint y{x, frame};
    const Tensor3 g = christoffels_at(chart, x);
    for (int m = 0; m < 2; ++m) {
      const BundleVector f = xi_field(chart, m, y);
      for (int i = 0; i < 2; ++i)
        for (int l = 0; l < 2; ++l) {
          double want = 0.0;
          for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
              want -= g(i, j, k) * frame(j, l) * frame(k, m);
          CHECK(f.vert(i, l) == doctest::Approx(want).epsilon(1e-13));
        }
    }
  }
}

TEST_CASE("bracket_numeric: flat chart brackets vanish") {
  const ConnectionChart chart = make_euclidean(2);
  const BundleVector br =
      bracket_numeric(chart, 0, 1, {{0.1, 0.2}, Mat::identity(2)});
  CHECK(vnorm_inf(br.base) <= 1e-12);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(std::abs(br.vert(i, j)) <= 1e-12);
}

TEST_CASE("bracket_numeric: base part is -T(u_1,u_2) on constant torsion") {
  const ConnectionChart chart = make_constant_torsion(0.3);
  const BundleVector br =
      bracket_numeric(chart, 0, 1, {{0.0, 0.0}, Mat::identity(2)});
  // T^1_12 = -0.3, so pi_*[xi_1, xi_2] = -T(e1, e2) = (0.3, 0)
  CHECK(br.base[0] == doctest::Approx(0.3).epsilon(1e-9));
  CHECK(std::abs(br.base[1]) <= 1e-9);
}

TEST_CASE("bracket_numeric agrees with the flow-commutator gap on E") {
  const ConnectionChart chart = make_sphere(1.0);
  const FramePoint y{{1.2, 0.4}, Mat::identity(2)};
  const BundleVector br = bracket_numeric(chart, 0, 1, y);
  Vec br_flat(6);
  for (int i = 0; i < 2; ++i) br_flat[i] = br.base[i];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) br_flat[2 + i * 2 + j] = br.vert(i, j);

  // extrapolated limit of F_II/s^2 over a ladder; a single rung would still
  // carry its O(s) Taylor remainder
  const VectorField xi = bundle_field(chart, 0);
  const VectorField eta = bundle_field(chart, 1);
  Samples samples;
  for (const double s : geometric_ladder(0.05, 6))
    samples.emplace_back(s, flow_gap_FII(xi, eta, flatten(y), s));
  const Vec limit = estimate_limit(samples, 2).limit;
  CHECK(geogap_test::max_abs_diff(limit, br_flat) <= 1e-4);
}

TEST_CASE("verify_frame_bracket: flat chart has zero deviations") {
  const FrameBracketReport rep =
      verify_frame_bracket(make_euclidean(3), {{0, 0, 0}, Mat::identity(3)});
  CHECK(rep.symmetric);
  CHECK(rep.max_base_deviation <= 1e-12);
  CHECK(*rep.max_vertical_deviation <= 1e-12);
}

TEST_CASE("verify_frame_bracket: sphere vertical part matches -R") {
  const FrameBracketReport rep = verify_frame_bracket(
      make_sphere(1.0), {{pi / 2, 0.0}, Mat::identity(2)});
  CHECK(rep.symmetric);
  CHECK(rep.max_base_deviation <= 1e-4);
  REQUIRE(rep.max_vertical_deviation.has_value());
  CHECK(*rep.max_vertical_deviation <= 1e-4);
}

TEST_CASE("verify_frame_bracket: constant torsion base part, vertical skipped") {
  const FrameBracketReport rep = verify_frame_bracket(
      make_constant_torsion(0.3), {{0.0, 0.0}, Mat::identity(2)});
  CHECK(!rep.symmetric);
  CHECK(rep.max_base_deviation <= 1e-6);
  CHECK(!rep.max_vertical_deviation.has_value());
}

TEST_CASE("verify_frame_bracket: equivariance under a frame change") {
  const ConnectionChart chart = make_sphere(1.0);
  const Vec x = {1.3, -0.2};
  Mat a(2);
  a(0, 0) = 1.2;
  a(0, 1) = 0.3;
  a(1, 0) = -0.4;
  a(1, 1) = 0.9;
  const Mat frame = Mat::identity(2);
  const FrameBracketReport r1 = verify_frame_bracket(chart, {x, frame});
  const FrameBracketReport r2 = verify_frame_bracket(chart, {x, mmul(frame, a)});
  CHECK(r1.max_base_deviation <= 1e-4);
  CHECK(r2.max_base_deviation <= 1e-4);
  CHECK(*r1.max_vertical_deviation <= 1e-4);
  CHECK(*r2.max_vertical_deviation <= 1e-4);
}

TEST_CASE("bracket_numeric converges at second order in h") {
  const ConnectionChart chart = make_sphere(1.0);
  const FramePoint y{{1.1, 0.2}, Mat::identity(2)};
  const double d1 =
      *verify_frame_bracket(chart, y, 2e-3).max_vertical_deviation;
  const double d2 =
      *verify_frame_bracket(chart, y, 1e-3).max_vertical_deviation;
  const double ratio = d1 / d2;
  CHECK(ratio >= 3.0);
  CHECK(ratio <= 5.0);
}

TEST_CASE("singular frames are rejected") {
  Mat degenerate(2); // zero matrix
  CHECK_THROWS_AS(
      bracket_numeric(make_sphere(1.0), 0, 1, {{1.2, 0.0}, degenerate}),
      SingularError);
}
