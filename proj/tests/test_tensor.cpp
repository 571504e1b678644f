#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "geogap/tensor.hpp"
#include "test_support.hpp"

using namespace geogap;
using geogap_test::Rng;

namespace {

// Independent naive-loop reference for the Gamma contraction.
Vec contract_reference(const Tensor3& g, const Vec& a, const Vec& b) {
  const int d = g.dim();
  Vec r(d, 0.0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) r[i] += g(i, j, k) * a[j] * b[k];
  return r;
}

Vec curvature_reference(const Tensor4& t, const Vec& u, const Vec& v,
                        const Vec& w) {
  const int d = t.dim();
  Vec out(d, 0.0);
  for (int i = 0; i < d; ++i)
    for (int p = 0; p < d; ++p)
      for (int q = 0; q < d; ++q)
        for (int r = 0; r < d; ++r)
          out[i] += t(i, p, q, r) * w[p] * u[q] * v[r];
  return out;
}

} // namespace

TEST_CASE("contract_gamma: zero tensor") {
  Tensor3 g(3);
  const Vec r = contract_gamma(g, {1.0, 2.0, 3.0}, {4.0, 5.0, 6.0});
  for (double x : r) CHECK(x == 0.0);
}

TEST_CASE("contract_gamma: single entry") {
  // Gamma^1_12 = 0.3 (1-based), a = e1, b = e2 -> (0.3, 0)
  Tensor3 g(2);
  g(0, 0, 1) = 0.3;
  const Vec r = contract_gamma(g, {1.0, 0.0}, {0.0, 1.0});
  CHECK(r[0] == doctest::Approx(0.3));
  CHECK(r[1] == 0.0);
}

TEST_CASE("contract_gamma: random vs naive loop") {
  Rng rng(101);
  for (int rep = 0; rep < 50; ++rep) {
    const int d = rng.uniform_int(1, 5);
    Tensor3 g(d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) g(i, j, k) = rng.uniform(-2, 2);
    const Vec a = rng.vec(d), b = rng.vec(d);
    const Vec got = contract_gamma(g, a, b);
    const Vec want = contract_reference(g, a, b);
    CHECK(geogap_test::max_abs_diff(got, want) <= 1e-15);
  }
}

TEST_CASE("contract_gamma: bilinearity") {
  Rng rng(102);
  for (int rep = 0; rep < 50; ++rep) {
    const int d = 3;
    Tensor3 g(d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) g(i, j, k) = rng.uniform(-2, 2);
    const Vec a = rng.vec(d), a2 = rng.vec(d), b = rng.vec(d);
    const double al = rng.uniform(-2, 2), be = rng.uniform(-2, 2);
    Vec lin = vscale(al, a);
    vaxpy(be, a2, lin);
    const Vec lhs = contract_gamma(g, lin, b);
    Vec rhs = vscale(al, contract_gamma(g, a, b));
    vaxpy(be, contract_gamma(g, a2, b), rhs);
    CHECK(geogap_test::max_abs_diff(lhs, rhs) <=
          1e-12 * (1.0 + vnorm_inf(rhs)));
  }
}

TEST_CASE("contract_gamma: dimension mismatch") {
  Tensor3 g(2);
  CHECK_THROWS_AS(contract_gamma(g, {1.0, 0.0, 0.0}, {0.0, 1.0}),
                  DimensionError);
}

TEST_CASE("curvature_apply: zero tensor") {
  Tensor4 r(3);
  const Vec out = curvature_apply(r, {1, 0, 0}, {0, 1, 0}, {0, 0, 1});
  for (double x : out) CHECK(x == 0.0);
}

TEST_CASE("curvature_apply: round sphere in an orthonormal frame") {
  // Unit sphere, orthonormal coordinate basis at the equator:
  // the only nonzero components are R^1_212 = 1 and R^2_112 = -1 plus
  // their last-index antisymmetric partners (hand computation from the
  // Christoffels Gamma^1_22 = -sin t cos t, Gamma^2_12 = cot t at t = pi/2).
  Tensor4 r(2);
  r(0, 1, 0, 1) = 1.0;
  r(0, 1, 1, 0) = -1.0;
  r(1, 0, 0, 1) = -1.0;
  r(1, 0, 1, 0) = 1.0;
  const Vec u = {1.0, 0.0}, v = {0.0, 1.0};
  const Vec ruvu = curvature_apply(r, u, v, u);
  CHECK(ruvu[0] == doctest::Approx(0.0));
  CHECK(ruvu[1] == doctest::Approx(-1.0)); // R(u,v)u = -v
  const Vec ruvv = curvature_apply(r, u, v, v);
  CHECK(ruvv[0] == doctest::Approx(1.0)); // R(u,v)v = u
  CHECK(ruvv[1] == doctest::Approx(0.0));
}

TEST_CASE("curvature_apply: u<->v antisymmetry and trilinearity") {
  Rng rng(103);
  for (int rep = 0; rep < 50; ++rep) {
    const int d = rng.uniform_int(2, 4);
    Tensor4 t(d);
    for (int i = 0; i < d; ++i)
      for (int p = 0; p < d; ++p)
        for (int q = 0; q < d; ++q)
          for (int r = q; r < d; ++r) {
            const double val = q == r ? 0.0 : rng.uniform(-2, 2);
            t(i, p, q, r) = val;
            t(i, p, r, q) = -val;
          }
    const Vec u = rng.vec(d), v = rng.vec(d), w = rng.vec(d);
    const Vec a = curvature_apply(t, u, v, w);
    const Vec b = curvature_apply(t, v, u, w);
    for (int i = 0; i < d; ++i)
      CHECK(a[i] + b[i] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(geogap_test::max_abs_diff(a, curvature_reference(t, u, v, w)) <=
          1e-14);
    // linearity in w
    const double c = rng.uniform(-2, 2);
    const Vec aw = curvature_apply(t, u, v, vscale(c, w));
    for (int i = 0; i < d; ++i)
      CHECK(aw[i] == doctest::Approx(c * a[i]).epsilon(1e-12));
  }
}

TEST_CASE("matrix inverse and determinant") {
  Rng rng(104);
  for (int rep = 0; rep < 20; ++rep) {
    const int d = rng.uniform_int(1, 6);
    Mat m(d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) m(i, j) = rng.uniform(-1, 1);
      m(i, i) += 3.0; // keep it comfortably nonsingular
    }
    const Mat inv = minverse(m);
    const Mat prod = mmul(m, inv);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        CHECK(prod(i, j) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-10));
    CHECK(mdet(m) * mdet(inv) == doctest::Approx(1.0).epsilon(1e-10));
  }
  Mat sing(2);
  sing(0, 0) = 1.0;
  sing(0, 1) = 2.0;
  sing(1, 0) = 2.0;
  sing(1, 1) = 4.0;
  CHECK_THROWS_AS(minverse(sing), SingularError);
}
