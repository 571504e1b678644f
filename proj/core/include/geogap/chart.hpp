#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "geogap/tensor.hpp"

namespace geogap {

struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
};

/// Open box in chart coordinates. Empty bounds means all of R^d.
struct Domain {
  std::vector<Interval> bounds;
  bool contains(const Vec& x) const;
};

/// A coordinate chart of dimension d carrying a Christoffel field
/// Gamma^i_jk(x), optionally its first partials Gamma^i_jk,l(x) (derivative
/// index last), and optionally a metric g_ij(x) for Levi-Civita geometries.
/// When dgamma is absent, curvature_at falls back to central finite
/// differences of gamma with step fd_scale*(1+|x_l|).
struct ConnectionChart {
  int dim = 0;
  Domain domain;
  std::function<Tensor3(const Vec&)> gamma;
  std::function<Tensor4(const Vec&)> dgamma; // may be empty
  std::function<Mat(const Vec&)> metric;     // may be empty
  double fd_scale = 1e-5;
  std::string name;
};

/// Gamma at x; validates dimension, finiteness and the open domain.
Tensor3 christoffels_at(const ConnectionChart& chart, const Vec& x);

/// Gamma^i_jk,l at x, symbolic when available, else central differences.
Tensor4 christoffel_partials_at(const ConnectionChart& chart, const Vec& x);

/// T^i_mn = Gamma^i_nm - Gamma^i_mn; antisymmetric in (m, n).
Tensor3 torsion_at(const ConnectionChart& chart, const Vec& x);

/// R^i_pqr = Gamma^i_pr,q - Gamma^i_pq,r
///           + Gamma^i_qj Gamma^j_pr - Gamma^i_rj Gamma^j_pq.
/// Convention: (R(u,v)w)^i = R^i_pqr w^p u^q v^r.
Tensor4 curvature_at(const ConnectionChart& chart, const Vec& x);

/// d=2, metric required: kappa = g(R(e1,e2)e2, e1) / (g11 g22 - g12^2).
double gaussian_curvature(const ConnectionChart& chart, const Vec& x);

/// Max |T^i_mn| at x below tol.
bool is_symmetric_at(const ConnectionChart& chart, const Vec& x,
                     double tol = 1e-12);

// Built-in geometry catalog.

/// Gamma == 0, identity metric, unbounded domain.
ConnectionChart make_euclidean(int d);

/// Round sphere of radius r in the (theta, phi) chart, metric
/// r^2 (dtheta^2 + sin^2(theta) dphi^2), domain theta in (0.2, pi - 0.2).
ConnectionChart make_sphere(double radius);

/// Hyperbolic plane of radius r in the (rho, phi) chart, metric
/// drho^2 + r^2 sinh^2(rho/r) dphi^2, domain rho in (0.05, 4).
ConnectionChart make_hyperboloid(double radius);

/// d=2, single nonzero coefficient Gamma^1_12 = c (1-based), so
/// T^1_12 = -c. Unbounded domain, no metric.
ConnectionChart make_constant_torsion(double c);

/// One Christoffel entry as expression text, indices 0-based.
struct GammaEntry {
  int i = 0, j = 0, k = 0;
  std::string expr;
};

/// Chart from explicit Christoffel expressions; unlisted entries are zero.
/// dgamma is produced by symbolic differentiation.
ConnectionChart make_custom_gamma(int d, const std::vector<GammaEntry>& entries,
                                  Domain domain = {},
                                  std::string name = "custom");

/// One metric entry g_ij as expression text, indices 0-based (i <= j; the
/// matrix is completed symmetrically).
struct MetricEntry {
  int i = 0, j = 0;
  std::string expr;
};

/// Levi-Civita connection of the given metric:
/// Gamma^i_jk = (1/2) g^il (g_lj,k + g_lk,j - g_jk,l),
/// with g derivatives taken symbolically and g^il inverted pointwise.
/// The resulting chart is symmetric (torsion_at == 0 exactly) and carries
/// the metric.
ConnectionChart levi_civita(int d, const std::vector<MetricEntry>& entries,
                            Domain domain = {},
                            std::string name = "levi_civita");

} // namespace geogap
