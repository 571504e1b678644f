#pragma once

#include "geogap/quadgap.hpp"

namespace geogap::oracle {

/// Model surfaces with closed-form T_s action: the round sphere in
/// Euclidean 3-space and the hyperboloid sheet in Minkowski 3-space.
enum class Model { Sphere, Hyperboloid };

/// A triple (P, u, v) on a model surface of radius r, encoded as the 3x3
/// group element X = [P/r | u | v]. Sphere: X in SO(3). Hyperboloid: X in
/// the proper orthochronous Lorentz group, X^T eta X = eta with
/// eta = diag(-1, 1, 1) and X(0,0) > 0.
struct OracleFrame {
  Model model = Model::Sphere;
  double radius = 1.0;
  Mat X;
};

/// T_s acting on the identity triple:
/// sphere  A(s) = [[cos s, 0, sin s], [sin s, 0, -cos s], [0, 1, 0]],
/// hyperboloid B(s) = [[cosh s, 0, -sinh s], [sinh s, 0, -cosh s], [0, 1, 0]].
/// T_s on any triple X is right multiplication: T_s(X) = X * M(s).
Mat step_matrix(Model model, double s);

/// Unit-radius group inverse: transpose for the sphere, eta * M^T * eta for
/// the hyperboloid.
Mat step_matrix_inverse(Model model, double s);

/// Exact quadrilateral vertices in ambient coordinates, starting from the
/// identity triple: P_i = r * (first column of M(s/r)^i), Q_i from inverse
/// powers. Powers by repeated multiplication.
QuadVertices oracle_vertices(Model model, double radius, double s);

/// The order-3 gap limit (kappa/2)(u - v) for the identity triple, in
/// ambient components: (0, kappa/2, -kappa/2) with kappa = +-1/r^2.
Vec oracle_gap_limits(Model model, double radius);

/// Max deviation from the group relations (orthogonality/eta-orthogonality,
/// det/orientation) of a 3x3 matrix.
double group_defect(Model model, const Mat& x);

// Chart conversions. Sphere chart (theta, phi):
//   (x,y,z) = r (sin theta cos phi, sin theta sin phi, cos theta),
// so (r,0,0) maps to (theta = pi/2, phi = 0). Hyperboloid chart (rho, phi):
//   (t,x,y) = (r cosh(rho/r), r sinh(rho/r) cos phi, r sinh(rho/r) sin phi).
// Points must lie on the surface within 1e-9 and inside the chart domain.

Vec ambient_to_chart_point(Model model, double radius, const Vec& ambient);
Vec chart_to_ambient_point(Model model, double radius, const Vec& chart_pt);

/// Tangent pushforward by the chart Jacobian (chart -> ambient) and its
/// left inverse (ambient -> chart; the ambient vector must be tangent).
Vec chart_to_ambient_tangent(Model model, double radius, const Vec& chart_pt,
                             const Vec& chart_vec);
Vec ambient_to_chart_tangent(Model model, double radius, const Vec& chart_pt,
                             const Vec& ambient_vec);

/// Group element for the triple with the given chart location and chart
/// tangents (u, v are expected g-orthonormal for an exact group element).
OracleFrame frame_from_chart(Model model, double radius, const Vec& chart_pt,
                             const Vec& u_chart, const Vec& v_chart);

/// Vertices for an arbitrary base triple: X0 applied to the identity-triple
/// vertices.
QuadVertices oracle_vertices_from(const OracleFrame& x0, double s);

} // namespace geogap::oracle
