#pragma once

#include "geogap/odeflow.hpp"

namespace geogap {

/// A point with two tangent vectors; the unit the T_s operator acts on.
/// Zero vectors are allowed.
struct FrameTriple {
  Vec P, u, v;
};

/// Vertices of the two open geodesic quadrilaterals at parameter s:
/// P1..P4 from iterating T_s, Q1..Q2 from iterating the inverse.
struct QuadVertices {
  Vec P0, P1, P2, P3, P4;
  Vec Q1, Q2;
  double s = 0.0;
};

/// Default trust interval for |s| on the catalog geometries; the CLI
/// refuses larger values without an explicit override.
inline constexpr double default_trust_s = 0.5;

/// T_s(P, u, v) = (P', u', v') with P' the endpoint of the geodesic from P
/// with initial tangent u at parameter s, u' the parallel transport of v,
/// and v' the negated parallel transport of u (the transported geodesic
/// tangent). T_0(P, u, v) = (P, v, -u).
FrameTriple apply_T(const ConnectionChart& chart, const FrameTriple& t,
                    double s, const IntegratorConfig& cfg = {});

/// Inverse of apply_T, built by forward integration of the reversed
/// geodesic: from (P', u', v'), the geodesic from P' with initial tangent v'
/// retraces the original leg, reaching P at parameter s; carrying u', v'
/// back gives (P, -(transported v'), transported u').
/// apply_T(apply_T_inv(t, s), s) = t within integrator tolerance.
FrameTriple apply_T_inv(const ConnectionChart& chart, const FrameTriple& t,
                        double s, const IntegratorConfig& cfg = {});

/// All eight geodesic legs; throws DomainError naming the failing leg.
QuadVertices quad_vertices(const ConnectionChart& chart, const FrameTriple& t,
                           double s, const IntegratorConfig& cfg = {});

/// G_I = P4 - P0, componentwise in chart coordinates.
Vec gap_GI(const ConnectionChart& chart, const FrameTriple& t, double s,
           const IntegratorConfig& cfg = {});

/// G_II = P2 - Q2, componentwise in chart coordinates.
Vec gap_GII(const ConnectionChart& chart, const FrameTriple& t, double s,
            const IntegratorConfig& cfg = {});

/// Flow-commutator gap: F_I = psi_-s o phi_-s o psi_s o phi_s (x0) - x0,
/// where phi, psi are the flows of xi, eta.
Vec flow_gap_FI(const VectorField& xi, const VectorField& eta, const Vec& x0,
                double s, const IntegratorConfig& cfg = {},
                const Domain* domain = nullptr);

/// F_II = psi_s o phi_s (x0) - phi_s o psi_s (x0).
Vec flow_gap_FII(const VectorField& xi, const VectorField& eta, const Vec& x0,
                 double s, const IntegratorConfig& cfg = {},
                 const Domain* domain = nullptr);

} // namespace geogap
