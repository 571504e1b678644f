#include "geogap/quadgap.hpp"

namespace geogap {

FrameTriple apply_T(const ConnectionChart& chart, const FrameTriple& t,
                    double s, const IntegratorConfig& cfg) {
  TransportState st{t.P, t.u, {t.v}};
  st = geodesic_transport(chart, st, s, cfg);
  // u' = transported v; v' = -transported u = -gamma_dot(s)
  return FrameTriple{st.x, st.carried[0], vscale(-1.0, st.tangent)};
}

FrameTriple apply_T_inv(const ConnectionChart& chart, const FrameTriple& t,
                        double s, const IntegratorConfig& cfg) {
  TransportState st{t.P, t.v, {t.u}};
  st = geodesic_transport(chart, st, s, cfg);
  // Reversed leg: endpoint is the preimage point, the transported geodesic
  // tangent is the transported v', the carried vector the transported u'.
  return FrameTriple{st.x, vscale(-1.0, st.tangent), st.carried[0]};
}

namespace {

FrameTriple step_named(const ConnectionChart& chart, const FrameTriple& t,
                       double s, const IntegratorConfig& cfg, bool inverse,
                       const char* leg) {
  try {
    return inverse ? apply_T_inv(chart, t, s, cfg)
                   : apply_T(chart, t, s, cfg);
  } catch (const DomainError& e) {
    throw DomainError(std::string("leg ") + leg + ": " + e.what());
  }
}

} // namespace

QuadVertices quad_vertices(const ConnectionChart& chart, const FrameTriple& t,
                           double s, const IntegratorConfig& cfg) {
  QuadVertices q;
  q.s = s;
  q.P0 = t.P;
  FrameTriple cur = step_named(chart, t, s, cfg, false, "P0->P1");
  q.P1 = cur.P;
  cur = step_named(chart, cur, s, cfg, false, "P1->P2");
  q.P2 = cur.P;
  cur = step_named(chart, cur, s, cfg, false, "P2->P3");
  q.P3 = cur.P;
  cur = step_named(chart, cur, s, cfg, false, "P3->P4");
  q.P4 = cur.P;
  cur = step_named(chart, t, s, cfg, true, "P0->Q1");
  q.Q1 = cur.P;
  cur = step_named(chart, cur, s, cfg, true, "Q1->Q2");
  q.Q2 = cur.P;
  return q;
}

Vec gap_GI(const ConnectionChart& chart, const FrameTriple& t, double s,
           const IntegratorConfig& cfg) {
  const QuadVertices q = quad_vertices(chart, t, s, cfg);
  return vsub(q.P4, q.P0);
}

Vec gap_GII(const ConnectionChart& chart, const FrameTriple& t, double s,
            const IntegratorConfig& cfg) {
  const QuadVertices q = quad_vertices(chart, t, s, cfg);
  return vsub(q.P2, q.Q2);
}

Vec flow_gap_FI(const VectorField& xi, const VectorField& eta, const Vec& x0,
                double s, const IntegratorConfig& cfg, const Domain* domain) {
  Vec p = flow(xi, x0, s, cfg, domain);
  p = flow(eta, p, s, cfg, domain);
  p = flow(xi, p, -s, cfg, domain);
  p = flow(eta, p, -s, cfg, domain);
  return vsub(p, x0);
}

Vec flow_gap_FII(const VectorField& xi, const VectorField& eta, const Vec& x0,
                 double s, const IntegratorConfig& cfg, const Domain* domain) {
  const Vec p2 = flow(eta, flow(xi, x0, s, cfg, domain), s, cfg, domain);
  const Vec q2 = flow(xi, flow(eta, x0, s, cfg, domain), s, cfg, domain);
  return vsub(p2, q2);
}

} // namespace geogap
