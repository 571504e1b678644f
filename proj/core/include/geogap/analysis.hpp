#pragma once

#include <optional>
#include <utility>

#include "geogap/quadgap.hpp"

namespace geogap {

/// Result of extrapolating a gap ladder to s -> 0.
struct LimitFit {
  Vec limit;              // c_n
  Vec next_coeff;         // c_{n+1}
  double residual_rms = 0.0;
  double slope_estimate = 0.0; // log-log slope of |gap|; NaN when gap == 0
  double condition = 0.0;      // condition estimate of the fit
};

using Samples = std::vector<std::pair<double, Vec>>;

/// Componentwise weighted least-squares fit of gap(s)/s^n against
/// c_n + c_{n+1} s + c_{n+2} s^2 with weights s^-4, so the smallest rungs
/// dominate and the first two remainder terms are absorbed. Requires >= 3
/// samples with distinct positive s; throws FitError (with the condition
/// number) when the normal equations are ill-conditioned.
LimitFit estimate_limit(const Samples& samples, int order);

/// s_max * 2^-k for k = 0..levels-1 (descending).
std::vector<double> geometric_ladder(double s_max = 0.1, int levels = 6);

/// Sampled gaps at a ladder of s values plus the extrapolated order-n limit
/// and residual diagnostics.
struct GapReport {
  std::vector<double> s_values; // strictly decreasing, >= 3 entries
  std::vector<Vec> gaps;
  int order = 2;
  Vec limit;
  Vec next_coeff;
  double residual_rms = 0.0;
  double slope_estimate = 0.0;
  double condition = 0.0;
};

GapReport make_gap_report(std::vector<double> s_values, std::vector<Vec> gaps,
                          int order);

/// Both gap functions over a ladder, eight geodesic legs per rung.
struct GapLadder {
  std::vector<double> s_values;
  std::vector<Vec> gap_gi;
  std::vector<Vec> gap_gii;
};

GapLadder sample_gaps(const ConnectionChart& chart, const FrameTriple& t,
                      const std::vector<double>& ladder,
                      const IntegratorConfig& cfg = {});

struct TorsionRecovery {
  Tensor3 torsion;
  double max_abs_entry = 0.0;
  double max_fit_residual = 0.0;
};

/// T(e_m, e_n) = -lim gap/s^2 for every basis pair, antisymmetrized.
TorsionRecovery torsion_from_gaps(const ConnectionChart& chart, const Vec& p,
                                  const IntegratorConfig& cfg = {},
                                  const std::vector<double>& ladder =
                                      geometric_ladder());

/// Guard threshold on measured torsion before curvature reconstruction.
inline constexpr double torsion_guard_threshold = 1e-3;

struct CurvatureRecovery {
  Tensor4 curvature;
  double max_fit_residual = 0.0;
  double torsion_guard_value = 0.0;
};

/// Full curvature tensor from measured gaps only, via
/// G(u,v) := R(u,v)(u+v) = 2 lim (P4 - P0)/s^3 and the recovery identities
///   R(u,v)u = (1/2) G(2u,v) - G(u,v)
///   R(u,v)w = (1/3)(R(u,v+w)(v+w) - R(u,v)v - R(u,w)w
///             + R(u+w,v)(u+w) - R(u,v)u - R(w,v)w).
/// Throws FitError when the measured torsion exceeds the guard.
CurvatureRecovery curvature_from_gaps(const ConnectionChart& chart,
                                      const Vec& p,
                                      const IntegratorConfig& cfg = {},
                                      const std::vector<double>& ladder =
                                          geometric_ladder());

struct BertrandPuiseuxResult {
  double kappa_hat = 0.0;
  std::vector<double> radii;
  std::vector<double> deficit_ratio; // (2 pi r - C(r)) / r^3
  LimitFit fit;
};

/// Geodesic-circle curvature estimate: shoot n g-orthonormalized unit
/// directions per radius, measure the circumference as the midpoint-metric
/// polygonal length of the endpoint loop times the chord-to-arc factor
/// (pi/n)/sin(pi/n), extrapolate the deficit ratio, kappa = 3 limit / pi.
/// Requires a metric chart with d = 2 and n_directions >= 64.
BertrandPuiseuxResult bertrand_puiseux(const ConnectionChart& chart,
                                       const Vec& p,
                                       const std::vector<double>& r_ladder,
                                       int n_directions,
                                       const IntegratorConfig& cfg = {});

struct TaylorP2 {
  Vec p2, q2;
};

/// Third-order polynomial expansion of the vertices P2 and Q2 in s, built
/// from Gamma and its first partials at the base point; Q2 swaps the roles
/// of u and v. Requires the chart to carry analytic/symbolic dgamma.
TaylorP2 taylor_p2(const ConnectionChart& chart, const FrameTriple& t,
                   double s);

} // namespace geogap
