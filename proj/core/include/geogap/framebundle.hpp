#pragma once

#include <optional>

#include "geogap/chart.hpp"

namespace geogap {

/// Point of the frame bundle: base coordinates plus an invertible frame
/// matrix whose columns are the components of the basis vectors u_j.
struct FramePoint {
  Vec x;
  Mat frame;
};

/// Determinant guard below which a frame is rejected as singular.
inline constexpr double frame_det_guard = 1e-9;

/// Tangent vector of the bundle, split into the pushforward part (along
/// d/dx^i) and the vertical part (components along d/dxdot^i_l).
struct BundleVector {
  Vec base;
  Mat vert;
};

/// The m-th frame flow field at y:
///   base^i     = frame[i][m]
///   vert[i][l] = -Gamma^i_jk(x) frame[j][l] frame[k][m].
/// Its integral curve projects to the geodesic with tangent u_m and
/// parallel-transports the whole frame along it.
BundleVector xi_field(const ConnectionChart& chart, int m, const FramePoint& y);

/// [xi_m, xi_n] at y by central finite differences of the field components
/// over the d + d^2 bundle coordinates, step h_scale*(1+|coord|) per
/// coordinate. Converges at order 2 in h_scale.
BundleVector bracket_numeric(const ConnectionChart& chart, int m, int n,
                             const FramePoint& y, double h_scale = 1e-4);

struct FrameBracketReport {
  /// Max over pairs m<n of |pi_*[xi_m,xi_n] + T(u_m, u_n)|_inf.
  double max_base_deviation = 0.0;
  /// Max over pairs of |vert * frame^-1 + R(u_m, u_n)|_inf; absent when the
  /// connection is not symmetric at x.
  std::optional<double> max_vertical_deviation;
  bool symmetric = false;
};

/// Checks T(u_m,u_n) = -pi_*[xi_m,xi_n] for all pairs, and for symmetric
/// connections also R(u_m,u_n) = -[xi_m,xi_n] with the vertical part read
/// as an endomorphism via the frame.
FrameBracketReport verify_frame_bracket(const ConnectionChart& chart,
                                        const FramePoint& y,
                                        double h_scale = 1e-4);

} // namespace geogap
