#pragma once

#include <functional>

#include "geogap/chart.hpp"

namespace geogap {

/// Fixed-step classical 4th-order one-step scheme. Fixed (not adaptive) so
/// the gap ladders see smooth, systematic error behavior in s.
struct IntegratorConfig {
  int steps_per_unit = 512; // must be >= 16
};

/// Joint state integrated along a geodesic: position, the geodesic tangent,
/// and any number of vectors being parallel-transported.
struct TransportState {
  Vec x;
  Vec tangent;
  std::vector<Vec> carried;
};

/// Integrate the joint system
///   dx^i/ds      = tangent^i
///   dtangent^i/ds = -Gamma^i_jk tangent^j tangent^k
///   dcarried^i/ds = -Gamma^i_jk carried^j tangent^k
/// over parameter s in n = ceil(|s| * steps_per_unit) equal steps.
/// s = 0 returns state0 unchanged. Throws DomainError (with the exit step)
/// if the trajectory leaves the chart domain.
TransportState geodesic_transport(const ConnectionChart& chart,
                                  const TransportState& state0, double s,
                                  const IntegratorConfig& cfg = {});

using VectorField = std::function<Vec(const Vec&)>;

/// Integral-curve endpoint of `field` at time s from x0. The optional
/// domain is checked after every step.
Vec flow(const VectorField& field, const Vec& x0, double s,
         const IntegratorConfig& cfg = {}, const Domain* domain = nullptr);

} // namespace geogap
