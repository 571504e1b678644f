#include "geogap/odeflow.hpp"

#include <cmath>

namespace geogap {

namespace {

void validate(const IntegratorConfig& cfg) {
  if (cfg.steps_per_unit < 16)
    throw ConfigError("IntegratorConfig: steps_per_unit must be >= 16");
}

int step_count(double s, const IntegratorConfig& cfg) {
  return std::max(1, int(std::ceil(std::abs(s) * cfg.steps_per_unit)));
}

using Rhs = std::function<void(const Vec&, Vec&)>;

// Classical RK4 with n equal steps of size h; y is updated in place.
// Throws with the failing step appended to DomainError messages.
void rk4(const Rhs& rhs, Vec& y, double h, int n) {
  const std::size_t m = y.size();
  Vec k1(m), k2(m), k3(m), k4(m), tmp(m);
  for (int step = 0; step < n; ++step) {
    try {
      rhs(y, k1);
      for (std::size_t i = 0; i < m; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
      rhs(tmp, k2);
      for (std::size_t i = 0; i < m; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
      rhs(tmp, k3);
      for (std::size_t i = 0; i < m; ++i) tmp[i] = y[i] + h * k3[i];
      rhs(tmp, k4);
    } catch (const DomainError& e) {
      throw DomainError(std::string(e.what()) + " [integration step " +
                        std::to_string(step + 1) + "/" + std::to_string(n) +
                        "]");
    }
    for (std::size_t i = 0; i < m; ++i)
      y[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    if (!all_finite(y))
      throw Error("integration produced non-finite state at step " +
                  std::to_string(step + 1) + "/" + std::to_string(n));
  }
}

} // namespace

TransportState geodesic_transport(const ConnectionChart& chart,
                                  const TransportState& state0, double s,
                                  const IntegratorConfig& cfg) {
  validate(cfg);
  const int d = chart.dim;
  if (int(state0.x.size()) != d || int(state0.tangent.size()) != d)
    throw DimensionError("geodesic_transport: state dimension mismatch");
  for (const Vec& c : state0.carried)
    if (int(c.size()) != d)
      throw DimensionError("geodesic_transport: carried vector dimension mismatch");
  if (!chart.domain.contains(state0.x))
    throw DomainError("geodesic_transport: start point outside chart domain");
  if (s == 0.0) return state0;

  const std::size_t nc = state0.carried.size();
  Vec y(std::size_t(d) * (2 + nc));
  for (int i = 0; i < d; ++i) {
    y[i] = state0.x[i];
    y[d + i] = state0.tangent[i];
  }
  for (std::size_t c = 0; c < nc; ++c)
    for (int i = 0; i < d; ++i) y[(2 + c) * d + i] = state0.carried[c][i];

  Vec x(d), tan(d), car(d);
  auto rhs = [&](const Vec& yy, Vec& dy) {
    for (int i = 0; i < d; ++i) {
      x[i] = yy[i];
      tan[i] = yy[d + i];
    }
    const Tensor3 g = christoffels_at(chart, x);
    const Vec dtan = contract_gamma(g, tan, tan);
    for (int i = 0; i < d; ++i) {
      dy[i] = tan[i];
      dy[d + i] = -dtan[i];
    }
    for (std::size_t c = 0; c < nc; ++c) {
      for (int i = 0; i < d; ++i) car[i] = yy[(2 + c) * d + i];
      const Vec dcar = contract_gamma(g, car, tan);
      for (int i = 0; i < d; ++i) dy[(2 + c) * d + i] = -dcar[i];
    }
  };

  const int n = step_count(s, cfg);
  rk4(rhs, y, s / n, n);

  TransportState out;
  out.x.assign(y.begin(), y.begin() + d);
  out.tangent.assign(y.begin() + d, y.begin() + 2 * d);
  out.carried.resize(nc);
  for (std::size_t c = 0; c < nc; ++c)
    out.carried[c].assign(y.begin() + (2 + c) * d, y.begin() + (3 + c) * d);
  return out;
}

Vec flow(const VectorField& field, const Vec& x0, double s,
         const IntegratorConfig& cfg, const Domain* domain) {
  validate(cfg);
  if (s == 0.0) return x0;
  Vec y = x0;
  auto rhs = [&](const Vec& yy, Vec& dy) {
    dy = field(yy);
    if (dy.size() != yy.size())
      throw DimensionError("flow: field output dimension mismatch");
    if (domain && !domain->contains(yy))
      throw DomainError("flow: trajectory left the domain");
  };
  const int n = step_count(s, cfg);
  rk4(rhs, y, s / n, n);
  if (domain && !domain->contains(y))
    throw DomainError("flow: endpoint outside the domain");
  return y;
}

} // namespace geogap
