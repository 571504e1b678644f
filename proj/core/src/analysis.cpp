#include "geogap/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <set>

namespace geogap {

std::vector<double> geometric_ladder(double s_max, int levels) {
  if (!(s_max > 0.0) || levels < 1)
    throw ConfigError("geometric_ladder: need s_max > 0 and levels >= 1");
  std::vector<double> out(levels);
  for (int k = 0; k < levels; ++k) out[k] = s_max * std::pow(2.0, -k);
  return out;
}

LimitFit estimate_limit(const Samples& samples, int order) {
  const std::size_t m = samples.size();
  if (m < 3) throw FitError("estimate_limit: need at least 3 samples");
  std::set<double> distinct;
  std::size_t dim = samples.front().second.size();
  for (const auto& [s, g] : samples) {
    if (!(s > 0.0)) throw FitError("estimate_limit: s values must be positive");
    if (g.size() != dim)
      throw DimensionError("estimate_limit: inconsistent sample dimensions");
    distinct.insert(s);
  }
  if (distinct.size() != m)
    throw FitError("estimate_limit: s values must be distinct");

  // Weighted normal equations for y = c0 + c1 s + c2 s^2, w = (s_ref/s)^4.
  const double s_ref = *distinct.rbegin();
  long double n00 = 0, n01 = 0, n02 = 0, n11 = 0, n12 = 0, n22 = 0;
  for (const auto& [s, g] : samples) {
    const long double w = std::pow((long double)(s_ref / s), 4.0L);
    const long double s1 = s, s2 = s1 * s1;
    n00 += w;
    n01 += w * s1;
    n02 += w * s2;
    n11 += w * s2;
    n12 += w * s2 * s1;
    n22 += w * s2 * s2;
  }
  const long double nmat[3][3] = {{n00, n01, n02}, {n01, n11, n12}, {n02, n12, n22}};

  // Explicit 3x3 inverse; condition estimated as ||N||_F ||N^-1||_F.
  const long double det =
      n00 * (n11 * n22 - n12 * n12) - n01 * (n01 * n22 - n12 * n02) +
      n02 * (n01 * n12 - n11 * n02);
  if (det == 0.0L || !std::isfinite((double)det))
    throw FitError("estimate_limit: singular normal equations");
  long double inv[3][3];
  inv[0][0] = (n11 * n22 - n12 * n12) / det;
  inv[0][1] = (n02 * n12 - n01 * n22) / det;
  inv[0][2] = (n01 * n12 - n02 * n11) / det;
  inv[1][1] = (n00 * n22 - n02 * n02) / det;
  inv[1][2] = (n01 * n02 - n00 * n12) / det;
  inv[2][2] = (n00 * n11 - n01 * n01) / det;
  inv[1][0] = inv[0][1];
  inv[2][0] = inv[0][2];
  inv[2][1] = inv[1][2];
  long double fro_n = 0, fro_i = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      fro_n += nmat[i][j] * nmat[i][j];
      fro_i += inv[i][j] * inv[i][j];
    }
  const double condition = double(std::sqrt(fro_n) * std::sqrt(fro_i));
  if (!(condition < 1e16))
    throw FitError("estimate_limit: ill-conditioned fit (condition ~ " +
                   std::to_string(condition) + ")");

  LimitFit fit;
  fit.condition = condition;
  fit.limit.assign(dim, 0.0);
  fit.next_coeff.assign(dim, 0.0);
  std::vector<std::array<long double, 3>> coeffs(dim);
  for (std::size_t c = 0; c < dim; ++c) {
    long double b0 = 0, b1 = 0, b2 = 0;
    for (const auto& [s, g] : samples) {
      const long double w = std::pow((long double)(s_ref / s), 4.0L);
      const long double y = (long double)g[c] / std::pow((long double)s, order);
      b0 += w * y;
      b1 += w * y * s;
      b2 += w * y * s * s;
    }
    for (int r = 0; r < 3; ++r)
      coeffs[c][r] = inv[r][0] * b0 + inv[r][1] * b1 + inv[r][2] * b2;
    fit.limit[c] = double(coeffs[c][0]);
    fit.next_coeff[c] = double(coeffs[c][1]);
  }

  // Unweighted RMS residual in y space.
  long double ss = 0;
  for (const auto& [s, g] : samples)
    for (std::size_t c = 0; c < dim; ++c) {
      const long double y = (long double)g[c] / std::pow((long double)s, order);
      const long double yhat =
          coeffs[c][0] + coeffs[c][1] * s + coeffs[c][2] * s * s;
      ss += (y - yhat) * (y - yhat);
    }
  fit.residual_rms = double(std::sqrt(ss / (long double)(m * dim)));

  // Log-log slope of |gap| against s.
  std::vector<std::pair<double, double>> pts;
  for (const auto& [s, g] : samples) {
    const double norm = vnorm2(g);
    if (norm > 0.0) pts.emplace_back(std::log(s), std::log(norm));
  }
  if (pts.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto& [x, y] : pts) {
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double n = double(pts.size());
    fit.slope_estimate = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  } else {
    fit.slope_estimate = std::numeric_limits<double>::quiet_NaN();
  }
  return fit;
}

GapReport make_gap_report(std::vector<double> s_values, std::vector<Vec> gaps,
                          int order) {
  if (s_values.size() != gaps.size())
    throw DimensionError("make_gap_report: s/gap count mismatch");
  if (s_values.size() < 3)
    throw FitError("make_gap_report: need at least 3 ladder rungs");
  for (std::size_t i = 1; i < s_values.size(); ++i)
    if (!(s_values[i] < s_values[i - 1]))
      throw FitError("make_gap_report: s_values must be strictly decreasing");
  Samples samples;
  for (std::size_t i = 0; i < s_values.size(); ++i)
    samples.emplace_back(s_values[i], gaps[i]);
  const LimitFit fit = estimate_limit(samples, order);
  GapReport rep;
  rep.s_values = std::move(s_values);
  rep.gaps = std::move(gaps);
  rep.order = order;
  rep.limit = fit.limit;
  rep.next_coeff = fit.next_coeff;
  rep.residual_rms = fit.residual_rms;
  rep.slope_estimate = fit.slope_estimate;
  rep.condition = fit.condition;
  return rep;
}

GapLadder sample_gaps(const ConnectionChart& chart, const FrameTriple& t,
                      const std::vector<double>& ladder,
                      const IntegratorConfig& cfg) {
  GapLadder out;
  for (const double s : ladder) {
    const QuadVertices q = quad_vertices(chart, t, s, cfg);
    out.s_values.push_back(s);
    out.gap_gi.push_back(vsub(q.P4, q.P0));
    out.gap_gii.push_back(vsub(q.P2, q.Q2));
  }
  return out;
}

namespace {

Vec basis_vec(int d, int m, double scale = 1.0) {
  Vec e(d, 0.0);
  e[m] = scale;
  return e;
}

} // namespace

TorsionRecovery torsion_from_gaps(const ConnectionChart& chart, const Vec& p,
                                  const IntegratorConfig& cfg,
                                  const std::vector<double>& ladder) {
  const int d = chart.dim;
  TorsionRecovery rec;
  rec.torsion = Tensor3(d);
  for (int m = 0; m < d; ++m)
    for (int n = m + 1; n < d; ++n) {
      FrameTriple t{p, basis_vec(d, m), basis_vec(d, n)};
      Samples samples;
      for (const double s : ladder)
        samples.emplace_back(s, gap_GII(chart, t, s, cfg));
      const LimitFit fit = estimate_limit(samples, 2);
      rec.max_fit_residual = std::max(rec.max_fit_residual, fit.residual_rms);
      for (int i = 0; i < d; ++i) {
        rec.torsion(i, m, n) = -fit.limit[i];
        rec.torsion(i, n, m) = fit.limit[i];
        rec.max_abs_entry = std::max(rec.max_abs_entry, std::abs(fit.limit[i]));
      }
    }
  return rec;
}

namespace {

// Memoized measurement of G(u, v) := R(u,v)(u+v) = 2 lim (P4-P0)/s^3,
// for u, v given as integer combinations of basis vectors.
class GapCurvatureMeter {
public:
  GapCurvatureMeter(const ConnectionChart& chart, const Vec& p,
                    const IntegratorConfig& cfg,
                    const std::vector<double>& ladder)
      : chart_(chart), p_(p), cfg_(cfg), ladder_(ladder) {}

  const Vec& g(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> key = a;
    key.insert(key.end(), b.begin(), b.end());
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    FrameTriple t{p_, to_vec(a), to_vec(b)};
    Samples samples;
    for (const double s : ladder_)
      samples.emplace_back(s, gap_GI(chart_, t, s, cfg_));
    const LimitFit fit = estimate_limit(samples, 3);
    max_residual = std::max(max_residual, fit.residual_rms);
    return memo_.emplace(std::move(key), vscale(2.0, fit.limit)).first->second;
  }

  double max_residual = 0.0;

private:
  Vec to_vec(const std::vector<int>& coeff) const {
    Vec v(coeff.size());
    for (std::size_t i = 0; i < coeff.size(); ++i) v[i] = coeff[i];
    return v;
  }

  const ConnectionChart& chart_;
  Vec p_;
  IntegratorConfig cfg_;
  std::vector<double> ladder_;
  std::map<std::vector<int>, Vec> memo_;
};

std::vector<int> combo(int d, std::initializer_list<std::pair<int, int>> parts) {
  std::vector<int> c(d, 0);
  for (auto [idx, coeff] : parts) c[idx] += coeff;
  return c;
}

} // namespace

CurvatureRecovery curvature_from_gaps(const ConnectionChart& chart,
                                      const Vec& p, const IntegratorConfig& cfg,
                                      const std::vector<double>& ladder) {
  const int d = chart.dim;
  const TorsionRecovery tor = torsion_from_gaps(chart, p, cfg, ladder);
  if (tor.max_abs_entry > torsion_guard_threshold)
    throw FitError("curvature_from_gaps: torsion guard tripped (measured " +
                   std::to_string(tor.max_abs_entry) + " > " +
                   std::to_string(torsion_guard_threshold) + ")");

  GapCurvatureMeter meter(chart, p, cfg, ladder);
  // R(a,b)a and R(a,b)b from the first recovery identity.
  auto r_aba = [&](const std::vector<int>& a, const std::vector<int>& a2,
                   const std::vector<int>& b) {
    // a2 must be 2*a
    return vsub(vscale(0.5, meter.g(a2, b)), meter.g(a, b));
  };
  auto r_abb = [&](const std::vector<int>& a, const std::vector<int>& a2,
                   const std::vector<int>& b) {
    return vsub(vscale(2.0, meter.g(a, b)), vscale(0.5, meter.g(a2, b)));
  };

  CurvatureRecovery rec;
  rec.curvature = Tensor4(d);
  rec.torsion_guard_value = tor.max_abs_entry;
  for (int q = 0; q < d; ++q)
    for (int r = q + 1; r < d; ++r) {
      const auto u = combo(d, {{q, 1}});
      const auto u2 = combo(d, {{q, 2}});
      const auto v = combo(d, {{r, 1}});
      const auto v2 = combo(d, {{r, 2}});
      const Vec ruvu = r_aba(u, u2, v);
      const Vec ruvv = r_abb(u, u2, v);
      for (int i = 0; i < d; ++i) {
        rec.curvature(i, q, q, r) = ruvu[i];
        rec.curvature(i, q, r, q) = -ruvu[i];
        rec.curvature(i, r, q, r) = ruvv[i];
        rec.curvature(i, r, r, q) = -ruvv[i];
      }
      for (int pidx = 0; pidx < d; ++pidx) {
        if (pidx == q || pidx == r) continue;
        const auto w = combo(d, {{pidx, 1}});
        const auto w2 = combo(d, {{pidx, 2}});
        const auto vw = combo(d, {{r, 1}, {pidx, 1}});
        const auto vw2 = combo(d, {{r, 2}, {pidx, 2}});
        const auto uw = combo(d, {{q, 1}, {pidx, 1}});
        const auto uw2 = combo(d, {{q, 2}, {pidx, 2}});
        // R(u,v)w = 1/3 ( R(u,v+w)(v+w) - R(u,v)v - R(u,w)w
        //               + R(u+w,v)(u+w) - R(u,v)u - R(w,v)w )
        Vec acc = r_abb(u, u2, vw);    // R(u, v+w)(v+w)
        acc = vsub(acc, ruvv);         // - R(u,v)v
        acc = vsub(acc, r_abb(u, u2, w)); // - R(u,w)w
        acc = vadd(acc, r_aba(uw, uw2, v)); // + R(u+w,v)(u+w)
        acc = vsub(acc, ruvu);         // - R(u,v)u
        acc = vsub(acc, r_aba(w, w2, v)); // - R(w,v)w
        const Vec ruvw = vscale(1.0 / 3.0, acc);
        for (int i = 0; i < d; ++i) {
          rec.curvature(i, pidx, q, r) = ruvw[i];
          rec.curvature(i, pidx, r, q) = -ruvw[i];
        }
      }
    }
  rec.max_fit_residual = std::max(meter.max_residual, tor.max_fit_residual);
  return rec;
}

BertrandPuiseuxResult bertrand_puiseux(const ConnectionChart& chart,
                                       const Vec& p,
                                       const std::vector<double>& r_ladder,
                                       int n_directions,
                                       const IntegratorConfig& cfg) {
  if (chart.dim != 2)
    throw DimensionError("bertrand_puiseux: chart dimension must be 2");
  if (!chart.metric)
    throw ConfigError("bertrand_puiseux: chart has no metric");
  if (n_directions < 64)
    throw ConfigError("bertrand_puiseux: need at least 64 directions");

  const Mat g0 = chart.metric(p);
  auto inner = [](const Mat& g, const Vec& a, const Vec& b) {
    double s = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) s += g(i, j) * a[i] * b[j];
    return s;
  };
  // Gram-Schmidt of the coordinate basis under g(p).
  Vec e1 = {1.0, 0.0}, e2 = {0.0, 1.0};
  Vec b1 = vscale(1.0 / std::sqrt(inner(g0, e1, e1)), e1);
  Vec b2 = vsub(e2, vscale(inner(g0, e2, b1), b1));
  b2 = vscale(1.0 / std::sqrt(inner(g0, b2, b2)), b2);

  const int n = n_directions;
  const double two_pi = 2.0 * std::numbers::pi;
  const double arc_factor =
      (std::numbers::pi / n) / std::sin(std::numbers::pi / n);

  BertrandPuiseuxResult out;
  Samples samples;
  std::vector<Vec> ring(n);
  for (const double r : r_ladder) {
    for (int j = 0; j < n; ++j) {
      const double alpha = two_pi * j / n;
      Vec dir = vscale(std::cos(alpha), b1);
      vaxpy(std::sin(alpha), b2, dir);
      ring[j] = geodesic_transport(chart, {p, dir, {}}, r, cfg).x;
    }
    double circumference = 0.0;
    for (int j = 0; j < n; ++j) {
      const Vec& a = ring[j];
      const Vec& b = ring[(j + 1) % n];
      const Vec mid = vscale(0.5, vadd(a, b));
      const Vec delta = vsub(b, a);
      circumference += std::sqrt(inner(chart.metric(mid), delta, delta));
    }
    circumference *= arc_factor;
    const double ratio = (two_pi * r - circumference) / (r * r * r);
    out.radii.push_back(r);
    out.deficit_ratio.push_back(ratio);
    samples.emplace_back(r, Vec{ratio});
  }
  out.fit = estimate_limit(samples, 0);
  out.kappa_hat = 3.0 * out.fit.limit[0] / std::numbers::pi;
  return out;
}

namespace {

// One vertex of the third-order expansion; Q2 is the same with
// u and v interchanged.
Vec taylor_vertex(int d, const Vec& x0, const Tensor3& g, const Tensor4& dg,
                  const Vec& u, const Vec& v, double s) {
  Vec out = x0;
  vaxpy(s, vadd(u, v), out);
  // -(s^2/2) (Gamma(u,u) + Gamma(v,v)) - s^2 Gamma(v,u)
  vaxpy(-0.5 * s * s, vadd(contract_gamma(g, u, u), contract_gamma(g, v, v)),
        out);
  vaxpy(-s * s, contract_gamma(g, v, u), out);
  // (s^3/6) (-Gamma^i_pq,r + Gamma^i_jr Gamma^j_pq + Gamma^i_rk Gamma^k_pq)
  //         (u^p u^q u^r + v^p v^q v^r)
  for (int i = 0; i < d; ++i) {
    double pure = 0.0, mixed = 0.0;
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        for (int c = 0; c < d; ++c) {
          double cp = -dg(i, a, b, c);
          double cm = -dg(i, b, c, a);
          for (int j = 0; j < d; ++j) {
            cp += g(i, j, c) * g(j, a, b) + g(i, c, j) * g(j, a, b);
            cm += g(i, j, b) * g(j, c, a) + g(i, c, j) * g(j, b, a);
          }
          pure += cp * (u[a] * u[b] * u[c] + v[a] * v[b] * v[c]);
          mixed += cm * (u[a] * u[b] * v[c] + u[a] * v[b] * v[c]);
        }
    out[i] += (s * s * s / 6.0) * pure + (s * s * s / 2.0) * mixed;
  }
  return out;
}

} // namespace

TaylorP2 taylor_p2(const ConnectionChart& chart, const FrameTriple& t,
                   double s) {
  if (!chart.dgamma)
    throw ConfigError("taylor_p2: chart has no analytic dgamma");
  const int d = chart.dim;
  const Tensor3 g = christoffels_at(chart, t.P);
  const Tensor4 dg = chart.dgamma(t.P);
  TaylorP2 out;
  out.p2 = taylor_vertex(d, t.P, g, dg, t.u, t.v, s);
  out.q2 = taylor_vertex(d, t.P, g, dg, t.v, t.u, s);
  return out;
}

} // namespace geogap
