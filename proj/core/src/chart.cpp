#include "geogap/chart.hpp"

#include <cmath>
#include <cstdio>
#include <memory>
#include <numbers>

#include "geogap/expr.hpp"

namespace geogap {

bool Domain::contains(const Vec& x) const {
  if (bounds.empty()) return all_finite(x);
  if (bounds.size() != x.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > bounds[i].lo && x[i] < bounds[i].hi)) return false;
  }
  return true;
}

namespace {

std::string point_str(const Vec& x) {
  std::string s = "(";
  char buf[32];
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.6g", x[i]);
    s += buf;
    if (i + 1 < x.size()) s += ", ";
  }
  return s + ")";
}

void check_point(const ConnectionChart& chart, const Vec& x) {
  if (int(x.size()) != chart.dim)
    throw DimensionError("chart '" + chart.name + "': point dimension " +
                         std::to_string(x.size()) + " != " +
                         std::to_string(chart.dim));
  if (!all_finite(x))
    throw DomainError("chart '" + chart.name + "': non-finite point");
  if (!chart.domain.contains(x))
    throw DomainError("chart '" + chart.name + "': point " + point_str(x) +
                      " outside domain");
}

} // namespace

Tensor3 christoffels_at(const ConnectionChart& chart, const Vec& x) {
  check_point(chart, x);
  return chart.gamma(x);
}

Tensor4 christoffel_partials_at(const ConnectionChart& chart, const Vec& x) {
  check_point(chart, x);
  if (chart.dgamma) return chart.dgamma(x);
  const int d = chart.dim;
  Tensor4 dg(d);
  for (int l = 0; l < d; ++l) {
    double h = chart.fd_scale * (1.0 + std::abs(x[l]));
    Vec xp = x, xm = x;
    xp[l] += h;
    xm[l] -= h;
    h = 0.5 * (xp[l] - xm[l]); // actual step after rounding
    Tensor3 gp, gm;
    try {
      gp = christoffels_at(chart, xp);
      gm = christoffels_at(chart, xm);
    } catch (const DomainError& e) {
      throw DomainError(std::string("finite-difference stencil exits domain: ") +
                        e.what());
    }
    const double inv2h = 1.0 / (2.0 * h);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
          dg(i, j, k, l) = (gp(i, j, k) - gm(i, j, k)) * inv2h;
  }
  return dg;
}

Tensor3 torsion_at(const ConnectionChart& chart, const Vec& x) {
  const Tensor3 g = christoffels_at(chart, x);
  const int d = chart.dim;
  Tensor3 t(d);
  for (int i = 0; i < d; ++i)
    for (int m = 0; m < d; ++m)
      for (int n = 0; n < d; ++n) t(i, m, n) = g(i, n, m) - g(i, m, n);
  return t;
}

Tensor4 curvature_at(const ConnectionChart& chart, const Vec& x) {
  const Tensor3 g = christoffels_at(chart, x);
  const Tensor4 dg = christoffel_partials_at(chart, x);
  const int d = chart.dim;
  Tensor4 r(d);
  for (int i = 0; i < d; ++i)
    for (int p = 0; p < d; ++p)
      for (int q = 0; q < d; ++q)
        for (int s = 0; s < d; ++s) {
          double v = dg(i, p, s, q) - dg(i, p, q, s);
          for (int j = 0; j < d; ++j)
            v += g(i, q, j) * g(j, p, s) - g(i, s, j) * g(j, p, q);
          r(i, p, q, s) = v;
        }
  return r;
}

double gaussian_curvature(const ConnectionChart& chart, const Vec& x) {
  if (chart.dim != 2)
    throw DimensionError("gaussian_curvature: chart dimension must be 2");
  if (!chart.metric)
    throw ConfigError("gaussian_curvature: chart has no metric");
  check_point(chart, x);
  const Mat g = chart.metric(x);
  const Tensor4 r = curvature_at(chart, x);
  const Vec e1 = {1.0, 0.0}, e2 = {0.0, 1.0};
  const Vec z = curvature_apply(r, e1, e2, e2); // R(e1,e2)e2
  const double det = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
  if (det == 0.0) throw SingularError("gaussian_curvature: degenerate metric");
  return (z[0] * g(0, 0) + z[1] * g(1, 0)) / det;
}

bool is_symmetric_at(const ConnectionChart& chart, const Vec& x, double tol) {
  const Tensor3 t = torsion_at(chart, x);
  const int d = chart.dim;
  for (int i = 0; i < d; ++i)
    for (int m = 0; m < d; ++m)
      for (int n = 0; n < d; ++n)
        if (std::abs(t(i, m, n)) > tol) return false;
  return true;
}

// ------------------------------------------------------------- builtins

namespace {

std::string num_literal(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

} // namespace

ConnectionChart make_euclidean(int d) {
  if (d < 1) throw ConfigError("euclidean: dimension must be >= 1");
  std::vector<MetricEntry> g;
  for (int i = 0; i < d; ++i) g.push_back({i, i, "1"});
  ConnectionChart chart = levi_civita(d, g, {}, "euclidean(" + std::to_string(d) + ")");
  return chart;
}

ConnectionChart make_sphere(double radius) {
  if (!(radius > 0.0)) throw ConfigError("sphere: radius must be positive");
  const std::string r2 = num_literal(radius * radius);
  Domain dom;
  dom.bounds = {{0.2, std::numbers::pi - 0.2}, {}};
  return levi_civita(2,
                     {{0, 0, r2}, {1, 1, r2 + "*sin(x1)^2"}},
                     dom, "sphere(r=" + num_literal(radius) + ")");
}

ConnectionChart make_hyperboloid(double radius) {
  if (!(radius > 0.0)) throw ConfigError("hyperboloid: radius must be positive");
  const std::string r2 = num_literal(radius * radius);
  const std::string r = num_literal(radius);
  Domain dom;
  dom.bounds = {{0.05, 4.0}, {}};
  return levi_civita(2,
                     {{0, 0, "1"}, {1, 1, r2 + "*sinh(x1/" + r + ")^2"}},
                     dom, "hyperboloid(r=" + r + ")");
}

ConnectionChart make_constant_torsion(double c) {
  return make_custom_gamma(2, {{0, 0, 1, num_literal(c)}}, {},
                           "constant_torsion(c=" + num_literal(c) + ")");
}

// Shared evaluation table for expression-backed Christoffel fields.
struct GammaTable {
  int d = 0;
  std::vector<expr::Expr> gamma;  // d^3, index (i*d+j)*d+k
  std::vector<expr::Expr> dgamma; // d^4, index ((i*d+j)*d+k)*d+l
};

ConnectionChart make_custom_gamma(int d, const std::vector<GammaEntry>& entries,
                                  Domain domain, std::string name) {
  if (d < 1 || d > 16)
    throw ConfigError("custom gamma: dimension must be in [1, 16]");
  auto table = std::make_shared<GammaTable>();
  table->d = d;
  table->gamma.assign(std::size_t(d) * d * d, expr::number(0.0));
  for (const auto& e : entries) {
    if (e.i < 0 || e.i >= d || e.j < 0 || e.j >= d || e.k < 0 || e.k >= d)
      throw ConfigError("custom gamma: index out of range");
    table->gamma[(std::size_t(e.i) * d + e.j) * d + e.k] =
        expr::parse(e.expr, d);
  }
  table->dgamma.resize(std::size_t(d) * d * d * d);
  for (std::size_t idx = 0; idx < table->gamma.size(); ++idx)
    for (int l = 0; l < d; ++l)
      table->dgamma[idx * d + l] = expr::diff(table->gamma[idx], l);

  ConnectionChart chart;
  chart.dim = d;
  chart.domain = std::move(domain);
  chart.name = std::move(name);
  chart.gamma = [table](const Vec& x) {
    const int n = table->d;
    Tensor3 g(n);
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k, ++idx)
          g(i, j, k) = expr::eval(table->gamma[idx], x);
    return g;
  };
  chart.dgamma = [table](const Vec& x) {
    const int n = table->d;
    Tensor4 dg(n);
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l, ++idx)
            dg(i, j, k, l) = expr::eval(table->dgamma[idx], x);
    return dg;
  };
  return chart;
}

namespace {

// Symbolic tables for a Levi-Civita chart. Metric entries are stored once
// per unordered pair so that Gamma^i_jk and Gamma^i_kj evaluate through
// identical expressions and the torsion vanishes exactly.
struct MetricTable {
  int d = 0;
  std::vector<expr::Expr> g;   // d^2, symmetric storage
  std::vector<expr::Expr> dg;  // d^3: dg[(l*d+j)*d+k] = d g_lj / d x_k
  std::vector<expr::Expr> d2g; // d^4: second partials

  const expr::Expr& gexpr(int i, int j) const { return g[std::size_t(i) * d + j]; }

  Mat eval_g(const Vec& x) const {
    Mat m(d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m(i, j) = expr::eval(gexpr(i, j), x);
    return m;
  }
};

} // namespace

ConnectionChart levi_civita(int d, const std::vector<MetricEntry>& entries,
                            Domain domain, std::string name) {
  if (d < 1 || d > 16)
    throw ConfigError("levi_civita: dimension must be in [1, 16]");
  auto table = std::make_shared<MetricTable>();
  table->d = d;
  table->g.assign(std::size_t(d) * d, expr::number(0.0));
  for (const auto& e : entries) {
    if (e.i < 0 || e.i >= d || e.j < 0 || e.j >= d)
      throw ConfigError("levi_civita: metric index out of range");
    const expr::Expr ex = expr::parse(e.expr, d);
    table->g[std::size_t(e.i) * d + e.j] = ex;
    table->g[std::size_t(e.j) * d + e.i] = ex; // same tree both slots
  }
  table->dg.resize(std::size_t(d) * d * d);
  for (int l = 0; l < d; ++l)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        table->dg[(std::size_t(l) * d + j) * d + k] =
            expr::diff(table->gexpr(l, j), k);
  table->d2g.resize(std::size_t(d) * d * d * d);
  for (std::size_t idx = 0; idx < table->dg.size(); ++idx)
    for (int m = 0; m < d; ++m)
      table->d2g[idx * d + m] = expr::diff(table->dg[idx], m);

  auto eval_dg = [](const MetricTable& t, const Vec& x, int l, int j, int k) {
    return expr::eval(t.dg[(std::size_t(l) * t.d + j) * t.d + k], x);
  };

  ConnectionChart chart;
  chart.dim = d;
  chart.domain = std::move(domain);
  chart.name = std::move(name);
  chart.metric = [table](const Vec& x) { return table->eval_g(x); };
  chart.gamma = [table, eval_dg](const Vec& x) {
    const int n = table->d;
    Mat ginv;
    try {
      ginv = minverse(table->eval_g(x));
    } catch (const SingularError&) {
      throw SingularError("levi_civita: singular metric at " + point_str(x));
    }
    Tensor3 gamma(n);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          const double s = eval_dg(*table, x, l, j, k) +
                           eval_dg(*table, x, l, k, j) -
                           eval_dg(*table, x, j, k, l);
          for (int i = 0; i < n; ++i) gamma(i, j, k) += 0.5 * ginv(i, l) * s;
        }
      }
    return gamma;
  };
  chart.dgamma = [table, eval_dg](const Vec& x) {
    const int n = table->d;
    const Mat g = table->eval_g(x);
    Mat ginv;
    try {
      ginv = minverse(g);
    } catch (const SingularError&) {
      throw SingularError("levi_civita: singular metric at " + point_str(x));
    }
    // dG[a][b][m] = d g_ab / d x_m ; dGinv^il_m = -g^ia dG[a][b][m] g^bl
    Tensor3 dG(n), dginv(n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int m = 0; m < n; ++m) dG(a, b, m) = eval_dg(*table, x, a, b, m);
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l)
        for (int m = 0; m < n; ++m) {
          double v = 0.0;
          for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
              v -= ginv(i, a) * dG(a, b, m) * ginv(b, l);
          dginv(i, l, m) = v;
        }
    auto eval_d2g = [&](int l, int j, int k, int m) {
      return expr::eval(
          table->d2g[((std::size_t(l) * n + j) * n + k) * n + m], x);
    };
    Tensor4 out(n);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int m = 0; m < n; ++m) {
          for (int l = 0; l < n; ++l) {
            const double s = dG(l, j, k) + dG(l, k, j) - dG(j, k, l);
            const double ds = eval_d2g(l, j, k, m) + eval_d2g(l, k, j, m) -
                              eval_d2g(j, k, l, m);
            for (int i = 0; i < n; ++i)
              out(i, j, k, m) += 0.5 * (dginv(i, l, m) * s + ginv(i, l) * ds);
          }
        }
    return out;
  };
  return chart;
}

} // namespace geogap
