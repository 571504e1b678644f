#include "geogap/groundtruth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace geogap::oracle {

namespace {

Mat eta() {
  Mat e = Mat::identity(3);
  e(0, 0) = -1.0;
  return e;
}

Mat transpose(const Mat& m) {
  Mat t(m.dim());
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) t(i, j) = m(j, i);
  return t;
}

} // namespace

Mat step_matrix(Model model, double s) {
  Mat m(3);
  if (model == Model::Sphere) {
    const double c = std::cos(s), sn = std::sin(s);
    m(0, 0) = c;  m(0, 1) = 0.0; m(0, 2) = sn;
    m(1, 0) = sn; m(1, 1) = 0.0; m(1, 2) = -c;
    m(2, 0) = 0.0; m(2, 1) = 1.0; m(2, 2) = 0.0;
  } else {
    const double c = std::cosh(s), sn = std::sinh(s);
    m(0, 0) = c;  m(0, 1) = 0.0; m(0, 2) = -sn;
    m(1, 0) = sn; m(1, 1) = 0.0; m(1, 2) = -c;
    m(2, 0) = 0.0; m(2, 1) = 1.0; m(2, 2) = 0.0;
  }
  return m;
}

Mat step_matrix_inverse(Model model, double s) {
  const Mat m = step_matrix(model, s);
  if (model == Model::Sphere) return transpose(m);
  return mmul(mmul(eta(), transpose(m)), eta());
}

QuadVertices oracle_vertices(Model model, double radius, double s) {
  if (!(radius > 0.0)) throw ConfigError("oracle_vertices: radius must be positive");
  const Mat step = step_matrix(model, s / radius);
  const Mat inv = step_matrix_inverse(model, s / radius);
  QuadVertices q;
  q.s = s;
  Mat acc = Mat::identity(3);
  q.P0 = vscale(radius, acc.col(0));
  acc = mmul(acc, step);
  q.P1 = vscale(radius, acc.col(0));
  acc = mmul(acc, step);
  q.P2 = vscale(radius, acc.col(0));
  acc = mmul(acc, step);
  q.P3 = vscale(radius, acc.col(0));
  acc = mmul(acc, step);
  q.P4 = vscale(radius, acc.col(0));
  acc = inv;
  q.Q1 = vscale(radius, acc.col(0));
  acc = mmul(acc, inv);
  q.Q2 = vscale(radius, acc.col(0));
  return q;
}

Vec oracle_gap_limits(Model model, double radius) {
  if (!(radius > 0.0)) throw ConfigError("oracle_gap_limits: radius must be positive");
  const double kappa =
      (model == Model::Sphere ? 1.0 : -1.0) / (radius * radius);
  return {0.0, 0.5 * kappa, -0.5 * kappa};
}

double group_defect(Model model, const Mat& x) {
  if (x.dim() != 3) throw DimensionError("group_defect: expected 3x3 matrix");
  Mat target = model == Model::Sphere ? Mat::identity(3) : eta();
  Mat prod = model == Model::Sphere
                 ? mmul(transpose(x), x)
                 : mmul(mmul(transpose(x), eta()), x);
  double defect = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      defect = std::max(defect, std::abs(prod(i, j) - target(i, j)));
  if (model == Model::Sphere) {
    defect = std::max(defect, std::abs(mdet(x) - 1.0));
  } else if (!(x(0, 0) > 0.0)) {
    defect = std::numeric_limits<double>::infinity(); // not orthochronous
  }
  return defect;
}

namespace {

void check_dim3(const Vec& v, const char* what) {
  if (v.size() != 3)
    throw DimensionError(std::string(what) + ": expected ambient 3-vector");
}

void check_dim2(const Vec& v, const char* what) {
  if (v.size() != 2)
    throw DimensionError(std::string(what) + ": expected chart 2-vector");
}

// Columns are d(ambient)/d(theta), d(ambient)/d(phi) at the chart point.
Mat jacobian(Model model, double r, const Vec& q) {
  Mat j(3); // 3x3 with last column unused; we only read (i, 0..1)
  if (model == Model::Sphere) {
    const double th = q[0], ph = q[1];
    j(0, 0) = r * std::cos(th) * std::cos(ph);
    j(1, 0) = r * std::cos(th) * std::sin(ph);
    j(2, 0) = -r * std::sin(th);
    j(0, 1) = -r * std::sin(th) * std::sin(ph);
    j(1, 1) = r * std::sin(th) * std::cos(ph);
    j(2, 1) = 0.0;
  } else {
    const double rho = q[0], ph = q[1];
    const double ch = std::cosh(rho / r), sh = std::sinh(rho / r);
    j(0, 0) = sh;
    j(1, 0) = ch * std::cos(ph);
    j(2, 0) = ch * std::sin(ph);
    j(0, 1) = 0.0;
    j(1, 1) = -r * sh * std::sin(ph);
    j(2, 1) = r * sh * std::cos(ph);
  }
  return j;
}

void check_chart_domain(Model model, const Vec& q) {
  if (model == Model::Sphere) {
    if (!(q[0] > 0.2 && q[0] < std::numbers::pi - 0.2))
      throw DomainError("sphere chart: theta outside (0.2, pi - 0.2)");
  } else {
    if (!(q[0] > 0.05 && q[0] < 4.0))
      throw DomainError("hyperboloid chart: rho outside (0.05, 4)");
  }
}

} // namespace

Vec ambient_to_chart_point(Model model, double radius, const Vec& ambient) {
  check_dim3(ambient, "ambient_to_chart_point");
  const double r = radius;
  Vec q(2);
  if (model == Model::Sphere) {
    const double norm = vnorm2(ambient);
    if (std::abs(norm - r) > 1e-9 * (1.0 + r))
      throw DomainError("ambient_to_chart_point: point off the sphere");
    q[0] = std::acos(std::clamp(ambient[2] / r, -1.0, 1.0));
    q[1] = std::atan2(ambient[1], ambient[0]);
  } else {
    const double minkowski = -ambient[0] * ambient[0] +
                             ambient[1] * ambient[1] +
                             ambient[2] * ambient[2];
    if (std::abs(minkowski + r * r) > 1e-9 * (1.0 + r * r) || ambient[0] <= 0.0)
      throw DomainError("ambient_to_chart_point: point off the hyperboloid sheet");
    q[0] = r * std::acosh(std::max(1.0, ambient[0] / r));
    q[1] = std::atan2(ambient[2], ambient[1]);
  }
  check_chart_domain(model, q);
  return q;
}

Vec chart_to_ambient_point(Model model, double radius, const Vec& chart_pt) {
  check_dim2(chart_pt, "chart_to_ambient_point");
  check_chart_domain(model, chart_pt);
  const double r = radius;
  if (model == Model::Sphere) {
    const double th = chart_pt[0], ph = chart_pt[1];
    return {r * std::sin(th) * std::cos(ph), r * std::sin(th) * std::sin(ph),
            r * std::cos(th)};
  }
  const double rho = chart_pt[0], ph = chart_pt[1];
  return {r * std::cosh(rho / r), r * std::sinh(rho / r) * std::cos(ph),
          r * std::sinh(rho / r) * std::sin(ph)};
}

Vec chart_to_ambient_tangent(Model model, double radius, const Vec& chart_pt,
                             const Vec& chart_vec) {
  check_dim2(chart_pt, "chart_to_ambient_tangent");
  check_dim2(chart_vec, "chart_to_ambient_tangent");
  const Mat j = jacobian(model, radius, chart_pt);
  Vec out(3, 0.0);
  for (int i = 0; i < 3; ++i)
    out[i] = j(i, 0) * chart_vec[0] + j(i, 1) * chart_vec[1];
  return out;
}

Vec ambient_to_chart_tangent(Model model, double radius, const Vec& chart_pt,
                             const Vec& ambient_vec) {
  check_dim2(chart_pt, "ambient_to_chart_tangent");
  check_dim3(ambient_vec, "ambient_to_chart_tangent");
  const Mat j = jacobian(model, radius, chart_pt);
  // Least-squares solve J w = v; exact when v is tangent to the surface.
  double a = 0, b = 0, c = 0, r0 = 0, r1 = 0;
  for (int i = 0; i < 3; ++i) {
    a += j(i, 0) * j(i, 0);
    b += j(i, 0) * j(i, 1);
    c += j(i, 1) * j(i, 1);
    r0 += j(i, 0) * ambient_vec[i];
    r1 += j(i, 1) * ambient_vec[i];
  }
  const double det = a * c - b * b;
  if (det == 0.0)
    throw SingularError("ambient_to_chart_tangent: degenerate Jacobian");
  return {(c * r0 - b * r1) / det, (a * r1 - b * r0) / det};
}

OracleFrame frame_from_chart(Model model, double radius, const Vec& chart_pt,
                             const Vec& u_chart, const Vec& v_chart) {
  OracleFrame f;
  f.model = model;
  f.radius = radius;
  f.X = Mat(3);
  f.X.set_col(0, vscale(1.0 / radius,
                        chart_to_ambient_point(model, radius, chart_pt)));
  f.X.set_col(1, chart_to_ambient_tangent(model, radius, chart_pt, u_chart));
  f.X.set_col(2, chart_to_ambient_tangent(model, radius, chart_pt, v_chart));
  return f;
}

QuadVertices oracle_vertices_from(const OracleFrame& x0, double s) {
  QuadVertices q = oracle_vertices(x0.model, x0.radius, s);
  for (Vec* v : {&q.P0, &q.P1, &q.P2, &q.P3, &q.P4, &q.Q1, &q.Q2})
    *v = mapply(x0.X, *v);
  return q;
}

} // namespace geogap::oracle
