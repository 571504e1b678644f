#include "geogap/framebundle.hpp"

#include <cmath>

namespace geogap {

namespace {

void check_frame_point(const ConnectionChart& chart, const FramePoint& y) {
  const int d = chart.dim;
  if (int(y.x.size()) != d || y.frame.dim() != d)
    throw DimensionError("frame point dimension mismatch with chart");
  if (std::abs(mdet(y.frame)) <= frame_det_guard)
    throw SingularError("frame point: singular frame (|det| <= 1e-9)");
}

std::size_t flat_size(int d) { return std::size_t(d) * (1 + d); }

Vec flatten(const FramePoint& y) {
  const int d = int(y.x.size());
  Vec out(flat_size(d));
  for (int i = 0; i < d; ++i) out[i] = y.x[i];
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out[d + std::size_t(i) * d + j] = y.frame(i, j);
  return out;
}

FramePoint unflatten(int d, const Vec& y) {
  FramePoint p;
  p.x.assign(y.begin(), y.begin() + d);
  p.frame = Mat(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) p.frame(i, j) = y[d + std::size_t(i) * d + j];
  return p;
}

Vec flatten_vec(const BundleVector& v) {
  const int d = int(v.base.size());
  Vec out(flat_size(d));
  for (int i = 0; i < d; ++i) out[i] = v.base[i];
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out[d + std::size_t(i) * d + j] = v.vert(i, j);
  return out;
}

} // namespace

BundleVector xi_field(const ConnectionChart& chart, int m, const FramePoint& y) {
  const int d = chart.dim;
  if (m < 0 || m >= d) throw DimensionError("xi_field: bad field index");
  if (int(y.x.size()) != d || y.frame.dim() != d)
    throw DimensionError("xi_field: frame point dimension mismatch");
  const Tensor3 g = christoffels_at(chart, y.x);
  BundleVector out;
  out.base = y.frame.col(m);
  out.vert = Mat(d);
  for (int i = 0; i < d; ++i)
    for (int l = 0; l < d; ++l) {
      double v = 0.0;
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
          v -= g(i, j, k) * y.frame(j, l) * y.frame(k, m);
      out.vert(i, l) = v;
    }
  return out;
}

BundleVector bracket_numeric(const ConnectionChart& chart, int m, int n,
                             const FramePoint& y, double h_scale) {
  if (!(h_scale > 0.0)) throw ConfigError("bracket_numeric: h must be positive");
  check_frame_point(chart, y);
  const int d = chart.dim;
  const std::size_t dim_e = flat_size(d);

  auto field = [&](int which, const Vec& flat) {
    return flatten_vec(xi_field(chart, which, unflatten(d, flat)));
  };

  const Vec y0 = flatten(y);
  const Vec fm = field(m, y0);
  const Vec fn = field(n, y0);

  // [xi_m, xi_n]^a = xi_m^b d_b xi_n^a - xi_n^b d_b xi_m^a
  Vec bracket(dim_e, 0.0);
  Vec yp = y0, ym = y0;
  for (std::size_t b = 0; b < dim_e; ++b) {
    if (fm[b] == 0.0 && fn[b] == 0.0) continue;
    double h = h_scale * (1.0 + std::abs(y0[b]));
    yp[b] = y0[b] + h;
    ym[b] = y0[b] - h;
    h = 0.5 * (yp[b] - ym[b]);
    const Vec fnp = field(n, yp);
    const Vec fnm = field(n, ym);
    const Vec fmp = field(m, yp);
    const Vec fmm = field(m, ym);
    const double inv2h = 1.0 / (2.0 * h);
    for (std::size_t a = 0; a < dim_e; ++a)
      bracket[a] += fm[b] * (fnp[a] - fnm[a]) * inv2h -
                    fn[b] * (fmp[a] - fmm[a]) * inv2h;
    yp[b] = y0[b];
    ym[b] = y0[b];
  }

  BundleVector out;
  out.base.assign(bracket.begin(), bracket.begin() + d);
  out.vert = Mat(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out.vert(i, j) = bracket[d + std::size_t(i) * d + j];
  return out;
}

FrameBracketReport verify_frame_bracket(const ConnectionChart& chart,
                                        const FramePoint& y, double h_scale) {
  check_frame_point(chart, y);
  const int d = chart.dim;
  FrameBracketReport rep;
  rep.symmetric = is_symmetric_at(chart, y.x, 1e-10);
  if (rep.symmetric) rep.max_vertical_deviation = 0.0;

  const Tensor3 torsion = torsion_at(chart, y.x);
  const Mat frame_inv = minverse(y.frame);
  const Tensor4 riemann = rep.symmetric ? curvature_at(chart, y.x) : Tensor4(d);

  for (int m = 0; m < d; ++m)
    for (int n = m + 1; n < d; ++n) {
      const BundleVector br = bracket_numeric(chart, m, n, y, h_scale);
      const Vec um = y.frame.col(m);
      const Vec un = y.frame.col(n);
      // base part vs -T(u_m, u_n)
      const Vec t_mn = contract_gamma(torsion, um, un);
      for (int i = 0; i < d; ++i)
        rep.max_base_deviation =
            std::max(rep.max_base_deviation, std::abs(br.base[i] + t_mn[i]));
      if (!rep.symmetric) continue;
      // vertical endomorphism E = vert * frame^-1 vs -R(u_m, u_n)
      const Mat endo = mmul(br.vert, frame_inv);
      for (int i = 0; i < d; ++i)
        for (int p = 0; p < d; ++p) {
          double r_ip = 0.0;
          for (int q = 0; q < d; ++q)
            for (int r = 0; r < d; ++r)
              r_ip += riemann(i, p, q, r) * um[q] * un[r];
          rep.max_vertical_deviation =
              std::max(*rep.max_vertical_deviation,
                       std::abs(endo(i, p) + r_ip));
        }
    }
  return rep;
}

} // namespace geogap
