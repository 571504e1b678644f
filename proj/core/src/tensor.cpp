#include "geogap/tensor.hpp"

#include <cmath>
#include <cstdlib>

namespace geogap {

namespace {

void check_same_dim(std::size_t a, std::size_t b, const char* op) {
  if (a != b) {
    throw DimensionError(std::string(op) + ": dimension mismatch (" +
                         std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

} // namespace

Mat Mat::identity(int n) {
  Mat m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Vec Mat::col(int j) const {
  Vec v(n_);
  for (int i = 0; i < n_; ++i) v[i] = (*this)(i, j);
  return v;
}

void Mat::set_col(int j, const Vec& v) {
  check_same_dim(v.size(), std::size_t(n_), "Mat::set_col");
  for (int i = 0; i < n_; ++i) (*this)(i, j) = v[i];
}

Vec vadd(const Vec& a, const Vec& b) {
  check_same_dim(a.size(), b.size(), "vadd");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vec vsub(const Vec& a, const Vec& b) {
  check_same_dim(a.size(), b.size(), "vsub");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vec vscale(double c, const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

void vaxpy(double c, const Vec& x, Vec& y) {
  check_same_dim(x.size(), y.size(), "vaxpy");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += c * x[i];
}

double vdot(const Vec& a, const Vec& b) {
  check_same_dim(a.size(), b.size(), "vdot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double vnorm2(const Vec& a) { return std::sqrt(vdot(a, a)); }

double vnorm_inf(const Vec& a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

bool all_finite(const Vec& a) {
  for (double x : a)
    if (!std::isfinite(x)) return false;
  return true;
}

Mat mmul(const Mat& a, const Mat& b) {
  check_same_dim(std::size_t(a.dim()), std::size_t(b.dim()), "mmul");
  const int n = a.dim();
  Mat r(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

Vec mapply(const Mat& a, const Vec& x) {
  check_same_dim(std::size_t(a.dim()), x.size(), "mapply");
  const int n = a.dim();
  Vec r(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r[i] += a(i, j) * x[j];
  return r;
}

namespace {

// LU with partial pivoting; returns false on (near-)singularity.
bool lu_decompose(Mat& m, std::vector<int>& perm, double& det) {
  const int n = m.dim();
  perm.resize(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  det = 1.0;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    double best = std::abs(m(c, c));
    for (int r = c + 1; r < n; ++r) {
      if (std::abs(m(r, c)) > best) {
        best = std::abs(m(r, c));
        piv = r;
      }
    }
    if (!(best > 0.0) || !std::isfinite(best)) return false;
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(m(c, j), m(piv, j));
      std::swap(perm[c], perm[piv]);
      det = -det;
    }
    det *= m(c, c);
    const double inv = 1.0 / m(c, c);
    for (int r = c + 1; r < n; ++r) {
      const double f = m(r, c) * inv;
      m(r, c) = f;
      for (int j = c + 1; j < n; ++j) m(r, j) -= f * m(c, j);
    }
  }
  return true;
}

} // namespace

double mdet(const Mat& a) {
  Mat m = a;
  std::vector<int> perm;
  double det = 0.0;
  if (!lu_decompose(m, perm, det)) return 0.0;
  return det;
}

Mat minverse(const Mat& a) {
  const int n = a.dim();
  Mat m = a;
  std::vector<int> perm;
  double det = 0.0;
  if (!lu_decompose(m, perm, det))
    throw SingularError("minverse: singular matrix");
  Mat inv(n);
  Vec x(n), b(n);
  for (int col = 0; col < n; ++col) {
    for (int i = 0; i < n; ++i) b[i] = (perm[i] == col) ? 1.0 : 0.0;
    // forward substitution (unit lower)
    for (int i = 0; i < n; ++i) {
      x[i] = b[i];
      for (int j = 0; j < i; ++j) x[i] -= m(i, j) * x[j];
    }
    // back substitution
    for (int i = n - 1; i >= 0; --i) {
      for (int j = i + 1; j < n; ++j) x[i] -= m(i, j) * x[j];
      x[i] /= m(i, i);
    }
    inv.set_col(col, x);
  }
  return inv;
}

Vec contract_gamma(const Tensor3& g, const Vec& a, const Vec& b) {
  const int n = g.dim();
  check_same_dim(std::size_t(n), a.size(), "contract_gamma");
  check_same_dim(std::size_t(n), b.size(), "contract_gamma");
  Vec r(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) r[i] += g(i, j, k) * a[j] * b[k];
  return r;
}

Vec curvature_apply(const Tensor4& r4, const Vec& u, const Vec& v, const Vec& w) {
  const int n = r4.dim();
  check_same_dim(std::size_t(n), u.size(), "curvature_apply");
  check_same_dim(std::size_t(n), v.size(), "curvature_apply");
  check_same_dim(std::size_t(n), w.size(), "curvature_apply");
  Vec out(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q)
        for (int rr = 0; rr < n; ++rr)
          out[i] += r4(i, p, q, rr) * w[p] * u[q] * v[rr];
  return out;
}

} // namespace geogap
