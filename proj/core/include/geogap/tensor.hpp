#pragma once

#include <vector>

#include "geogap/errors.hpp"

namespace geogap {

/// Chart coordinates or tangent components. Length = chart dimension.
using Vec = std::vector<double>;

/// Dense d x d matrix, row-major. Used for frames (columns are basis
/// vectors) and metric values.
class Mat {
public:
  Mat() = default;
  explicit Mat(int n, double fill = 0.0) : n_(n), a_(std::size_t(n) * n, fill) {}

  static Mat identity(int n);

  int dim() const { return n_; }
  double& operator()(int i, int j) { return a_[std::size_t(i) * n_ + j]; }
  double operator()(int i, int j) const { return a_[std::size_t(i) * n_ + j]; }

  Vec col(int j) const;
  void set_col(int j, const Vec& v);

private:
  int n_ = 0;
  std::vector<double> a_;
};

/// Rank-3 array, entries [i][j][k]. Holds Christoffel fields and torsion.
class Tensor3 {
public:
  Tensor3() = default;
  explicit Tensor3(int n, double fill = 0.0)
      : n_(n), a_(std::size_t(n) * n * n, fill) {}

  int dim() const { return n_; }
  double& operator()(int i, int j, int k) {
    return a_[(std::size_t(i) * n_ + j) * n_ + k];
  }
  double operator()(int i, int j, int k) const {
    return a_[(std::size_t(i) * n_ + j) * n_ + k];
  }

private:
  int n_ = 0;
  std::vector<double> a_;
};

/// Rank-4 array, entries [i][p][q][r]. Holds curvature R^i_pqr and the
/// Christoffel first partials Gamma^i_jk,l (derivative index last).
class Tensor4 {
public:
  Tensor4() = default;
  explicit Tensor4(int n, double fill = 0.0)
      : n_(n), a_(std::size_t(n) * n * n * n, fill) {}

  int dim() const { return n_; }
  double& operator()(int i, int p, int q, int r) {
    return a_[((std::size_t(i) * n_ + p) * n_ + q) * n_ + r];
  }
  double operator()(int i, int p, int q, int r) const {
    return a_[((std::size_t(i) * n_ + p) * n_ + q) * n_ + r];
  }

private:
  int n_ = 0;
  std::vector<double> a_;
};

// Vector arithmetic.
Vec vadd(const Vec& a, const Vec& b);
Vec vsub(const Vec& a, const Vec& b);
Vec vscale(double c, const Vec& a);
void vaxpy(double c, const Vec& x, Vec& y); // y += c*x
double vdot(const Vec& a, const Vec& b);
double vnorm2(const Vec& a);
double vnorm_inf(const Vec& a);
bool all_finite(const Vec& a);

// Matrix arithmetic.
Mat mmul(const Mat& a, const Mat& b);
Vec mapply(const Mat& a, const Vec& x);
double mdet(const Mat& a);
/// Gaussian elimination with partial pivoting; throws SingularError.
Mat minverse(const Mat& a);

/// result^i = sum_jk G[i][j][k] a^j b^k  (evaluates Gamma(a, b)).
Vec contract_gamma(const Tensor3& g, const Vec& a, const Vec& b);

/// (R(u,v)w)^i = sum_pqr R[i][p][q][r] w^p u^q v^r.
Vec curvature_apply(const Tensor4& r, const Vec& u, const Vec& v, const Vec& w);

} // namespace geogap
