#include "einkit/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace ein {

Vec vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

Vec normalize_projective(const Vec& v, double tol) {
  double n = v.norm();
  if (n == 0.0) throw GeometryError("cannot normalize the zero vector");
  Vec u = v / n;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (std::abs(u(i)) > tol) {
      if (u(i) < 0) u = -u;
      break;
    }
  }
  return u;
}

double projective_distance(const Vec& a, const Vec& b) {
  Vec x = a.normalized();
  Vec y = b.normalized();
  return std::min((x - y).norm(), (x + y).norm());
}

int numeric_rank(const Mat& m, double eps) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(m);
  const Vec& s = svd.singularValues();
  double scale = std::max(1.0, s.size() ? s(0) : 0.0);
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > eps * scale) ++r;
  return r;
}

Mat column_basis(const Mat& m, double eps) {
  if (m.cols() == 0) return Mat(m.rows(), 0);
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullU);
  int r = numeric_rank(m, eps);
  return svd.matrixU().leftCols(r);
}

Mat null_space(const Mat& m, double eps) {
  Eigen::Index n = m.cols();
  if (m.rows() == 0) return Mat::Identity(n, n);
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  const Vec& s = svd.singularValues();
  double scale = std::max(1.0, s.size() ? s(0) : 0.0);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > eps * scale) ++r;
  return svd.matrixV().rightCols(n - r);
}

double subspace_distance(const Mat& a, const Mat& b) {
  Mat qa = column_basis(a, 1e-12);
  Mat qb = column_basis(b, 1e-12);
  if (qa.cols() != qb.cols()) return 1.0;
  Mat pa = qa * qa.transpose();
  Mat pb = qb * qb.transpose();
  Eigen::JacobiSVD<Mat> svd(pa - pb);
  return svd.singularValues()(0);
}

double line_to_subspace_distance(const Vec& v, const Mat& basis) {
  Vec u = v.normalized();
  Mat q = column_basis(basis, 1e-12);
  return (u - q * (q.transpose() * u)).norm();
}

Mat subspace_intersection(const Mat& a, const Mat& b, double eps) {
  Mat qa = column_basis(a, eps);
  Mat qb = column_basis(b, eps);
  Mat stacked(qa.rows(), qa.cols() + qb.cols());
  stacked << qa, -qb;
  Mat ns = null_space(stacked, eps);
  Mat inter = qa * ns.topRows(qa.cols());
  return column_basis(inter, eps);
}

bool approx_equal(const Mat& a, const Mat& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  if (a.size() == 0) return true;
  return (a - b).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace ein
