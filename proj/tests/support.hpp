#pragma once

#include "einkit/linalg.hpp"

#include <cmath>
#include <cstdint>
#include <random>

namespace ein::test {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo = -1.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(gen_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }

  Vec vector(Eigen::Index n, double scale = 1.0) {
    Vec v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = scale * normal();
    return v;
  }

  Mat matrix(Eigen::Index r, Eigen::Index c, double scale = 1.0) {
    Mat m(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = 0; j < c; ++j) m(i, j) = scale * normal();
    return m;
  }

  Vec3 vec3(double scale = 1.0) { return Vec3(scale * normal(), scale * normal(), scale * normal()); }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

// Inertia of a symmetric matrix by Sylvester's law: LDL^T of a random
// congruent copy, which has nonzero pivots almost surely.
struct Inertia {
  int pos = 0;
  int neg = 0;
  int zero = 0;
};

inline Inertia ldlt_inertia(const Mat& sym, double tol) {
  Rng rng(0x5eed);
  Mat p = rng.matrix(sym.rows(), sym.cols());
  Eigen::LDLT<Mat> f(p.transpose() * sym * p);
  Inertia in;
  const Vec d = f.vectorD();
  const double scale = std::max(1.0, d.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (d(i) > tol * scale) ++in.pos;
    else if (d(i) < -tol * scale) ++in.neg;
    else ++in.zero;
  }
  return in;
}

// Kernel of a matrix by full-pivot LU.
inline Mat lu_kernel(const Mat& m) {
  Eigen::FullPivLU<Mat> lu(m);
  lu.setThreshold(1e-10);
  return lu.kernel();
}

// Columns of a lie in the span of the columns of b.
inline double span_residual(const Mat& a, const Mat& b) {
  Mat x = b.colPivHouseholderQr().solve(a);
  return (b * x - a).norm() / std::max(1.0, a.norm());
}

// Random element of O(2,1) for diag(1,1,-1), all four components.
inline Mat3 random_lorentz(Rng& rng) {
  auto rot = [](double a) {
    Mat3 r = Mat3::Identity();
    r(0, 0) = r(1, 1) = std::cos(a);
    r(0, 1) = -std::sin(a);
    r(1, 0) = std::sin(a);
    return r;
  };
  Mat3 boost = Mat3::Identity();
  double t = rng.uniform(-1.5, 1.5);
  boost(0, 0) = boost(2, 2) = std::cosh(t);
  boost(0, 2) = boost(2, 0) = std::sinh(t);
  Mat3 a = rot(rng.uniform(0, 6.3)) * boost * rot(rng.uniform(0, 6.3));
  if (rng.integer(0, 1)) a.row(1) *= -1;
  if (rng.integer(0, 1)) a.row(2) *= -1;
  return a;
}

inline double max_abs(const Mat& a) { return a.size() ? a.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace ein::test
