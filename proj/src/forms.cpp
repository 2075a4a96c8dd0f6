#include "einkit/forms.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace ein {

namespace {

void validate(const FormSpec& s) {
  if (s.p < 0 || s.q < 0) throw std::invalid_argument("form dimensions must be non-negative");
  switch (s.convention) {
    case Convention::Diagonal:
      break;
    case Convention::CartanBlocks:
      if (s.p < s.q) throw std::invalid_argument("CartanBlocks requires p >= q");
      break;
    case Convention::LastPairHyperbolic:
      if (s.q == 0 || s.p == 0) throw std::invalid_argument("LastPairHyperbolic requires p >= 1 and q >= 1");
      break;
    case Convention::Antidiagonal:
      if (s.p - s.q != 0 && s.p - s.q != 1) throw std::invalid_argument("Antidiagonal requires p - q in {0, 1}");
      break;
  }
}

}  // namespace

std::string convention_name(Convention c) {
  switch (c) {
    case Convention::Diagonal: return "diag";
    case Convention::CartanBlocks: return "cartan";
    case Convention::LastPairHyperbolic: return "hyp2";
    case Convention::Antidiagonal: return "antidiag";
  }
  return "?";
}

Convention parse_convention(const std::string& name) {
  if (name == "diag") return Convention::Diagonal;
  if (name == "cartan") return Convention::CartanBlocks;
  if (name == "hyp2") return Convention::LastPairHyperbolic;
  if (name == "antidiag") return Convention::Antidiagonal;
  throw std::invalid_argument("unknown form convention: " + name);
}

Mat form_matrix(const FormSpec& s) {
  validate(s);
  const int n = s.dim();
  Mat b = Mat::Zero(n, n);
  switch (s.convention) {
    case Convention::Diagonal:
      for (int i = 0; i < s.p; ++i) b(i, i) = 1;
      for (int i = s.p; i < n; ++i) b(i, i) = -1;
      break;
    case Convention::CartanBlocks: {
      int k = s.p - s.q;
      for (int i = 0; i < k; ++i) b(i, i) = 1;
      for (int j = 0; j < s.q; ++j) {
        int i = k + 2 * j;
        b(i, i + 1) = b(i + 1, i) = -0.5;
      }
      break;
    }
    case Convention::LastPairHyperbolic:
      for (int i = 0; i < s.p - 1; ++i) b(i, i) = 1;
      for (int i = s.p - 1; i < n - 2; ++i) b(i, i) = -1;
      b(n - 2, n - 1) = b(n - 1, n - 2) = -0.5;
      break;
    case Convention::Antidiagonal:
      for (int i = 0; i < n; ++i) b(i, n - 1 - i) = 1;
      break;
  }
  return b;
}

double inner(const Vec& u, const Vec& v, const FormSpec& spec) {
  if (u.size() != spec.dim() || v.size() != spec.dim())
    throw std::invalid_argument("vector dimension does not match the form");
  return u.dot(form_matrix(spec) * v);
}

double quad(const Vec& v, const FormSpec& spec) { return inner(v, v, spec); }

Mat to_diagonal(const FormSpec& s) {
  validate(s);
  const int n = s.dim();
  Mat d = Mat::Zero(n, n);
  int pos = 0;
  int neg = s.p;
  auto hyperbolic_pair = [&](int u, int v) {
    // -uv = ((u - v)/2)^2 - ((u + v)/2)^2
    d(pos, u) = 0.5;
    d(pos, v) = -0.5;
    ++pos;
    d(neg, u) = 0.5;
    d(neg, v) = 0.5;
    ++neg;
  };
  switch (s.convention) {
    case Convention::Diagonal:
      d.setIdentity();
      break;
    case Convention::CartanBlocks: {
      int k = s.p - s.q;
      for (int i = 0; i < k; ++i) d(pos++, i) = 1;
      for (int j = 0; j < s.q; ++j) hyperbolic_pair(k + 2 * j, k + 2 * j + 1);
      break;
    }
    case Convention::LastPairHyperbolic:
      for (int i = 0; i < s.p - 1; ++i) d(pos++, i) = 1;
      for (int i = s.p - 1; i < n - 2; ++i) d(neg++, i) = 1;
      hyperbolic_pair(n - 2, n - 1);
      break;
    case Convention::Antidiagonal: {
      // 2 x_i x_j = ((x_i + x_j)/sqrt2)^2 - ((x_i - x_j)/sqrt2)^2
      const double h = 1.0 / std::sqrt(2.0);
      for (int i = 0; i < n / 2; ++i) {
        int j = n - 1 - i;
        d(pos, i) = h;
        d(pos, j) = h;
        ++pos;
        d(neg, i) = h;
        d(neg, j) = -h;
        ++neg;
      }
      if (n % 2 == 1) d(pos++, n / 2) = 1;
      break;
    }
  }
  return d;
}

Mat intertwiner(const FormSpec& from, const FormSpec& to) {
  if (from.p != to.p || from.q != to.q) throw std::invalid_argument("intertwiner needs equal signatures");
  return to_diagonal(to).inverse() * to_diagonal(from);
}

std::string causal_name(CausalTag t) {
  switch (t) {
    case CausalTag::Timelike: return "timelike";
    case CausalTag::Lightlike: return "lightlike";
    case CausalTag::Spacelike: return "spacelike";
    case CausalTag::Zero: return "zero";
  }
  return "?";
}

CausalClass classify_vector(const Vec& v, const FormSpec& spec, double eps) {
  if (v.size() != spec.dim()) throw std::invalid_argument("vector dimension does not match the form");
  double n2 = v.squaredNorm();
  if (n2 == 0.0) return {CausalTag::Zero, true};
  double q = quad(v, spec);
  double thr = eps * n2;
  CausalClass c{CausalTag::Lightlike, q <= thr};
  if (q > thr) c.tag = CausalTag::Spacelike;
  else if (q < -thr) c.tag = CausalTag::Timelike;
  return c;
}

Mat gram(const Mat& basis, const FormSpec& spec) {
  return basis.transpose() * form_matrix(spec) * basis;
}

Signature signature(const Subspace& s, double eps) {
  if (s.basis.rows() != s.ambient.dim()) throw std::invalid_argument("basis dimension does not match the form");
  if (numeric_rank(s.basis, eps) != s.basis.cols()) throw std::invalid_argument("rank-deficient basis");
  Signature sig;
  if (s.basis.cols() == 0) return sig;
  Mat q = column_basis(s.basis, eps);
  Eigen::SelfAdjointEigenSolver<Mat> es(gram(q, s.ambient));
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    double l = es.eigenvalues()(i);
    if (l > eps) ++sig.p;
    else if (l < -eps) ++sig.q;
    else ++sig.r;
  }
  return sig;
}

Subspace orth_complement(const Subspace& s, double eps) {
  Mat b = form_matrix(s.ambient);
  if (s.basis.cols() == 0) return {Mat::Identity(s.ambient.dim(), s.ambient.dim()), s.ambient};
  Mat constraints = s.basis.transpose() * b;
  return {null_space(constraints, eps), s.ambient};
}

Subspace radical(const Subspace& s, double eps) {
  if (s.basis.cols() == 0) return s;
  Mat q = column_basis(s.basis, eps);
  Mat g = gram(q, s.ambient);
  Eigen::SelfAdjointEigenSolver<Mat> es(g);
  std::vector<Eigen::Index> idx;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (std::abs(es.eigenvalues()(i)) <= eps) idx.push_back(i);
  Mat r(q.rows(), static_cast<Eigen::Index>(idx.size()));
  for (size_t k = 0; k < idx.size(); ++k) r.col(static_cast<Eigen::Index>(k)) = q * es.eigenvectors().col(idx[k]);
  return {r, s.ambient};
}

}  // namespace ein
