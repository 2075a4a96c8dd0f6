#include "einkit/sympl4.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ein {

namespace {

constexpr std::array<std::array<int, 2>, 6> kPairs{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

void check4(const Vec& v) {
  if (v.size() != 4) throw std::invalid_argument("vectors of V have 4 coordinates");
}

Mat build_J() {
  Mat j = Mat::Zero(4, 4);
  j(0, 1) = -1;
  j(1, 0) = 1;
  j(2, 3) = -1;
  j(3, 2) = 1;
  return j;
}

Mat build_f() {
  const double h = 1.0 / std::sqrt(2.0);
  Mat f = Mat::Zero(6, 5);
  f(1, 0) = 1;   // e1^e3
  f(3, 1) = 1;   // e2^e3
  f(0, 2) = h;   // (e1^e2 - e3^e4)/sqrt2
  f(5, 2) = -h;
  f(2, 3) = -1;  // e4^e1
  f(4, 4) = 1;   // e2^e4
  return f;
}

Vec build_dual() {
  // Solve omega(e_i, e_j) = B(e_i ^ e_j, w) on all six pairs.
  Mat a(6, 6);
  Vec rhs(6);
  for (int k = 0; k < 6; ++k) {
    Vec ek = Vec::Zero(6);
    ek(k) = 1;
    for (int l = 0; l < 6; ++l) {
      Vec el = Vec::Zero(6);
      el(l) = 1;
      a(k, l) = bivector_form(ek, el);
    }
    Vec ei = Vec::Zero(4), ej = Vec::Zero(4);
    ei(kPairs[k][0]) = 1;
    ej(kPairs[k][1]) = 1;
    rhs(k) = omega(ei, ej);
  }
  Vec w = a.fullPivLu().solve(rhs);
  if (std::abs(bivector_form(w, w) + 2.0) > 1e-12) throw std::logic_error("omega* normalization failed");
  return w;
}

Mat lagrangian_basis(const Lagrangian& l, double eps) {
  if (l.span.rows() != 4 || l.span.cols() != 2) throw std::invalid_argument("Lagrangian needs two vectors of V");
  if (numeric_rank(l.span, 1e-10) != 2) throw GeometryError("degenerate Lagrangian span");
  if (std::abs(omega(l.span.col(0), l.span.col(1))) > eps * l.span.col(0).norm() * l.span.col(1).norm())
    throw GeometryError("plane is not Lagrangian");
  return l.span;
}

}  // namespace

const Mat& symp_J() {
  static const Mat j = build_J();
  return j;
}

double omega(const Vec& u, const Vec& v) {
  check4(u);
  check4(v);
  return u.dot(symp_J() * v);
}

Vec wedge(const Vec& u, const Vec& v) {
  check4(u);
  check4(v);
  Vec w(6);
  for (int k = 0; k < 6; ++k) {
    int i = kPairs[k][0], j = kPairs[k][1];
    w(k) = u(i) * v(j) - u(j) * v(i);
  }
  return w;
}

double bivector_form(const Vec& a, const Vec& b) {
  if (a.size() != 6 || b.size() != 6) throw std::invalid_argument("bivectors have 6 coordinates");
  double top = a(0) * b(5) + a(5) * b(0) - a(1) * b(4) - a(4) * b(1) + a(2) * b(3) + a(3) * b(2);
  return -top;
}

const Mat& f_basis() {
  static const Mat f = build_f();
  return f;
}

const Vec& dual_bivector() {
  static const Vec w = build_dual();
  return w;
}

FormSpec w0_form() { return {3, 2, Convention::Antidiagonal}; }

Vec to_f_coords(const Vec& raw) {
  Vec c(5);
  for (int i = 0; i < 5; ++i) c(i) = bivector_form(raw, f_basis().col(4 - i));
  return c;
}

Vec from_f_coords(const Vec& c) {
  if (c.size() != 5) throw std::invalid_argument("f-coordinates have 5 entries");
  return f_basis() * c;
}

Lagrangian make_lagrangian(const Vec& v1, const Vec& v2, double eps) {
  check4(v1);
  check4(v2);
  Lagrangian l{Mat(4, 2)};
  l.span << v1, v2;
  lagrangian_basis(l, eps);
  return l;
}

EinPoint lagrangian_to_point(const Lagrangian& l, double eps) {
  Mat b = lagrangian_basis(l, eps);
  return project_null(to_f_coords(wedge(b.col(0), b.col(1))), w0_form(), 1e-7);
}

Lagrangian point_to_lagrangian(const EinPoint& p, double eps) {
  if (p.rep.size() != 5) throw std::invalid_argument("points of W0 have 5 f-coordinates");
  Vec c = p.rep.normalized();
  if (std::abs(quad(c, w0_form())) > eps) throw GeometryError("vector is not null in W0");
  Vec a = from_f_coords(c);
  // Kernel of u -> a ^ u, a map V -> Lambda^3 V.
  Mat m(4, 4);
  for (int k = 0; k < 4; ++k) {
    Vec u = Vec::Zero(4);
    u(k) = 1;
    // Coordinates e123, e124, e134, e234.
    m(0, k) = a(0) * u(2) - a(1) * u(1) + a(3) * u(0);
    m(1, k) = a(0) * u(3) - a(2) * u(1) + a(4) * u(0);
    m(2, k) = a(1) * u(3) - a(2) * u(2) + a(5) * u(0);
    m(3, k) = a(3) * u(3) - a(4) * u(2) + a(5) * u(1);
  }
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  Lagrangian l{svd.matrixV().rightCols(2)};
  lagrangian_basis(l, 1e-7);
  return l;
}

Photon line_to_photon(const Vec& v, double eps) {
  check4(v);
  if (v.norm() == 0.0) throw GeometryError("zero vector spans no line");
  Mat perp = polarity(v);
  // Complete v to a basis of v^{perp omega}.
  Mat rest = perp.rightCols(2);
  Vec w1 = rest.col(0), w2 = rest.col(1);
  EinPoint a = lagrangian_to_point(make_lagrangian(v, w1, 1e-7), eps);
  EinPoint b = lagrangian_to_point(make_lagrangian(v, w2, 1e-7), eps);
  return photon_span(a.rep, b.rep, w0_form(), 1e-7);
}

Vec photon_to_line(const Photon& ph, double eps) {
  Lagrangian la = point_to_lagrangian({ph.u, ph.form}, 1e-7);
  Lagrangian lb = point_to_lagrangian({ph.v, ph.form}, 1e-7);
  Mat inter = subspace_intersection(la.span, lb.span, std::max(eps, 1e-7));
  if (inter.cols() != 1) throw GeometryError("photon Lagrangians do not share a single line");
  return normalize_projective(inter.col(0));
}

bool in_sp4_algebra(const Mat& m, double eps) {
  if (m.rows() != 4 || m.cols() != 4) return false;
  const Mat& j = symp_J();
  return (m.transpose() * j + j * m).cwiseAbs().maxCoeff() <= eps * std::max(1.0, m.norm());
}

bool is_symplectic(const Mat& g, double eps) {
  if (g.rows() != 4 || g.cols() != 4) return false;
  const Mat& j = symp_J();
  return (g.transpose() * j * g - j).cwiseAbs().maxCoeff() <= eps * std::max(1.0, g.squaredNorm());
}

Mat sp_to_so_algebra(const Mat& m, double eps) {
  if (m.rows() != 4 || m.cols() != 4) throw std::invalid_argument("expected a 4x4 matrix");
  if (!in_sp4_algebra(m, eps)) throw GeometryError("matrix is not in sp(4,R)");
  const double s = std::sqrt(2.0);
  double a = m(0, 0), b = m(2, 2), a12 = m(0, 1), a21 = m(1, 0);
  double r11 = m(0, 2), r12 = m(0, 3), r21 = m(1, 2), r22 = m(1, 3);
  double b12 = m(2, 3), b21 = m(3, 2);
  Mat t(5, 5);
  t << a + b, a12, s * r12, -b12, 0,
       a21, -a + b, s * r22, 0, b12,
       s * r21, -s * r11, 0, -s * r22, -s * r12,
       -b21, 0, s * r11, a - b, -a12,
       0, b21, -s * r21, -a21, -a - b;
  return t;
}

Mat sp_to_so_algebra_displayed(const Mat& m) {
  if (m.rows() != 4 || m.cols() != 4) throw std::invalid_argument("expected a 4x4 matrix");
  double a = m(0, 0), b = m(2, 2), a12 = m(0, 1), a21 = m(1, 0);
  double r11 = m(0, 2), r12 = m(0, 3), r21 = m(1, 2), r22 = m(1, 3);
  double b12 = m(2, 3), b21 = m(3, 2);
  Mat t(5, 5);
  t << a + b, a12, r12, -b12, 0,
       a21, -a + b, r22, 0, b12,
       r21, r11, 0, -r22, -r12,
       -b21, 0, -r11, a - b, -a12,
       0, b21, -r21, -a21, -a - b;
  return t;
}

Mat lambda2(const Mat& g) {
  if (g.rows() != 4 || g.cols() != 4) throw std::invalid_argument("expected a 4x4 matrix");
  Mat l(6, 6);
  for (int k = 0; k < 6; ++k) l.col(k) = wedge(g.col(kPairs[k][0]), g.col(kPairs[k][1]));
  return l;
}

ConformalTransform sp_to_so_group(const Mat& g, double eps) {
  if (g.rows() != 4 || g.cols() != 4) throw std::invalid_argument("expected a 4x4 matrix");
  if (!is_symplectic(g, eps)) throw GeometryError("matrix is not symplectic");
  Mat l = lambda2(g);
  Mat t(5, 5);
  for (int j = 0; j < 5; ++j) t.col(j) = to_f_coords(l * f_basis().col(j));
  return {t, w0_form()};
}

Vec symplectic_plane_vector(const Vec& u1, const Vec& u2, double eps) {
  if (std::abs(omega(u1, u2) - 1.0) > eps * std::max(1.0, u1.norm() * u2.norm()))
    throw GeometryError("basis is not a normalized symplectic pair");
  return to_f_coords(2.0 * wedge(u1, u2) + dual_bivector());
}

bool is_positive_compatible(const Mat& jc, double eps) {
  if (jc.rows() != 4 || jc.cols() != 4) throw std::invalid_argument("expected a 4x4 matrix");
  Mat id = Mat::Identity(4, 4);
  if ((jc * jc + id).cwiseAbs().maxCoeff() > eps * std::max(1.0, jc.squaredNorm()))
    throw GeometryError("matrix is not a complex structure");
  const Mat& j = symp_J();
  if ((jc.transpose() * j * jc - j).cwiseAbs().maxCoeff() > eps * std::max(1.0, jc.squaredNorm())) return false;
  Mat g = j * jc;
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > eps * std::max(1.0, g.norm())) return false;
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (g + g.transpose()));
  return es.eigenvalues().minCoeff() > eps;
}

Mat act_complex_structure(const Mat& g, const Mat& jc) { return g * jc * g.inverse(); }

ContactPlane contact_plane(const Vec& v) {
  check4(v);
  if (v.norm() == 0.0) throw GeometryError("zero vector");
  ContactPlane c;
  c.point = normalize_projective(v);
  Mat h = polarity(c.point);
  c.quotient = h.rightCols(2);
  c.perp = Mat(4, 3);
  c.perp << c.point, c.quotient;
  return c;
}

bool is_contact_line(const Mat& plane, double eps) {
  if (plane.rows() != 4 || plane.cols() != 2) throw std::invalid_argument("expected two vectors of V");
  Mat q = column_basis(plane, 1e-10);
  if (q.cols() != 2) throw GeometryError("degenerate plane");
  return std::abs(omega(q.col(0), q.col(1))) <= eps;
}

Mat polarity(const Vec& v) {
  check4(v);
  if (v.norm() == 0.0) throw GeometryError("zero vector");
  Vec u = v.normalized();
  // v^{perp omega} = (J^T v)^perp contains v; first column v, then an
  // orthonormal completion.
  Vec n = symp_J().transpose() * u;
  Mat c(2, 4);
  c.row(0) = n.transpose();
  c.row(1) = u.transpose();
  Mat rest = null_space(c, 1e-12);
  Mat h(4, 3);
  h << u, rest;
  return h;
}

Vec polarity_inverse(const Mat& hyperplane) {
  if (hyperplane.rows() != 4 || hyperplane.cols() != 3) throw std::invalid_argument("expected a 4x3 basis");
  Mat n = null_space(hyperplane.transpose(), 1e-10);
  if (n.cols() != 1) throw GeometryError("degenerate hyperplane");
  return normalize_projective(symp_J() * n.col(0));
}

bool maslov_incident(const Lagrangian& w, const Lagrangian& w2, double eps) {
  Mat s(4, 4);
  s << column_basis(lagrangian_basis(w, 1e-7), 1e-12), column_basis(lagrangian_basis(w2, 1e-7), 1e-12);
  // For orthonormal bases |det| is the product of the principal sines.
  return std::abs(s.determinant()) <= eps;
}

SplittingInvolution splitting_involution(const Lagrangian& l1, const Lagrangian& l2, double eps) {
  Mat a = lagrangian_basis(l1, 1e-7);
  Mat b = lagrangian_basis(l2, 1e-7);
  Mat basis(4, 4);
  basis << a, b;
  if (numeric_rank(basis, 1e-9) < 4) throw GeometryError("Lagrangians are not transverse");
  Mat sign = Mat::Identity(4, 4);
  sign(2, 2) = sign(3, 3) = -1;
  Mat theta = basis * sign * basis.inverse();
  Mat l = lambda2(theta);
  Mat t(5, 5);
  for (int j = 0; j < 5; ++j) t.col(j) = to_f_coords(l * f_basis().col(j));
  ConformalTransform img = make_transform(t, w0_form(), std::max(eps, 1e-7));
  return {theta, img, time_orientation_sign(t, w0_form()) < 0};
}

}  // namespace ein
