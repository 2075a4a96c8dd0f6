#include "einkit/einstein.hpp"

#include <cmath>
#include <stdexcept>

namespace ein {

namespace {

void check_dim(const Vec& v, const FormSpec& spec) {
  if (v.size() != spec.dim()) throw std::invalid_argument("vector dimension does not match the form");
}

bool is_null(const Vec& v, const FormSpec& spec, double eps) {
  return std::abs(quad(v, spec)) <= eps * v.squaredNorm();
}

// Position of the U and V slots in the ambient coordinates.
int u_slot(const FormSpec& f) { return f.dim() - 2; }
int v_slot(const FormSpec& f) { return f.dim() - 1; }

}  // namespace

FormSpec ein_form(int n) { return {n + 1, 2, Convention::LastPairHyperbolic}; }

Mat Photon::basis() const {
  Mat b(u.size(), 2);
  b << u, v;
  return b;
}

std::string hypersurface_name(HypersurfaceKind k) {
  switch (k) {
    case HypersurfaceKind::Lightcone: return "lightcone";
    case HypersurfaceKind::EinsteinHypersphere: return "einstein_hypersphere";
    case HypersurfaceKind::SpacelikeHypersphere: return "spacelike_hypersphere";
    case HypersurfaceKind::SpacelikeCircle: return "spacelike_circle";
    case HypersurfaceKind::TimelikeCircle: return "timelike_circle";
  }
  return "?";
}

bool preserves_form(const Mat& m, const FormSpec& form, double eps) {
  if (m.rows() != form.dim() || m.cols() != form.dim()) return false;
  Mat b = form_matrix(form);
  double scale = std::max(1.0, m.squaredNorm());
  return (m.transpose() * b * m - b).cwiseAbs().maxCoeff() <= eps * scale;
}

ConformalTransform make_transform(const Mat& m, const FormSpec& form, double eps) {
  if (m.rows() != form.dim() || m.cols() != form.dim())
    throw std::invalid_argument("transform size does not match the form");
  if (!preserves_form(m, form, eps)) throw GeometryError("matrix does not preserve the ambient form");
  return {m, form};
}

int time_orientation_sign(const Mat& m, const FormSpec& form) {
  Mat d = to_diagonal(form);
  Mat md = d * m * d.inverse();
  double det = md.bottomRightCorner(form.q, form.q).determinant();
  return det > 0 ? 1 : -1;
}

EinPoint project_null(const Vec& v, const FormSpec& spec, double eps) {
  check_dim(v, spec);
  if (v.norm() == 0.0) throw GeometryError("zero vector is not a point");
  if (!is_null(v, spec, eps)) throw GeometryError("vector is not null");
  return {normalize_projective(v), spec};
}

EinPoint p0(int n) {
  FormSpec f = ein_form(n);
  Vec v = Vec::Zero(f.dim());
  v(v_slot(f)) = 1;
  return {v, f};
}

EinPoint p_inf(int n) {
  FormSpec f = ein_form(n);
  Vec v = Vec::Zero(f.dim());
  v(u_slot(f)) = 1;
  return {v, f};
}

EinPoint apply(const ConformalTransform& g, const EinPoint& p) {
  return {normalize_projective(g.matrix * p.rep), p.form};
}

Photon apply(const ConformalTransform& g, const Photon& ph) {
  return photon_span(g.matrix * ph.u, g.matrix * ph.v, ph.form, 1e-6);
}

bool same_point(const EinPoint& a, const EinPoint& b, double eps) {
  return projective_distance(a.rep, b.rep) <= eps;
}

Photon photon_span(const Vec& v, const Vec& w, const FormSpec& spec, double eps) {
  check_dim(v, spec);
  check_dim(w, spec);
  if (!is_null(v, spec, eps) || !is_null(w, spec, eps)) throw GeometryError("photon spanning vectors must be null");
  if (std::abs(inner(v, w, spec)) > eps * v.norm() * w.norm())
    throw GeometryError("photon spanning vectors are not orthogonal");
  Mat m(2, v.size());
  m.row(0) = v.normalized().transpose();
  m.row(1) = w.normalized().transpose();
  if (numeric_rank(m.transpose(), 1e-8) < 2) throw GeometryError("photon spanning vectors are dependent");
  // Reduced row echelon form with partial pivoting.
  Mat q = column_basis(m.transpose(), 1e-12).transpose();
  int row = 0;
  for (Eigen::Index c = 0; c < q.cols() && row < 2; ++c) {
    Eigen::Index best = row;
    for (Eigen::Index r = row; r < 2; ++r)
      if (std::abs(q(r, c)) > std::abs(q(best, c))) best = r;
    if (std::abs(q(best, c)) < 1e-8) continue;
    q.row(row).swap(q.row(best));
    q.row(row) /= q(row, c);
    for (Eigen::Index r = 0; r < 2; ++r)
      if (r != row) q.row(r) -= q(r, c) * q.row(row);
    ++row;
  }
  return {normalize_projective(q.row(0).transpose()), normalize_projective(q.row(1).transpose()), spec};
}

bool same_photon(const Photon& a, const Photon& b, double eps) {
  return subspace_distance(a.basis(), b.basis()) <= eps;
}

bool incidence(const EinPoint& a, const EinPoint& b, double eps) {
  return std::abs(inner(a.rep.normalized(), b.rep.normalized(), a.form)) <= eps;
}

bool incidence(const EinPoint& a, const Photon& b, double eps) {
  return line_to_subspace_distance(a.rep, b.basis()) <= eps;
}

bool incidence(const Photon& a, const EinPoint& b, double eps) { return incidence(b, a, eps); }

bool incidence(const Photon& a, const Photon& b, double eps) {
  Mat m(a.u.size(), 4);
  m << a.basis().householderQr().householderQ() * Mat::Identity(a.u.size(), 2),
      b.basis().householderQr().householderQ() * Mat::Identity(b.u.size(), 2);
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues()(3) <= eps;
}

Hypersurface hypersurface_from_vector(const Vec& v, const FormSpec& spec, double eps) {
  check_dim(v, spec);
  if (v.norm() == 0.0) throw GeometryError("zero vector defines no hypersurface");
  Subspace line{v, spec};
  Subspace perp = orth_complement(line, eps);
  CausalClass c = classify_vector(v, spec, eps);
  HypersurfaceKind k = HypersurfaceKind::Lightcone;
  if (c.tag == CausalTag::Spacelike) k = HypersurfaceKind::EinsteinHypersphere;
  if (c.tag == CausalTag::Timelike) k = HypersurfaceKind::SpacelikeHypersphere;
  Vec rep = c.tag == CausalTag::Lightlike ? normalize_projective(v) : v;
  return {k, perp, rep};
}

std::variant<Photon, Hypersurface> lightcone_pair_intersection(const EinPoint& p, const EinPoint& q, double eps) {
  if (same_point(p, q, eps)) throw GeometryError("lightcone intersection needs two distinct points");
  if (incidence(p, q, eps)) return photon_span(p.rep, q.rep, p.form, eps);
  Mat span(p.rep.size(), 2);
  span << p.rep, q.rep;
  Subspace perp = orth_complement({span, p.form}, eps);
  Signature s = signature(perp, eps);
  if (s.q != 1 || s.r != 0) throw GeometryError("lightcone intersection is not a spacelike circle");
  return Hypersurface{HypersurfaceKind::SpacelikeCircle, perp, Vec()};
}

LightconeSection lightcone_vs_hypersphere(const Vec& u, const Vec& v, const FormSpec& spec, double eps) {
  check_dim(u, spec);
  check_dim(v, spec);
  if (u.norm() == 0.0 || !is_null(u, spec, eps)) throw GeometryError("lightcone vertex must be a null vector");
  if (classify_vector(v, spec, eps).tag != CausalTag::Spacelike)
    throw GeometryError("hypersphere normal must be spacelike");
  if (std::abs(inner(u, v, spec)) <= eps * u.norm() * v.norm()) return LightconeSection::TwoIncidentPhotons;
  return LightconeSection::SpacelikeCircle;
}

Mat minkowski_metric(int n) {
  Mat q = Mat::Identity(n + 1, n + 1);
  q(n, n) = -1;
  return q;
}

double minkowski_inner(const Vec& x, const Vec& y) {
  Eigen::Index n = x.size() - 1;
  return x.head(n).dot(y.head(n)) - x(n) * y(n);
}

Vec chart_section(const Vec& x) {
  Vec s(x.size() + 2);
  s << x, minkowski_inner(x, x), 1.0;
  return s;
}

EinPoint minkowski_chart(const Vec& x) {
  return {normalize_projective(chart_section(x)), ein_form(static_cast<int>(x.size()) - 1)};
}

std::string stratum_name(IdealStratum s) {
  switch (s) {
    case IdealStratum::ImproperPoint: return "improper_point";
    case IdealStratum::IdealSpherePoint: return "ideal_sphere_point";
    case IdealStratum::GenericIdealPoint: return "generic_ideal_point";
  }
  return "?";
}

Vec chart_inverse(const EinPoint& p, double eps) {
  const Vec r = p.rep.normalized();
  const int nu = u_slot(p.form);
  const int nv = v_slot(p.form);
  if (std::abs(r(nv)) <= eps) {
    if (r.head(nu).norm() <= eps) throw ChartError(IdealStratum::ImproperPoint, "improper point p_inf");
    if (std::abs(r(nu)) <= eps) throw ChartError(IdealStratum::IdealSpherePoint, "point of the ideal sphere");
    throw ChartError(IdealStratum::GenericIdealPoint, "generic point of the ideal lightcone");
  }
  return r.head(nu) / r(nv);
}

ConformalTransform similarity_matrix(double r, const Mat& a, const Vec& b, double eps) {
  const Eigen::Index m = a.rows();
  if (a.cols() != m || b.size() != m) throw std::invalid_argument("similarity data has inconsistent sizes");
  if (!(r > 0)) throw GeometryError("similarity scale must be positive");
  Mat q = minkowski_metric(static_cast<int>(m) - 1);
  if ((a.transpose() * q * a - q).cwiseAbs().maxCoeff() > eps * std::max(1.0, a.squaredNorm()))
    throw GeometryError("linear part is not a Lorentz isometry");
  Mat t = Mat::Identity(m + 2, m + 2);
  t.block(0, m + 1, m, 1) = b;
  t.block(m, 0, 1, m) = 2.0 * b.transpose() * q;
  t(m, m + 1) = minkowski_inner(b, b);
  Mat d = Mat::Zero(m + 2, m + 2);
  d.topLeftCorner(m, m) = a;
  d(m, m) = r;
  d(m + 1, m + 1) = 1.0 / r;
  return {t * d, ein_form(static_cast<int>(m) - 1)};
}

Similarity similarity_parts(const ConformalTransform& g, double eps) {
  const Mat& f0 = g.matrix;
  const Eigen::Index m = f0.rows() - 2;
  Vec col_u = f0.col(m);
  double scale = f0.norm();
  Vec off = col_u;
  off(m) = 0;
  if (off.norm() > eps * scale) throw GeometryError("transform does not fix the improper point");
  double c = f0(m + 1, m + 1);
  if (std::abs(c) <= eps * scale) throw GeometryError("transform is not a similarity of the patch");
  Mat f = c > 0 ? f0 : Mat(-f0);
  double r = 1.0 / f(m + 1, m + 1);
  return {r, f.topLeftCorner(m, m), r * f.block(0, m + 1, m, 1)};
}

Mat inversion_matrix(int n) {
  Mat m = Mat::Identity(n + 3, n + 3);
  m(n + 1, n + 1) = m(n + 2, n + 2) = 0;
  m(n + 1, n + 2) = m(n + 2, n + 1) = 1;
  return m;
}

EinPoint inversion_apply(const EinPoint& p) {
  int n = p.form.dim() - 3;
  return {normalize_projective(inversion_matrix(n) * p.rep), p.form};
}

double invert_photon_parameter(double r0, double psi, double theta, double t, double eps) {
  if (!(r0 > 0)) throw std::invalid_argument("radius must be positive");
  double d = r0 * r0 + 2.0 * r0 * std::cos(theta - psi) * t;
  if (std::abs(d) <= eps * std::max({1.0, r0 * r0, std::abs(2.0 * r0 * t)}))
    throw GeometryError("photon point maps into the ideal lightcone");
  return t / d;
}

std::string involution_name(InvolutionType t) {
  switch (t) {
    case InvolutionType::EmptyFix: return "empty_fix";
    case InvolutionType::SpacelikeSphere: return "spacelike_sphere";
    case InvolutionType::TimelikeCircle: return "timelike_circle";
    case InvolutionType::SpacelikeCircleAndTwoPoints: return "spacelike_circle_and_two_points";
    case InvolutionType::EinsteinHypersphere: return "einstein_hypersphere";
  }
  return "?";
}

InvolutionReport classify_involution(const ConformalTransform& g, double eps) {
  const Mat& m = g.matrix;
  const Eigen::Index n = m.rows();
  if (n != 5 || g.form.dim() != 5) throw std::invalid_argument("involution classification is for Ein^{2,1}");
  Mat id = Mat::Identity(n, n);
  double scale = std::max(1.0, m.squaredNorm());
  Mat sq = m * m;
  if ((sq + id).cwiseAbs().maxCoeff() <= eps * scale) {
    InvolutionReport rep{InvolutionType::EmptyFix, {Mat(n, 0), g.form}, {Mat(n, 0), g.form}, {}, {}, {}};
    return rep;
  }
  if ((sq - id).cwiseAbs().maxCoeff() > eps * scale) throw GeometryError("transform is not an involution");
  if ((m - id).cwiseAbs().maxCoeff() <= eps || (m + id).cwiseAbs().maxCoeff() <= eps)
    throw GeometryError("transform acts trivially");
  Subspace plus{null_space(m - id, 1e-7), g.form};
  Subspace minus{null_space(m + id, 1e-7), g.form};
  InvolutionReport rep{InvolutionType::EmptyFix, plus, minus, {}, {}, {}};
  const Subspace& small = plus.dim() <= minus.dim() ? plus : minus;
  const Subspace& large = plus.dim() <= minus.dim() ? minus : plus;
  Signature s = signature(small, eps);
  if (small.dim() == 1) {
    rep.type = s.p == 1 ? InvolutionType::EinsteinHypersphere : InvolutionType::SpacelikeSphere;
    if (s.r != 0) throw GeometryError("involution has a degenerate eigenspace");
    return rep;
  }
  if (s.r != 0) throw GeometryError("involution has a degenerate eigenspace");
  if (s.p == 2) {
    rep.type = InvolutionType::TimelikeCircle;
    rep.circle = large;
  } else if (s.q == 2) {
    rep.type = InvolutionType::EmptyFix;
  } else {
    rep.type = InvolutionType::SpacelikeCircleAndTwoPoints;
    // Null lines of the (1,1) plane.
    Mat b = small.basis;
    Mat gm = gram(b, g.form);
    Eigen::SelfAdjointEigenSolver<Mat> es(gm);
    Vec ep = b * es.eigenvectors().col(1) / std::sqrt(es.eigenvalues()(1));
    Vec en = b * es.eigenvectors().col(0) / std::sqrt(-es.eigenvalues()(0));
    EinPoint a = project_null(ep + en, g.form, 1e-7);
    EinPoint c = project_null(ep - en, g.form, 1e-7);
    // Order the pair deterministically by canonical representative.
    bool swap = false;
    for (Eigen::Index i = 0; i < a.rep.size(); ++i) {
      if (std::abs(a.rep(i) - c.rep(i)) > 1e-12) {
        swap = a.rep(i) > c.rep(i);
        break;
      }
    }
    if (swap) std::swap(a, c);
    rep.p1 = a;
    rep.p2 = c;
    rep.circle = large;
    Mat pq(n, 2);
    pq << a.rep, c.rep;
    Subspace inter = orth_complement({pq, g.form}, eps);
    if (subspace_distance(inter.basis, large.basis) > 1e-6)
      throw GeometryError("fixed circle differs from the lightcone intersection");
  }
  return rep;
}

Vec improper_spatial(int n) { return p_inf(n).rep; }
Vec improper_timelike(int n) { return -p_inf(n).rep; }

GeodesicFrontier geodesic_closure(const Vec& p, const Vec& v, double eps) {
  if (v.norm() == 0.0) throw GeometryError("zero direction");
  if (p.size() != v.size()) throw std::invalid_argument("point and direction sizes differ");
  int n = static_cast<int>(p.size()) - 1;
  double qv = minkowski_inner(v, v);
  double thr = eps * v.squaredNorm();
  if (qv > thr) return {FrontierKind::SpatialImproperPoint, improper_spatial(n), {}};
  if (qv < -thr) return {FrontierKind::TimelikeImproperPoint, improper_timelike(n), {}};
  Vec ideal(p.size() + 2);
  ideal << v, 2.0 * minkowski_inner(p, v), 0.0;
  Photon ph = photon_span(chart_section(p), ideal, ein_form(n), 1e-7);
  return {FrontierKind::Photon, normalize_projective(ideal), ph};
}

Mat ein11_form() {
  Mat b = Mat::Zero(4, 4);
  b(0, 3) = b(3, 0) = 0.5;
  b(1, 2) = b(2, 1) = -0.5;
  return b;
}

Ein11Point ein11_model(const Eigen::Matrix2d& x, double eps) {
  double n2 = x.squaredNorm();
  if (n2 == 0.0) throw GeometryError("zero matrix is not a point");
  if (std::abs(x.determinant()) > eps * n2) throw GeometryError("matrix is nonsingular");
  Eigen::JacobiSVD<Eigen::Matrix2d> svd(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Ein11Point p;
  p.coords = vec({x(0, 0), x(0, 1), x(1, 0), x(1, 1)});
  p.column_leaf = normalize_projective(svd.matrixU().col(0));
  p.row_leaf = normalize_projective(svd.matrixV().col(0));
  return p;
}

Mat ein11_action(const Eigen::Matrix2d& a, const Eigen::Matrix2d& b) {
  Eigen::Matrix2d binv = b.inverse();
  Mat m(4, 4);
  for (int k = 0; k < 4; ++k) {
    Eigen::Matrix2d e = Eigen::Matrix2d::Zero();
    e(k / 2, k % 2) = 1;
    Eigen::Matrix2d y = a * e * binv;
    m.col(k) = vec({y(0, 0), y(0, 1), y(1, 0), y(1, 1)});
  }
  return m;
}

}  // namespace ein
