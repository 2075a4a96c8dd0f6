#include "einkit/groups.hpp"

#include "einkit/dynamics.hpp"
#include "einkit/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace ein {

namespace {

const Mat3 kQ = Vec3(1, 1, -1).asDiagonal();

double mink(const Vec3& a, const Vec3& b) { return a.dot(kQ * b); }

// <x ⊠ y, w> = det(x, y, w)
Vec3 lorentz_cross(const Vec3& x, const Vec3& y) { return kQ * x.cross(y); }

Mat3 mirror(const Vec3& u) { return -Mat3::Identity() + 2.0 * u * u.transpose() * kQ; }

double sign_free_error(const Mat& a, const Mat& b) {
  return std::min((a - b).cwiseAbs().maxCoeff(), (a + b).cwiseAbs().maxCoeff());
}

// Gram determinant of two vectors normalised to unit Euclidean length.
double gram_det(const Vec& x, const Vec& y, const FormSpec& f) {
  Vec a = x.normalized(), b = y.normalized();
  double xx = inner(a, a, f), xy = inner(a, b, f), yy = inner(b, b, f);
  return xx * yy - xy * xy;
}

}  // namespace

SpacelikeCircle make_circle(const Mat& basis, const FormSpec& form, double eps) {
  if (form.p != 3 || form.q != 2 || basis.rows() != 5) throw std::invalid_argument("circles live in R^{3,2}");
  Subspace s{basis, form};
  if (signature(s, eps) != Signature{2, 1, 0}) throw GeometryError("subspace is not of type (2,1)");
  return {s};
}

SpacelikeCircle circle_from_spine(const Vec3& p, const Vec3& u, double eps) {
  Mat b(5, 3);
  b << vec({u(0), u(1), u(2), 0, 0}), vec({0, 0, 0, 1, 0}), chart_section(Vec(p));
  return make_circle(b, ein_form(), eps);
}

SpineReflection spine_reflection(const SpacelikeCircle& s, double eps) {
  const FormSpec& f = s.subspace.ambient;
  if (signature(s.subspace, eps) != Signature{2, 1, 0}) throw GeometryError("subspace is not of type (2,1)");
  const Mat b = form_matrix(f);
  const Mat& v = s.subspace.basis;
  const Mat proj = v * (v.transpose() * b * v).inverse() * v.transpose() * b;
  const Mat m = 2.0 * proj - Mat::Identity(f.dim(), f.dim());
  ConformalTransform t = make_transform(m, f, 1e-8);
  InvolutionReport rep = classify_involution(t, eps);
  if (rep.type != InvolutionType::SpacelikeCircleAndTwoPoints || !rep.p1 || !rep.p2)
    throw GeometryError("reflection does not fix a circle and two points");
  return {t, s, *rep.p1, *rep.p2};
}

SpineReflection spine_reflection(const Vec3& p, const Vec3& u, double eps) {
  return spine_reflection(circle_from_spine(p, u, eps), eps);
}

bool ultraparallel(const SpacelikeCircle& a, const SpacelikeCircle& b, double eps) {
  const FormSpec& f = a.subspace.ambient;
  const Mat bm = form_matrix(f);
  const Mat inter = subspace_intersection(a.subspace.basis, b.subspace.basis, 1e-9);
  if (inter.cols() == 3) throw std::invalid_argument("circles coincide");
  if (inter.cols() == 1 && std::abs(inner(inter.col(0), inter.col(0), f)) <= 1e-9) {
    // Common point q: compare the spine directions in q^perp / q.
    const Vec q = inter.col(0);
    const Mat qperp = null_space(Mat(q.transpose() * bm), 1e-12);
    std::array<Vec, 2> x;
    for (int i = 0; i < 2; ++i) {
      const Mat& vi = i == 0 ? a.subspace.basis : b.subspace.basis;
      Mat xi = subspace_intersection(vi, qperp, 1e-9);
      if (xi.cols() != 2) throw GeometryError("unexpected intersection with the lightcone of the common point");
      Vec d = xi.col(0) - xi.col(0).dot(q.normalized()) * q.normalized();
      Vec e = xi.col(1) - xi.col(1).dot(q.normalized()) * q.normalized();
      x[i] = d.norm() >= e.norm() ? d : e;
    }
    return gram_det(x[0], x[1], f) < -eps;
  }
  if (inter.cols() == 2 && signature(Subspace{inter, f}, 1e-9) == Signature{1, 1, 0}) {
    const Mat wperp = null_space(Mat(inter.transpose() * bm), 1e-12);
    Mat v1 = subspace_intersection(a.subspace.basis, wperp, 1e-9);
    Mat v2 = subspace_intersection(b.subspace.basis, wperp, 1e-9);
    if (v1.cols() != 1 || v2.cols() != 1) throw GeometryError("degenerate circle pair");
    return gram_det(v1.col(0), v2.col(0), f) < -eps;
  }
  throw GeometryError("circles meet in a subspace of unsupported type");
}

CompositionReport linear_report(const ConformalTransform& g) {
  Similarity s;
  try {
    s = similarity_parts(g, 1e-8);
  } catch (const GeometryError&) {
    throw GeometryError("transform is not a similarity of the Minkowski patch");
  }
  Eigen::EigenSolver<Mat> es(s.a);
  CompositionReport rep{g, {}, std::numeric_limits<double>::infinity(), false};
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) rep.eigenvalues.push_back(es.eigenvalues()(i));
  std::sort(rep.eigenvalues.begin(), rep.eigenvalues.end(),
            [](const auto& x, const auto& y) { return x.real() < y.real(); });
  bool real = true;
  for (const auto& l : rep.eigenvalues)
    if (std::abs(l.imag()) > 1e-9) real = false;
  for (size_t i = 0; i < rep.eigenvalues.size(); ++i)
    for (size_t j = i + 1; j < rep.eigenvalues.size(); ++j)
      rep.min_gap = std::min(rep.min_gap, std::abs(rep.eigenvalues[i] - rep.eigenvalues[j]));
  rep.hyperbolic = real && rep.min_gap > 1e-6;
  return rep;
}

CompositionReport compose_pair(const SpineReflection& i1, const SpineReflection& i2) {
  ConformalTransform g{i2.transform.matrix * i1.transform.matrix, i1.transform.form};
  return linear_report(g);
}

std::vector<Mat> GroupPresentation::matrices() const {
  std::vector<Mat> out;
  for (const auto& g : generators) out.push_back(g.matrix);
  return out;
}

std::array<SpineReflection, 3> factor_triple(const ConformalTransform& g1, const ConformalTransform& g2,
                                             const ConformalTransform& g3) {
  const std::array<const ConformalTransform*, 3> g{&g1, &g2, &g3};
  const Mat prod = g1.matrix * g2.matrix * g3.matrix;
  if (sign_free_error(prod, Mat::Identity(5, 5)) > 1e-8 * std::max(1.0, prod.norm()))
    throw GeometryError("product of the three isometries is not the identity");
  std::array<Vec3, 3> axis, t;
  for (int i = 0; i < 3; ++i) {
    CompositionReport rep = linear_report(*g[i]);
    if (!rep.hyperbolic) throw GeometryError("linear part is not hyperbolic");
    Similarity s = similarity_parts(*g[i], 1e-8);
    if (std::abs(s.r - 1.0) > 1e-8) throw GeometryError("transform is not an isometry");
    Eigen::EigenSolver<Mat> es(s.a);
    Eigen::Index best = 0;
    for (Eigen::Index k = 1; k < 3; ++k)
      if (std::abs(es.eigenvalues()(k) - 1.0) < std::abs(es.eigenvalues()(best) - 1.0)) best = k;
    axis[i] = es.eigenvectors().col(best).real();
    t[i] = s.b;
  }
  // Consecutive axes are the common perpendiculars of consecutive mirrors.
  std::array<Vec3, 3> u{lorentz_cross(axis[2], axis[0]), lorentz_cross(axis[0], axis[1]),
                        lorentz_cross(axis[1], axis[2])};
  std::array<Mat3, 3> r;
  std::array<Mat, 3> perp;
  for (int i = 0; i < 3; ++i) {
    double q = mink(u[i], u[i]);
    if (!(q > 1e-9 * u[i].squaredNorm())) throw GeometryError("invariant lines are not pairwise ultraparallel");
    u[i] /= std::sqrt(q);
    r[i] = mirror(u[i]);
    perp[i] = null_space(Mat((kQ * u[i]).transpose()), 1e-12);
  }
  // t_i = R_i c_{i+1} + c_i with c_i = (I - R_i) p_i in u_i^perp.
  Mat k = Mat::Zero(9, 6);
  Vec rhs(9);
  for (int i = 0; i < 3; ++i) {
    int j = (i + 1) % 3;
    k.block(3 * i, 2 * i, 3, 2) += perp[i];
    k.block(3 * i, 2 * j, 3, 2) += Mat(r[i]) * perp[j];
    rhs.segment(3 * i, 3) = t[i];
  }
  Vec y = k.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(rhs);
  std::array<SpineReflection, 3> out;
  for (int i = 0; i < 3; ++i) {
    Vec3 c = perp[i] * y.segment(2 * i, 2);
    out[i] = spine_reflection(Vec3(c / 2.0), u[i]);
  }
  for (int i = 0; i < 3; ++i) {
    const Mat m = out[i].transform.matrix * out[(i + 1) % 3].transform.matrix;
    if (sign_free_error(m, g[i]->matrix) > 1e-8 * std::max(1.0, g[i]->matrix.norm()))
      throw GeometryError("reflection factorization failed verification");
  }
  return out;
}

ExampleGroup example_group() {
  const double r2 = std::sqrt(2.0), r6 = std::sqrt(6.0);
  ExampleGroup ex;
  ex.spines = {Vec3(r2, 0, 1), Vec3(-r2 / 2, r6 / 2, 1), Vec3(-r2 / 2, -r6 / 2, 1)};
  ex.vertices = {Vec3(0, r2, 1), Vec3(-r6 / 2, -r2 / 2, 1), Vec3(r6 / 2, -r2 / 2, 1)};
  for (int i = 0; i < 3; ++i) {
    ex.circles[i] = circle_from_spine(ex.vertices[i], ex.spines[i]);
    ex.planes[i] = build_crooked(ex.vertices[i], ex.spines[i], 1);
    ex.reflections[i] = spine_reflection(ex.circles[i]);
    ex.group.generators.push_back(ex.reflections[i].transform);
    ex.group.relations.push_back({2 * i, 2 * i});
  }
  return ex;
}

std::vector<OrbitEntry<EinPoint>> orbit(const EinPoint& seed, const GroupPresentation& g, int len, double eps) {
  if (len < 0) throw std::invalid_argument("word length must be non-negative");
  std::vector<OrbitEntry<EinPoint>> out{{{}, seed}};
  const int n = static_cast<int>(seed.rep.size());
  const Vec unit = seed.rep.normalized();
  std::vector<double> flat(unit.data(), unit.data() + n);
  if (len == 0 || g.generators.empty()) return out;
  const std::vector<Mat> mats = g.matrices();
  for (const auto& w : reduced_words(mats, len)) {
    Vec v = (word_matrix(mats, w) * seed.rep).normalized();
    if (kernels::min_projective_distance(flat.data(), out.size(), n, v.data()) <= eps) continue;
    flat.insert(flat.end(), v.data(), v.data() + n);
    out.push_back({w, {v, seed.form}});
  }
  return out;
}

bool same_crooked(const CrookedPlane& a, const CrookedPlane& b, double eps) {
  if (a.orientation != b.orientation) return false;
  const double scale = std::max(1.0, a.vertex.norm());
  if ((a.vertex - b.vertex).norm() > eps * scale) return false;
  return std::min((a.spine - b.spine).norm(), (a.spine + b.spine).norm()) <= eps * std::max(1.0, a.spine.norm());
}

std::vector<OrbitEntry<CrookedPlane>> orbit(const CrookedPlane& seed, const GroupPresentation& g, int len,
                                            double eps) {
  if (len < 0) throw std::invalid_argument("word length must be non-negative");
  std::vector<OrbitEntry<CrookedPlane>> out{{{}, seed}};
  if (len == 0 || g.generators.empty()) return out;
  const std::vector<Mat> mats = g.matrices();
  for (const auto& w : reduced_words(mats, len)) {
    Similarity s = similarity_parts({word_matrix(mats, w), ein_form()}, 1e-8);
    CrookedPlane img = transform_crooked(seed, s.r, Mat3(s.a), Vec3(s.b));
    if (std::any_of(out.begin(), out.end(), [&](const auto& e) { return same_crooked(e.object, img, eps); }))
      continue;
    out.push_back({w, img});
  }
  return out;
}

ProperCertificate properness_certificate(const std::vector<CrookedPlane>& planes, const GroupPresentation& g,
                                         int len, std::size_t samples, std::uint64_t seed, double eps) {
  if (planes.empty()) throw std::invalid_argument("no walls given");
  if (len < 0) throw std::invalid_argument("word length must be non-negative");
  const int n = static_cast<int>(planes.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      DisjointReport d = disjoint(planes[i], planes[j], eps);
      if (!d.disjoint)
        throw WallIntersection(i, j, d.closest.point_a,
                               "walls " + std::to_string(i) + " and " + std::to_string(j) + " intersect");
    }
  // The region lies on the side of each wall that holds the other walls.
  std::vector<int> side(n, 1);
  for (int i = 0; i < n; ++i) {
    int s = 0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      FaceLabel l = membership(planes[j].vertex, planes[i], eps);
      if (l.tag != FaceTag::Outside || (s != 0 && l.index != s))
        throw GeometryError("walls do not bound a common region");
      s = l.index;
    }
    if (s != 0) side[i] = s;
  }
  auto in_region = [&](const Vec3& x) {
    for (int i = 0; i < n; ++i) {
      FaceLabel l = membership(x, planes[i], eps);
      if (l.tag != FaceTag::Outside || l.index != side[i]) return false;
    }
    return true;
  };
  double box = 4.0;
  for (const auto& p : planes) box = std::max(box, 4.0 * (p.vertex.norm() + 1.0));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-box, box);
  std::vector<Vec3> region;
  for (std::size_t tries = 0; region.size() < samples && tries < 1000 * samples; ++tries) {
    Vec3 x(coord(rng), coord(rng), coord(rng));
    if (in_region(x)) region.push_back(x);
  }
  if (region.size() < samples) throw GeometryError("could not sample the bounded region");

  ProperCertificate cert{true, len, 0, region.size(), {}, Vec3::Zero()};
  if (len == 0 || g.generators.empty()) return cert;
  const std::vector<Mat> mats = g.matrices();
  for (const auto& w : reduced_words(mats, len)) {
    Similarity s = similarity_parts({word_matrix(mats, w), ein_form()}, 1e-8);
    ++cert.words_checked;
    for (const Vec3& x : region) {
      Vec3 y = s.r * Mat3(s.a) * x + Vec3(s.b);
      if (in_region(y)) {
        cert.certified = false;
        cert.failing_word = w;
        cert.failing_point = x;
        return cert;
      }
    }
  }
  return cert;
}

}  // namespace ein
