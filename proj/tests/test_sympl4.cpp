#include "einkit/lie.hpp"
#include "einkit/sympl4.hpp"
#include "support.hpp"

#include <doctest.h>
#include <unsupported/Eigen/MatrixFunctions>

using namespace ein;
using ein::test::Rng;

namespace {

Vec e(int i) {
  Vec v = Vec::Zero(4);
  v(i - 1) = 1;
  return v;
}

// a ^ b as a multiple of vol, written out by hand on raw coordinates
// (e12, e13, e14, e23, e24, e34).
double wedge_vol(const Vec& a, const Vec& b) {
  return a(0) * b(5) - a(1) * b(4) + a(2) * b(3) + a(3) * b(2) - a(4) * b(1) + a(5) * b(0);
}

Mat random_sp_algebra(Rng& rng, double scale = 1.0) {
  Mat s = rng.matrix(4, 4, scale);
  s = (s + s.transpose()).eval();
  return symp_J() * s;
}

Mat random_symplectic(Rng& rng, double scale = 0.5) { return random_sp_algebra(rng, scale).exp(); }

Lagrangian random_lagrangian(Rng& rng) {
  Vec v1 = rng.vector(4);
  Mat k = test::lu_kernel((symp_J().transpose() * v1).transpose());
  Vec v2 = k * rng.vector(k.cols());
  return make_lagrangian(v1, v2);
}

EinPoint point_of(const Lagrangian& l) { return lagrangian_to_point(l); }

}  // namespace

TEST_SUITE("sympl4") {

TEST_CASE("symplectic structure") {
  const Mat& j = symp_J();
  CHECK(approx_equal(j.transpose(), -j, 0.0));
  CHECK(approx_equal(j * j, -Mat::Identity(4, 4), 0.0));
  CHECK(omega(e(1), e(2)) == -1.0);
  CHECK(omega(e(1), e(3)) == 0.0);
}

TEST_CASE("bivector form against the wedge product") {
  Rng rng(31);
  for (int i = 0; i < 100; ++i) {
    Vec a = rng.vector(6), b = rng.vector(6);
    CHECK(bivector_form(a, b) == doctest::Approx(-wedge_vol(a, b)).epsilon(1e-12));
    CHECK(bivector_form(a, b) == doctest::Approx(bivector_form(b, a)).epsilon(1e-14));
  }
  Mat g(6, 6);
  for (int i = 0; i < 6; ++i)
    for (int k = 0; k < 6; ++k) g(i, k) = bivector_form(Mat::Identity(6, 6).col(i), Mat::Identity(6, 6).col(k));
  auto in = test::ldlt_inertia(g, 1e-12);
  CHECK(in.pos == 3);
  CHECK(in.neg == 3);
}

TEST_CASE("f basis and the dual bivector") {
  const Mat& f = f_basis();
  Mat gram(5, 5);
  for (int i = 0; i < 5; ++i)
    for (int k = 0; k < 5; ++k) gram(i, k) = bivector_form(f.col(i), f.col(k));
  CHECK(approx_equal(gram, form_matrix(w0_form()), 1e-15));
  CHECK(gram(2, 2) == doctest::Approx(1.0));
  CHECK(gram(0, 4) == 1.0);

  const Vec& w = dual_bivector();
  CHECK(bivector_form(w, w) == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(wedge_vol(w, w) == doctest::Approx(2.0).epsilon(1e-14));
  for (int i = 0; i < 5; ++i) CHECK(std::abs(bivector_form(w, f.col(i))) < 1e-15);
  for (int i = 1; i <= 4; ++i)
    for (int k = 1; k <= 4; ++k) CHECK(omega(e(i), e(k)) == doctest::Approx(bivector_form(wedge(e(i), e(k)), w)));
  CHECK(signature({Mat::Identity(5, 5), w0_form()}) == Signature{3, 2, 0});
}

TEST_CASE("Lagrangians and points") {
  auto f1 = point_of(make_lagrangian(e(1), e(3)));
  CHECK(projective_distance(f1.rep, vec({1, 0, 0, 0, 0})) < 1e-15);
  auto f2 = point_of(make_lagrangian(e(2), e(3)));
  CHECK(projective_distance(f2.rep, vec({0, 1, 0, 0, 0})) < 1e-15);
  CHECK(projective_distance(point_of(make_lagrangian(e(1) + e(3), e(3))).rep, f1.rep) < 1e-15);
  CHECK(subspace_distance(point_to_lagrangian(f1).span, make_lagrangian(e(1), e(3)).span) < 1e-12);
  CHECK_THROWS_AS(make_lagrangian(e(1), e(2)), GeometryError);
  CHECK_THROWS_AS(make_lagrangian(e(1), 2 * e(1)), GeometryError);
  CHECK_THROWS_AS(point_to_lagrangian({vec({0, 0, 1, 0, 0}), w0_form()}), GeometryError);

  Rng rng(32);
  for (int i = 0; i < 200; ++i) {
    Lagrangian l = random_lagrangian(rng);
    EinPoint p = point_of(l);
    CHECK(std::abs(quad(p.rep, w0_form())) < 1e-12);
    Lagrangian back = point_to_lagrangian(p);
    CHECK(std::abs(omega(back.span.col(0), back.span.col(1))) < 1e-10);
    CHECK(subspace_distance(back.span, l.span) < 1e-9);
  }
}

TEST_CASE("lines and photons") {
  Photon ph = line_to_photon(e(1));
  // Lagrangians through e1: span{e1, e3} and span{e1, e4}
  CHECK(incidence(point_of(make_lagrangian(e(1), e(3))), ph));
  CHECK(incidence(point_of(make_lagrangian(e(1), e(4))), ph));
  CHECK(projective_distance(photon_to_line(ph), e(1)) < 1e-12);

  Rng rng(33);
  for (int i = 0; i < 100; ++i) {
    Vec v = rng.vector(4);
    Photon phi = line_to_photon(v);
    Lagrangian l = random_lagrangian(rng);
    if (i % 2 == 0) {
      Mat k = test::lu_kernel((symp_J().transpose() * v).transpose());
      l = make_lagrangian(v, k * rng.vector(k.cols()));
    }
    bool contains = line_to_subspace_distance(v, l.span) < 1e-9;
    CHECK(incidence(point_of(l), phi, 1e-9) == contains);
    CHECK(projective_distance(photon_to_line(phi), v) < 1e-9);
  }
}

TEST_CASE("algebra homomorphism") {
  Mat h = cartan_H(0.7, -1.3);
  Mat img = sp_to_so_algebra(h);
  Vec d = vec({0.7 - 1.3, -0.7 - 1.3, 0, 0.7 + 1.3, -0.7 + 1.3});
  CHECK(approx_equal(img, Mat(d.asDiagonal()), 1e-15));
  CHECK(approx_equal(sp_to_so_algebra(Mat::Zero(4, 4)), Mat::Zero(5, 5), 0.0));
  CHECK_THROWS_AS(sp_to_so_algebra(Mat::Identity(4, 4)), GeometryError);

  Rng rng(34);
  const Mat b5 = form_matrix(w0_form());
  for (int i = 0; i < 100; ++i) {
    Mat m = random_sp_algebra(rng), n = random_sp_algebra(rng);
    Mat mt = sp_to_so_algebra(m), nt = sp_to_so_algebra(n);
    CHECK(test::max_abs(mt.transpose() * b5 + b5 * mt) < 1e-12);
    CHECK(test::max_abs(sp_to_so_algebra(bracket(m, n)) - bracket(mt, nt)) < 1e-9);
  }
}

TEST_CASE("displayed formula is in so(3,2) but not bracket preserving") {
  Rng rng(35);
  const Mat b5 = form_matrix(w0_form());
  double worst = 0;
  for (int i = 0; i < 20; ++i) {
    Mat m = random_sp_algebra(rng), n = random_sp_algebra(rng);
    Mat mt = sp_to_so_algebra_displayed(m);
    CHECK(test::max_abs(mt.transpose() * b5 + b5 * mt) < 1e-12);
    Mat h = cartan_H(rng.normal(), rng.normal());
    CHECK(approx_equal(sp_to_so_algebra_displayed(h), sp_to_so_algebra(h), 1e-15));
    worst = std::max(worst, test::max_abs(sp_to_so_algebra_displayed(bracket(m, n)) -
                                          bracket(mt, sp_to_so_algebra_displayed(n))));
  }
  CHECK(worst > 1e-3);
}

TEST_CASE("group homomorphism") {
  CHECK(approx_equal(sp_to_so_group(Mat::Identity(4, 4)).matrix, Mat::Identity(5, 5), 1e-15));
  CHECK(approx_equal(sp_to_so_group(-Mat::Identity(4, 4)).matrix, Mat::Identity(5, 5), 1e-15));
  CHECK_THROWS_AS(sp_to_so_group(2 * Mat::Identity(4, 4)), GeometryError);

  Rng rng(36);
  for (int i = 0; i < 50; ++i) {
    Mat m = random_sp_algebra(rng, 0.4);
    Mat lhs = sp_to_so_group(m.exp()).matrix;
    Mat rhs = sp_to_so_algebra(m).exp();
    CHECK(test::max_abs(lhs - rhs) < 1e-9 * std::max(1.0, rhs.norm()));
  }
  for (int i = 0; i < 50; ++i) {
    Mat g = random_symplectic(rng), g2 = random_symplectic(rng);
    CHECK(is_symplectic(g, 1e-9));
    ConformalTransform t = sp_to_so_group(g);
    CHECK(preserves_form(t.matrix, w0_form(), 1e-9));
    CHECK(approx_equal(sp_to_so_group(g * g2).matrix, t.matrix * sp_to_so_group(g2).matrix, 1e-8));
    Lagrangian l = random_lagrangian(rng);
    EinPoint gl = point_of({g * l.span});
    CHECK(projective_distance(gl.rep, t.matrix * point_of(l).rep) < 1e-9);
  }
}

TEST_CASE("block-diagonal elements stabilize the symplectic-plane vector") {
  Mat g = Mat::Identity(4, 4);
  g.topLeftCorner(2, 2) << 2, 1, 3, 2;  // det 1, symplectic on span{e1, e2}
  g.bottomRightCorner(2, 2) << 1, 0, 5, 1;
  REQUIRE(is_symplectic(g));
  Vec up = symplectic_plane_vector(e(2), e(1));
  Mat t = sp_to_so_group(g).matrix;
  CHECK(projective_distance(t * up, up) < 1e-12);
  // its orthogonal 4-space is preserved too
  Subspace perp = orth_complement({up, w0_form()});
  CHECK(subspace_distance(t * perp.basis, perp.basis) < 1e-12);
}

TEST_CASE("symplectic plane vectors") {
  // omega(e2, e1) = 1
  Vec up = symplectic_plane_vector(e(2), e(1));
  CHECK(quad(up, w0_form()) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(hypersurface_from_vector(up, w0_form()).kind == HypersurfaceKind::EinsteinHypersphere);
  Mat change(2, 2);
  change << 2, 1, 1, 1;  // det 1
  Vec u1 = 2 * e(2) + e(1), u2 = e(2) + e(1);
  CHECK(omega(u1, u2) == doctest::Approx(1.0));
  CHECK(approx_equal(symplectic_plane_vector(u1, u2), up, 1e-12));
  CHECK_THROWS_AS(symplectic_plane_vector(e(1), e(3)), GeometryError);
  CHECK_THROWS_AS(symplectic_plane_vector(2 * e(2), e(1)), GeometryError);
}

TEST_CASE("complex structures") {
  const Mat& j = symp_J();
  CHECK(is_positive_compatible(-j));
  CHECK_FALSE(is_positive_compatible(j));
  CHECK_THROWS_AS(is_positive_compatible(Mat::Identity(4, 4)), GeometryError);
  Rng rng(37);
  for (int i = 0; i < 30; ++i) {
    Mat g = random_symplectic(rng);
    CHECK(is_positive_compatible(act_complex_structure(g, -j), 1e-8));
    CHECK_FALSE(is_positive_compatible(act_complex_structure(g, j), 1e-8));
  }
  // symplectic elements commuting with J are orthogonal
  for (int i = 0; i < 30; ++i) {
    Mat x = random_sp_algebra(rng);
    Mat m = 0.5 * (x - j * x * j);
    REQUIRE(in_sp4_algebra(m, 1e-12));
    Mat g = m.exp();
    CHECK(approx_equal(g * j, j * g, 1e-10));
    CHECK(approx_equal(g.transpose() * g, Mat::Identity(4, 4), 1e-10));
  }
}

TEST_CASE("contact planes and polarity") {
  CHECK(is_contact_line(make_lagrangian(e(1), e(3)).span));
  Mat sym(4, 2);
  sym << e(1), e(2);
  CHECK_FALSE(is_contact_line(sym));

  ContactPlane c = contact_plane(e(1)), c2 = contact_plane(2 * e(1));
  CHECK(subspace_distance(c.perp, c2.perp) < 1e-15);
  Mat expect(4, 3);
  expect << e(1), e(3), e(4);
  CHECK(subspace_distance(polarity(e(1)), expect) < 1e-15);

  Rng rng(38);
  for (int i = 0; i < 100; ++i) {
    Vec v = rng.vector(4);
    Mat h = polarity(v);
    CHECK(line_to_subspace_distance(v, h) < 1e-12);
    for (int k = 0; k < 3; ++k) CHECK(std::abs(omega(v.normalized(), h.col(k))) < 1e-12);
    CHECK(projective_distance(polarity_inverse(h), v) < 1e-12);
    ContactPlane cv = contact_plane(v);
    Mat tangent(4, 2);
    tangent << v, cv.quotient * rng.vector(2);
    CHECK(is_contact_line(tangent, 1e-9));
  }
  CHECK_THROWS_AS(polarity(Vec::Zero(4)), GeometryError);
}

TEST_CASE("Maslov incidence") {
  Lagrangian a = make_lagrangian(e(1), e(3)), b = make_lagrangian(e(2), e(4));
  CHECK(maslov_incident(a, a));
  CHECK_FALSE(maslov_incident(a, b));
  Rng rng(39);
  int incident = 0;
  for (int i = 0; i < 300; ++i) {
    Lagrangian w = random_lagrangian(rng), w2 = random_lagrangian(rng);
    if (i % 3 == 0) {
      Vec v = w.span * rng.vector(2);
      Mat k = test::lu_kernel((symp_J().transpose() * v).transpose());
      w2 = make_lagrangian(v, k * rng.vector(k.cols()));
    }
    bool m = maslov_incident(w, w2);
    incident += m;
    CHECK(m == incidence(point_of(w), point_of(w2), 1e-9));
  }
  CHECK(incident >= 100);
}

TEST_CASE("splitting involutions") {
  Lagrangian a = make_lagrangian(e(1), e(3)), b = make_lagrangian(e(2), e(4));
  SplittingInvolution s = splitting_involution(a, b);
  CHECK(approx_equal(s.theta, Mat(Eigen::Vector4d(1, -1, 1, -1).asDiagonal()), 1e-15));
  CHECK(s.time_reversing);
  CHECK(approx_equal(s.theta.transpose() * symp_J() * s.theta, -symp_J(), 1e-15));
  InvolutionReport r = classify_involution(s.image);
  CHECK(r.type == InvolutionType::SpacelikeCircleAndTwoPoints);
  REQUIRE(r.p1);
  EinPoint pa = point_of(a), pb = point_of(b);
  CHECK(((same_point(*r.p1, pa) && same_point(*r.p2, pb)) || (same_point(*r.p1, pb) && same_point(*r.p2, pa))));
  CHECK_THROWS_AS(splitting_involution(a, make_lagrangian(e(1), e(4))), GeometryError);
}

}
