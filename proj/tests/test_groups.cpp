#include "einkit/dynamics.hpp"
#include "einkit/groups.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace ein;
using ein::test::Rng;

namespace {

const FormSpec kF = ein_form();

double mink(const Vec3& a, const Vec3& b) { return a(0) * b(0) + a(1) * b(1) - a(2) * b(2); }

// Gram determinant of two spine directions: negative iff they span a Lorentzian plane.
double spine_gram(const Vec3& u, const Vec3& v) { return mink(u, u) * mink(v, v) - mink(u, v) * mink(u, v); }

Vec3 random_spine(Rng& rng) {
  for (;;) {
    Vec3 s = rng.vec3();
    if (mink(s, s) > 0.1 * s.squaredNorm()) return s;
  }
}

// Side of c holding the point, as returned by membership.
int side_of(const Vec3& x, const CrookedPlane& c) {
  FaceLabel l = membership(x, c);
  return l.tag == FaceTag::Outside ? l.index : 0;
}

Vec3 patch_image(const Mat& g, const Vec3& x) {
  Vec y = chart_inverse(EinPoint{g * chart_section(Vec(x)), kF});
  return Vec3(y(0), y(1), y(2));
}

}  // namespace

TEST_SUITE("groups") {

TEST_CASE("example circles") {
  ExampleGroup ex = example_group();
  for (const auto& c : ex.circles) {
    CHECK(signature(c.subspace) == Signature{2, 1, 0});
    test::Inertia in = test::ldlt_inertia(gram(c.subspace.basis, kF), 1e-9);
    CHECK(in.pos == 2);
    CHECK(in.neg == 1);
    CHECK(in.zero == 0);
  }
  // the three vertices are 120-degree rotations of each other about the time axis
  Mat3 rot = Mat3::Identity();
  rot(0, 0) = rot(1, 1) = std::cos(2 * M_PI / 3);
  rot(0, 1) = -std::sin(2 * M_PI / 3);
  rot(1, 0) = std::sin(2 * M_PI / 3);
  for (int i = 0; i < 3; ++i) {
    CHECK((rot * ex.vertices[i] - ex.vertices[(i + 1) % 3]).norm() < 1e-12);
    CHECK((rot * ex.spines[i] - ex.spines[(i + 1) % 3]).norm() < 1e-12);
  }
  CHECK(ex.group.generators.size() == 3);
  CHECK(ex.group.relations.size() == 3);
  CHECK(signature(make_circle(Mat(Mat::Identity(5, 5).leftCols(3))).subspace) == Signature{2, 1, 0});
  Mat timelike(5, 3);
  timelike << vec({1, 0, 0, 0, 0}), vec({0, 0, 1, 0, 0}), vec({0, 0, 0, 1, 1});
  CHECK_THROWS_AS(make_circle(timelike), GeometryError);
  CHECK_THROWS_AS(make_circle(Mat::Identity(4, 3)), std::invalid_argument);
}

TEST_CASE("spine reflections") {
  SpineReflection s0 = spine_reflection(Vec3::Zero(), Vec3(1, 0, 0));
  CHECK(test::max_abs(s0.transform.matrix - crooked_s0()) < 1e-12);

  Rng rng(201);
  std::vector<SpineReflection> rs;
  ExampleGroup ex = example_group();
  for (const auto& r : ex.reflections) rs.push_back(r);
  for (int i = 0; i < 30; ++i) rs.push_back(spine_reflection(rng.vec3(2.0), random_spine(rng)));
  for (const SpineReflection& r : rs) {
    const Mat& m = r.transform.matrix;
    CHECK(test::max_abs(m * m - Mat::Identity(5, 5)) < 1e-10);
    CHECK(preserves_form(m, kF, 1e-9));
    CHECK(time_orientation_sign(m, kF) == -1);
    CHECK(classify_involution(r.transform).type == InvolutionType::SpacelikeCircleAndTwoPoints);
    const Mat& v = r.fixed_circle.subspace.basis;
    CHECK(test::max_abs(m * v - v) < 1e-10);
    for (const EinPoint& p : {r.p1, r.p2}) {
      CHECK(projective_distance(m * p.rep, p.rep) < 1e-10);
      CHECK(std::abs(quad(p.rep.normalized(), kF)) < 1e-10);
      CHECK(test::max_abs(v.transpose() * form_matrix(kF) * p.rep) < 1e-9);
    }
    CHECK_FALSE(same_point(r.p1, r.p2, 1e-6));
    // a generic point is moved
    Vec x = chart_section(rng.vector(3));
    CHECK(projective_distance(m * x, x) > 1e-6);
    // patch isometry
    Similarity sp = similarity_parts(r.transform, 1e-8);
    CHECK(sp.r == doctest::Approx(1.0).epsilon(1e-10));
  }
  // points of the spine are fixed
  const Vec3 p(0.3, -1.0, 0.2), u(1.0, 0.5, 0.4);
  SpineReflection r = spine_reflection(p, u);
  for (double t : {-2.0, 0.0, 1.5}) {
    Vec x = chart_section(Vec(p + t * u));
    CHECK(projective_distance(r.transform.matrix * x, x) < 1e-10);
  }
  CHECK_THROWS_AS(spine_reflection(Vec3::Zero(), Vec3(0, 0, 1)), GeometryError);
}

TEST_CASE("ultraparallel circles") {
  ExampleGroup ex = example_group();
  for (int i = 0; i < 3; ++i) CHECK(ultraparallel(ex.circles[i], ex.circles[(i + 1) % 3]));
  CHECK_THROWS_AS(ultraparallel(ex.circles[0], ex.circles[0]), std::invalid_argument);

  // lightlike common perpendicular: the spines span a degenerate plane
  SpacelikeCircle a = circle_from_spine(Vec3(0, 0, 0), Vec3(1, 0, 0));
  SpacelikeCircle b = circle_from_spine(Vec3(0, 3, 0.5), Vec3(0.5, 1, 1));
  CHECK(std::abs(spine_gram(Vec3(1, 0, 0), Vec3(0.5, 1, 1))) < 1e-12);
  CHECK_FALSE(ultraparallel(a, b));
  // spacelike span: crossing directions
  CHECK_FALSE(ultraparallel(a, circle_from_spine(Vec3(0, 0, 2), Vec3(0, 1, 0))));

  Rng rng(202);
  int yes = 0, no = 0;
  for (int i = 0; i < 300; ++i) {
    Vec3 u1 = random_spine(rng), u2 = random_spine(rng);
    Vec3 p1 = rng.vec3(2.0);
    // every third pair has spines meeting in the patch (intersection of type (1,1))
    Vec3 p2 = i % 3 == 0 ? Vec3(p1 + rng.uniform(-1, 1) * u1) : rng.vec3(2.0);
    const double g = spine_gram(u1 / std::sqrt(mink(u1, u1)), u2 / std::sqrt(mink(u2, u2)));
    if (std::abs(g) < 1e-6) continue;
    bool up = ultraparallel(circle_from_spine(p1, u1), circle_from_spine(p2, u2));
    CHECK(up == (g < 0));
    (up ? yes : no)++;
  }
  CHECK(yes > 30);
  CHECK(no > 30);
}

TEST_CASE("compositions") {
  ExampleGroup ex = example_group();
  for (int i = 0; i < 3; ++i) {
    const SpineReflection& a = ex.reflections[i];
    const SpineReflection& b = ex.reflections[(i + 1) % 3];
    CompositionReport c = compose_pair(a, b);
    CHECK(c.hyperbolic);
    CHECK(c.min_gap > 1e-6);
    REQUIRE(c.eigenvalues.size() == 3);
    std::complex<double> prod = 1.0;
    for (const auto& l : c.eigenvalues) {
      CHECK(std::abs(l.imag()) < 1e-12);
      prod *= l;
    }
    CHECK(std::abs(prod - 1.0) < 1e-9);
    CHECK(std::abs(c.eigenvalues[1] - 1.0) < 1e-9);
    CHECK(c.eigenvalues[0].real() * c.eigenvalues[2].real() == doctest::Approx(1.0).epsilon(1e-9));
    // inverse symmetry
    CompositionReport d = compose_pair(b, a);
    CHECK(test::max_abs(c.gamma.matrix * d.gamma.matrix - Mat::Identity(5, 5)) < 1e-9);
  }
  CompositionReport id = compose_pair(ex.reflections[0], ex.reflections[0]);
  CHECK_FALSE(id.hyperbolic);
  CHECK(test::max_abs(id.gamma.matrix - Mat::Identity(5, 5)) < 1e-10);
  CHECK(classify_distortion_so(powers(id.gamma.matrix, 16), kF).so_class == SoClass::None);
  CHECK_THROWS_AS(linear_report({inversion_matrix(), kF}), GeometryError);
}

TEST_CASE("ping-pong for a pair of walls") {
  ExampleGroup ex = example_group();
  Rng rng(203);
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    const CrookedPlane& ci = ex.planes[i];
    const CrookedPlane& cj = ex.planes[j];
    const Mat& ii = ex.reflections[i].transform.matrix;
    const Mat& ij = ex.reflections[j].transform.matrix;
    CHECK(disjoint(ci, cj).disjoint);
    const int near_i = side_of(cj.vertex, ci);  // side of C_i facing C_j
    const int near_j = side_of(ci.vertex, cj);
    REQUIRE(near_i != 0);
    REQUIRE(near_j != 0);
    const Mat gamma = ij * ii;
    int checked = 0;
    for (int k = 0; k < 4000 && checked < 300; ++k) {
      Vec3 x = rng.vec3(6.0);
      const int si = side_of(x, ci);
      if (si == 0) continue;
      // the reflection swaps the sides of its wall
      CHECK(side_of(patch_image(ii, x), ci) == -si);
      if (si != near_i) continue;
      // gamma maps the half-space of C_i facing C_j into the far side of C_j
      CHECK(side_of(patch_image(gamma, x), cj) == -near_j);
      ++checked;
    }
    CHECK(checked >= 100);
    // the reflection preserves its own wall
    for (double t : {-1.0, 0.5, 2.0}) {
      Vec3 w = ci.vertex + t * ci.l1 + 0.7 * ci.orientation * ci.spine;
      CHECK(membership(patch_image(ii, w), ci, 1e-8).tag != FaceTag::Outside);
    }
  }
}

TEST_CASE("factor triple") {
  ExampleGroup ex = example_group();
  const auto& r = ex.reflections;
  auto prod = [](const SpineReflection& a, const SpineReflection& b) {
    return ConformalTransform{a.transform.matrix * b.transform.matrix, kF};
  };
  auto out = factor_triple(prod(r[0], r[1]), prod(r[1], r[2]), prod(r[2], r[0]));
  for (int i = 0; i < 3; ++i) {
    CHECK(subspace_distance(out[i].fixed_circle.subspace.basis, r[i].fixed_circle.subspace.basis) < 1e-8);
    CHECK(test::max_abs(out[i].transform.matrix - r[i].transform.matrix) < 1e-8);
  }

  Rng rng(204);
  int done = 0;
  for (int attempt = 0; attempt < 400 && done < 25; ++attempt) {
    std::array<Vec3, 3> u{random_spine(rng), random_spine(rng), random_spine(rng)};
    bool ok = true;
    for (int i = 0; i < 3; ++i) {
      Vec3 a = u[i] / std::sqrt(mink(u[i], u[i])), b = u[(i + 1) % 3] / std::sqrt(mink(u[(i + 1) % 3], u[(i + 1) % 3]));
      if (spine_gram(a, b) > -0.05) ok = false;
    }
    if (!ok) continue;
    std::array<SpineReflection, 3> s{spine_reflection(rng.vec3(2.0), u[0]), spine_reflection(rng.vec3(2.0), u[1]),
                                     spine_reflection(rng.vec3(2.0), u[2])};
    std::array<ConformalTransform, 3> g{prod(s[0], s[1]), prod(s[1], s[2]), prod(s[2], s[0])};
    auto f = factor_triple(g[0], g[1], g[2]);
    for (int i = 0; i < 3; ++i) {
      Mat back = f[i].transform.matrix * f[(i + 1) % 3].transform.matrix;
      CHECK(test::max_abs(back - g[i].matrix) < 1e-8 * std::max(1.0, g[i].matrix.norm()));
      CHECK(subspace_distance(f[i].fixed_circle.subspace.basis, s[i].fixed_circle.subspace.basis) < 1e-6);
    }
    ++done;
  }
  CHECK(done >= 10);

  // elliptic linear part
  Mat3 rot = Mat3::Identity();
  rot(0, 0) = rot(1, 1) = std::cos(0.4);
  rot(0, 1) = -std::sin(0.4);
  rot(1, 0) = std::sin(0.4);
  ConformalTransform e = similarity_matrix(1.0, Mat(rot), Vec::Zero(3));
  ConformalTransform ei{e.matrix.inverse(), kF};
  ConformalTransform one{Mat::Identity(5, 5), kF};
  CHECK_THROWS_AS(factor_triple(e, ei, one), GeometryError);
  // product not the identity
  CHECK_THROWS_AS(factor_triple(prod(r[0], r[1]), prod(r[1], r[2]), prod(r[0], r[1])), GeometryError);
}

TEST_CASE("orbits") {
  ExampleGroup ex = example_group();
  const EinPoint seed{chart_section(vec({0.1, 0.2, 0.3})), kF};
  auto o0 = orbit(seed, ex.group, 0);
  REQUIRE(o0.size() == 1);
  CHECK(o0[0].word.empty());

  // an involutive generator: words never repeat a letter
  GroupPresentation one{{ex.group.generators[0]}, {{0, 0}}};
  auto o1 = orbit(seed, one, 3);
  CHECK(o1.size() == 2);

  auto o3 = orbit(seed, ex.group, 3);
  CHECK(o3.size() == 1 + 3 + 6 + 12);
  const std::vector<Mat> mats = ex.group.matrices();
  for (size_t i = 0; i < o3.size(); ++i) {
    CHECK(projective_distance(word_matrix(mats, o3[i].word) * seed.rep, o3[i].object.rep) < 1e-10);
    if (i > 0) {
      const auto& a = o3[i - 1].word;
      const auto& b = o3[i].word;
      CHECK((a.size() < b.size() || (a.size() == b.size() && a < b)));
    }
    for (size_t j = 0; j < i; ++j) CHECK(projective_distance(o3[i].object.rep, o3[j].object.rep) > 1e-9);
  }
  // orbit of a fixed point of a generator collapses
  auto fixed = orbit(ex.reflections[0].p1, one, 2);
  CHECK(fixed.size() == 1);

  GroupPresentation pair{{ex.group.generators[0], ex.group.generators[1]}, {{0, 0}, {2, 2}}};
  auto planes = orbit(ex.planes[0], pair, 2);
  CHECK(planes.size() <= 4);
  CHECK(planes.size() == 3);
  for (size_t i = 0; i < planes.size(); ++i)
    for (size_t j = i + 1; j < planes.size(); ++j) CHECK(disjoint(planes[i].object, planes[j].object).disjoint);
  CHECK_THROWS_AS(orbit(seed, ex.group, -1), std::invalid_argument);
}

TEST_CASE("properness certificate") {
  ExampleGroup ex = example_group();
  std::vector<CrookedPlane> walls(ex.planes.begin(), ex.planes.end());
  ProperCertificate c = properness_certificate(walls, ex.group, 4, 500);
  CHECK(c.certified);
  CHECK(c.depth == 4);
  CHECK(c.words_checked == 3 + 6 + 12 + 24);
  CHECK(c.region_samples == 500);

  // non-trivial length-2 words act freely on region samples
  const std::vector<Mat> mats = ex.group.matrices();
  ProperCertificate c0 = properness_certificate(walls, ex.group, 0, 200, 5);
  CHECK(c0.words_checked == 0);
  Rng rng(205);
  for (const auto& w : reduced_words(mats, 2)) {
    if (w.size() != 2) continue;
    Mat g = word_matrix(mats, w);
    for (int k = 0; k < 50; ++k) {
      Vec3 x = rng.vec3(3.0);
      CHECK(projective_distance(g * chart_section(Vec(x)), chart_section(Vec(x))) > 1e-6);
    }
  }

  // identical walls
  std::vector<CrookedPlane> same{ex.planes[0], ex.planes[0]};
  try {
    properness_certificate(same, ex.group, 2);
    FAIL("expected WallIntersection");
  } catch (const WallIntersection& e) {
    CHECK(e.first == 0);
    CHECK(e.second == 1);
    CHECK(membership(e.witness, ex.planes[0], 1e-7).tag != FaceTag::Outside);
  }

  // push the second wall toward the first until they meet
  std::vector<CrookedPlane> moved = walls;
  const Vec3 d = ex.planes[0].vertex - ex.planes[1].vertex;
  double t = 0;
  for (int step = 0; step <= 20; ++step) {
    t = 0.05 * step;
    moved[1] = build_crooked(Vec3(ex.planes[1].vertex + t * d), ex.planes[1].spine, 1);
    if (monte_carlo_distance(moved[0], moved[1], 20000, 1, 10.0).min_distance < 0.05) break;
  }
  REQUIRE(disjoint(moved[0], moved[1]).gap < 0.05);
  try {
    properness_certificate(moved, ex.group, 2);
    FAIL("expected WallIntersection");
  } catch (const WallIntersection& e) {
    CHECK(membership(e.witness, moved[e.first], 1e-7).tag != FaceTag::Outside);
    CHECK(membership(e.witness, moved[e.second], 1e-7).tag != FaceTag::Outside);
  }

  // a group that fixes the region is not certified
  GroupPresentation trivial{{ConformalTransform{Mat::Identity(5, 5), kF}}, {}};
  ProperCertificate bad = properness_certificate(walls, trivial, 1, 100);
  CHECK_FALSE(bad.certified);
  CHECK(bad.failing_word == std::vector<int>{0});
  CHECK_THROWS_AS(properness_certificate({}, ex.group, 1), std::invalid_argument);
}

}
