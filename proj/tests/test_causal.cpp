#include "einkit/causal.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace ein;
using ein::test::Rng;

namespace {

const FormSpec kF = ein_form();
constexpr double kPi = std::numbers::pi;

Vec random_unit(Rng& rng, int n = 3) { return rng.vector(n).normalized(); }

TildePoint random_tilde(Rng& rng, double lo = -kPi, double hi = kPi) {
  return {random_unit(rng), rng.uniform(lo, hi)};
}

// Reduces theta to (-pi, pi].
double wrap(double t) {
  double r = std::remainder(t, 2 * kPi);
  return r <= -kPi ? r + 2 * kPi : r;
}

}  // namespace

TEST_SUITE("causal") {

TEST_CASE("causal relation in the double cover") {
  HatPoint a = make_hat(chart_section(vec({0, 0, 0})), kF);
  HatPoint b = make_hat(chart_section(vec({0, 0, 10})), kF);
  CHECK(causally_related_hat(a, b));
  CHECK(causally_related_hat(make_hat(3 * a.rep, kF), make_hat(0.5 * b.rep, kF)));
  HatPoint c = make_hat(chart_section(vec({10, 0, 0})), kF);
  CHECK_FALSE(causally_related_hat(a, c));
  CHECK_THROWS_AS(causally_related_hat(a, make_hat(-2 * a.rep, kF)), GeometryError);
  CHECK_THROWS_AS(make_hat(vec({1, 0, 0, 0, 0}), kF), GeometryError);
}

TEST_CASE("interval relations") {
  TildePoint x{vec({1, 0, 0}), 0.0};
  CHECK(interval_relation_tilde(x, {vec({1, 0, 0}), 1.0}) == IntervalRelation::Chronological);
  CHECK(interval_relation_tilde(x, {vec({-1, 0, 0}), kPi}) == IntervalRelation::CausalOnly);
  CHECK(interval_relation_tilde(x, {vec({0, 1, 0}), 0.0}) == IntervalRelation::None);
}

TEST_CASE("double cover relation matches the universal cover") {
  Rng rng(21);
  for (int i = 0; i < 500; ++i) {
    TildePoint x = random_tilde(rng), y = random_tilde(rng);
    HatPoint px = tilde_to_hat(x, kF), py = tilde_to_hat(y, kF);
    // lift y into the band centred at x
    TildePoint y0{y.phi, x.theta + wrap(y.theta - x.theta)};
    bool related = interval_relation_tilde(x, y0) == IntervalRelation::Chronological ||
                   interval_relation_tilde(y0, x) == IntervalRelation::Chronological;
    CHECK(causally_related_hat(px, py) == related);
    CHECK(causally_related_hat(make_hat(2.5 * px.rep, kF), py) == related);
  }
}

TEST_CASE("universal cover projection round trip") {
  Rng rng(22);
  for (int i = 0; i < 100; ++i) {
    TildePoint x = random_tilde(rng);
    HatPoint h = tilde_to_hat(x, kF);
    CHECK(std::abs(quad(h.rep, kF)) < 1e-12);
    TildePoint y = hat_to_tilde(h);
    CHECK(approx_equal(y.phi, x.phi, 1e-12));
    CHECK(y.theta == doctest::Approx(x.theta).epsilon(1e-12));
  }
}

TEST_CASE("chronology is transitive and open") {
  Rng rng(23);
  int checked = 0;
  for (int i = 0; i < 2000; ++i) {
    TildePoint x = random_tilde(rng, 0, 2), y = random_tilde(rng, 1, 4), z = random_tilde(rng, 3, 7);
    if (interval_relation_tilde(x, y) != IntervalRelation::Chronological) continue;
    if (interval_relation_tilde(y, z) != IntervalRelation::Chronological) continue;
    ++checked;
    CHECK(interval_relation_tilde(x, z) == IntervalRelation::Chronological);
    double gap = (z.theta - x.theta) - sphere_distance(x.phi, z.phi);
    TildePoint zp{(z.phi + 0.25 * gap * random_unit(rng)).normalized(), z.theta - 0.25 * gap};
    CHECK(interval_relation_tilde(x, zp) == IntervalRelation::Chronological);
  }
  CHECK(checked > 50);
}

TEST_CASE("causal curves are 1-Lipschitz graphs") {
  Rng rng(24);
  for (int c = 0; c < 20; ++c) {
    std::vector<TildePoint> curve{random_tilde(rng)};
    for (int s = 0; s < 60; ++s) {
      const TildePoint& last = curve.back();
      double h = rng.uniform(0.01, 0.2);
      double speed = rng.uniform(0, 1);
      Vec w = random_unit(rng);
      w = (w - w.dot(last.phi) * last.phi).normalized();
      double ang = speed * h;
      curve.push_back({(std::cos(ang) * last.phi + std::sin(ang) * w).normalized(), last.theta + h});
    }
    for (size_t i = 0; i < curve.size(); ++i)
      for (size_t j = i + 1; j < curve.size(); ++j) {
        CHECK(sphere_distance(curve[i].phi, curve[j].phi) <= curve[j].theta - curve[i].theta + 1e-12);
        CHECK(interval_relation_tilde(curve[i], curve[j], 1e-12) != IntervalRelation::None);
      }
  }
}

TEST_CASE("spiral embedding") {
  CHECK(approx_equal(spiral_embed({vec({1, 0, 0}), 0.0}), vec({1, 0, 0}), 0.0));
  Vec phi = vec({0.6, 0.8, 0});
  CHECK(approx_equal(spiral_embed({phi, kPi}), std::exp(kPi) * phi, 1e-12));

  Rng rng(25);
  for (int i = 0; i < 20; ++i) {
    TildePoint x = random_tilde(rng);
    Vec w = random_unit(rng);
    w = (w - w.dot(x.phi) * x.phi).normalized();
    Mat plane(3, 2);
    plane << x.phi, w;
    for (double t = 0; t < 3; t += 0.25) {
      Vec s = spiral_embed(null_geodesic(x, w, t));
      CHECK(line_to_subspace_distance(s, plane) < 1e-12);
      CHECK(std::log(s.norm()) == doctest::Approx(x.theta + t).epsilon(1e-12));
      double angle = std::atan2(s.dot(w), s.dot(x.phi));
      CHECK(std::abs(wrap(angle - t)) < 1e-12);
    }
  }
}

TEST_CASE("conjugate points") {
  TildePoint e1{vec({1, 0, 0}), 0.0};
  TildePoint a = conjugate_point(e1);
  CHECK(approx_equal(a.phi, vec({-1, 0, 0}), 0.0));
  CHECK(a.theta == doctest::Approx(kPi));
  TildePoint a2 = conjugate_point(a);
  CHECK(approx_equal(a2.phi, e1.phi, 0.0));
  CHECK(a2.theta == doctest::Approx(2 * kPi));

  Rng rng(26);
  for (int i = 0; i < 50; ++i) {
    TildePoint x = random_tilde(rng);
    TildePoint ax = conjugate_point(x);
    CHECK(approx_equal(spiral_embed(ax), -std::exp(kPi) * spiral_embed(x), 1e-12 * std::exp(kPi + 4)));
    HatPoint hx = tilde_to_hat(x, kF), hax = tilde_to_hat(ax, kF);
    CHECK(approx_equal(hax.rep, -hx.rep, 1e-12));
    for (int k = 0; k < 8; ++k) {
      Vec w = random_unit(rng);
      w = (w - w.dot(x.phi) * x.phi).normalized();
      TildePoint end = null_geodesic(x, w, kPi);
      CHECK(approx_equal(end.phi, ax.phi, 1e-12));
      CHECK(interval_relation_tilde(x, end) == IntervalRelation::CausalOnly);
    }
  }
}

TEST_CASE("Minkowski patches in the universal cover") {
  TildePoint x{vec({0, 0, 1}), 0.3};
  PatchPredicate pr = minkowski_patch_tilde(x);
  CHECK_FALSE(pr.in_min_plus(x));
  CHECK(pr.in_min_plus({x.phi, x.theta + kPi / 2}));
  CHECK_FALSE(pr.in_min_plus(conjugate_point(conjugate_point(x))));
  CHECK(pr.in_min_minus({vec({1, 0, 0}), x.theta}));
  CHECK_FALSE(pr.in_min_minus({x.phi, x.theta + 0.1}));

  // Min+ projects to the points causally related to the projection of x
  Rng rng(27);
  HatPoint hx = tilde_to_hat(x, kF);
  for (int i = 0; i < 300; ++i) {
    TildePoint y = random_tilde(rng, x.theta - 1, x.theta + 2 * kPi + 1);
    HatPoint hy = tilde_to_hat(y, kF);
    if (std::abs(inner(hx.rep, hy.rep, kF)) < 1e-6) continue;
    if (pr.in_min_plus(y)) CHECK(causally_related_hat(hx, hy));
    if (pr.in_min_minus(y)) CHECK_FALSE(causally_related_hat(hx, hy));
  }
}

}
