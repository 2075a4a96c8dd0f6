#include "einkit/mesh.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

using namespace ein;
using ein::test::Rng;

namespace {

const FormSpec kF = ein_form();

double mink(const Vec3& a) { return a(0) * a(0) + a(1) * a(1) - a(2) * a(2); }

bool within_2pct(std::size_t got, int want) { return std::abs(static_cast<double>(got) - want) <= 0.02 * want; }

std::set<std::string> tags(const Mesh& m) {
  std::set<std::string> out;
  for (const auto& g : m.groups) out.insert(g.tag);
  return out;
}

void check_indices(const Mesh& m) {
  const int n = static_cast<int>(m.vertices.size());
  for (const auto& g : m.groups)
    for (const auto& t : g.triangles)
      for (int i : t) CHECK((i >= 0 && i < n));
}

TildePoint from_spiral(const Vec3& s) { return {Vec(s.normalized()), std::log(s.norm())}; }

}  // namespace

TEST_SUITE("mesh") {

TEST_CASE("grid planning") {
  for (int parts : {1, 2, 4})
    for (int res : {200, 333, 1000, 2000, 4999, 12345, 100000}) {
      auto [r, c] = plan_grid(res, parts);
      CHECK(r >= 3);
      CHECK(c >= 3);
      CHECK(within_2pct(static_cast<std::size_t>(parts * r * c), res));
    }
  CHECK_THROWS_AS(plan_grid(10, 4), std::invalid_argument);
  CHECK_THROWS_AS(plan_grid(1000, 0), std::invalid_argument);
  CHECK(parse_mesh_mode("patch") == MeshMode::Patch);
  CHECK(parse_mesh_mode("spiral") == MeshMode::Spiral);
  CHECK_THROWS_AS(parse_mesh_mode("torus"), std::invalid_argument);
}

TEST_CASE("patch lightcone") {
  const Vec3 apex(0.5, -0.2, 0.3);
  for (int res : {500, 2000, 8000}) {
    Mesh m = mesh_lightcone(apex, MeshMode::Patch, res, 2.0);
    CHECK(within_2pct(m.vertices.size(), res));
    CHECK(tags(m) == std::set<std::string>{"future", "past"});
    check_indices(m);
    CHECK(m.triangle_count() > 0);
    for (const auto& g : m.groups)
      for (const auto& t : g.triangles)
        for (int i : t) {
          const Vec3 d = m.vertices[static_cast<size_t>(i)] - apex;
          CHECK(std::abs(mink(d)) < 1e-12);
          if (d.norm() > 1e-9) CHECK((d(2) > 0) == (g.tag == "future"));
        }
  }
}

TEST_CASE("spiral lightcone") {
  Rng rng(401);
  for (int k = 0; k < 3; ++k) {
    const Vec3 apex = rng.vec3();
    const TildePoint x0 = patch_to_tilde(apex);
    Mesh m = mesh_lightcone(apex, MeshMode::Spiral, 3000);
    CHECK(within_2pct(m.vertices.size(), 3000));
    CHECK(tags(m) == std::set<std::string>{"future", "past"});
    for (const auto& g : m.groups)
      for (const auto& t : g.triangles)
        for (int i : t) {
          TildePoint y = from_spiral(m.vertices[static_cast<size_t>(i)]);
          const double dt = y.theta - x0.theta;
          CHECK(std::abs(sphere_distance(y.phi, x0.phi) - std::abs(dt)) < 1e-9);
          CHECK(dt * (g.tag == "future" ? 1 : -1) >= -1e-12);
          CHECK(std::abs(dt) <= M_PI + 1e-12);
        }
  }
}

TEST_CASE("hypersurfaces") {
  Rng rng(402);
  std::vector<Vec> vs{vec({0, 0, 0, 1, -1}), vec({1, 0, 0, 0, 0}), vec({0.2, 0.1, 0.3, 1, 2}),
                      vec({0.2, 0.1, 0.3, -3, 1}), vec({0, 0, 1, 0, 0})};
  for (const Vec& v : vs) {
    Mesh m = mesh_hypersurface(v, 1500);
    CHECK(within_2pct(m.vertices.size(), 1500));
    check_indices(m);
    for (const Vec3& x : m.vertices) {
      Vec sx = chart_section(Vec(x));
      CHECK(std::abs(inner(sx, v, kF)) < 1e-9 * sx.norm() * v.norm());
    }
  }
  // a lightcone hypersurface goes through the lightcone mesher
  const Vec p = chart_section(vec({0.1, 0.2, 0.3}));
  Mesh lc = mesh_hypersurface(form_matrix(kF).inverse() * form_matrix(kF) * p, 1000);
  CHECK(tags(lc) == std::set<std::string>{"future", "past"});
  CHECK_THROWS_AS(mesh_hypersurface(vec({0, 0, 0, 1, 0}), 1000), std::invalid_argument);
  CHECK_THROWS_AS(mesh_hypersurface(vec({1, 0, 0}), 1000), std::invalid_argument);
}

TEST_CASE("crooked plane meshes") {
  Rng rng(403);
  for (int k = 0; k < 5; ++k) {
    Vec3 s;
    do s = rng.vec3();
    while (mink(s) < 0.1 * s.squaredNorm());
    CrookedPlane c = build_crooked(rng.vec3(), s, k % 2 ? 1 : -1);
    Mesh m = mesh_crooked(c, MeshMode::Patch, 2400);
    CHECK(within_2pct(m.vertices.size(), 2400));
    CHECK(tags(m) == std::set<std::string>{"W1", "W2", "stem+", "stem-"});
    check_indices(m);
    for (const auto& g : m.groups)
      for (const auto& t : g.triangles)
        for (int i : t) {
          FaceLabel l = membership(m.vertices[static_cast<size_t>(i)], c, 1e-9);
          CHECK(l.tag != FaceTag::Outside);
          if (l.tag == FaceTag::WingInterior || l.tag == FaceTag::StemInterior) CHECK(label_name(l) == g.tag);
        }

    Mesh sp = mesh_crooked(c, MeshMode::Spiral, 2400);
    CHECK(sp.vertices.size() == m.vertices.size());
    for (size_t i = 0; i < sp.vertices.size(); ++i) {
      HatPoint h = tilde_to_hat(from_spiral(sp.vertices[i]), kF);
      Vec sx = chart_section(Vec(m.vertices[i]));
      CHECK(projective_distance(h.rep, sx) < 1e-9);
      CHECK(h.rep.dot(sx) > 0);
    }
  }
}

TEST_CASE("patch lift is a continuous section of the double cover") {
  Rng rng(404);
  for (int i = 0; i < 2000; ++i) {
    Vec3 x = rng.vec3(3.0);
    TildePoint t = patch_to_tilde(x);
    CHECK(std::abs(t.phi.norm() - 1.0) < 1e-12);
    HatPoint h = tilde_to_hat(t, kF);
    Vec sx = chart_section(Vec(x));
    CHECK(projective_distance(h.rep, sx) < 1e-10);
    CHECK(h.rep.dot(sx) > 0);
    CHECK(t.theta > -M_PI / 2);
    CHECK(t.theta < 3 * M_PI / 2);
  }
  // no jumps along random paths through the patch
  for (int k = 0; k < 50; ++k) {
    Vec3 a = rng.vec3(5.0), b = rng.vec3(5.0);
    double prev = patch_to_tilde(a).theta;
    for (int j = 1; j <= 400; ++j) {
      double th = patch_to_tilde(Vec3(a + (b - a) * j / 400.0)).theta;
      CHECK(std::abs(th - prev) < 0.2);
      prev = th;
    }
  }
}

TEST_CASE("obj output") {
  CrookedPlane c = build_crooked(Vec3::Zero(), Vec3(1, 0, 0), 1);
  Mesh m = mesh_crooked(c, MeshMode::Patch, 1000);
  std::ostringstream a, b;
  write_obj(m, a);
  write_obj(mesh_crooked(c, MeshMode::Patch, 1000), b);
  CHECK(a.str() == b.str());

  std::istringstream in(a.str());
  std::string line;
  std::size_t nv = 0, nf = 0;
  std::vector<std::string> groups;
  while (std::getline(in, line)) {
    if (line.rfind("v ", 0) == 0) {
      std::istringstream ls(line.substr(2));
      double x, y, z;
      CHECK(static_cast<bool>(ls >> x >> y >> z));
      const Vec3& v = m.vertices[nv];
      CHECK(x == v(0));
      CHECK(y == v(1));
      CHECK(z == v(2));
      ++nv;
    } else if (line.rfind("g ", 0) == 0) {
      groups.push_back(line.substr(2));
    } else if (line.rfind("f ", 0) == 0) {
      std::istringstream ls(line.substr(2));
      long i, j, k;
      CHECK(static_cast<bool>(ls >> i >> j >> k));
      for (long x : {i, j, k}) CHECK((x >= 1 && x <= static_cast<long>(m.vertices.size())));
      ++nf;
    } else {
      CHECK(line.rfind("#", 0) == 0);
    }
  }
  CHECK(nv == m.vertices.size());
  CHECK(nf == m.triangle_count());
  CHECK(groups == std::vector<std::string>{"W1", "W2", "stem+", "stem-"});
}

}
