#include "einkit/mesh.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace ein {

namespace {

using Param = std::function<Vec3(double, double)>;

// Appends a rows x cols grid over [0,1]^2 mapped by f, as one tagged group.
void add_grid(Mesh& m, const std::string& tag, int rows, int cols, const Param& f) {
  const int base = static_cast<int>(m.vertices.size());
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      m.vertices.push_back(f(static_cast<double>(i) / (rows - 1), static_cast<double>(j) / (cols - 1)));
  MeshGroup g{tag, {}};
  auto push = [&](int a, int b, int c) {
    const Vec3 n = (m.vertices[b] - m.vertices[a]).cross(m.vertices[c] - m.vertices[a]);
    const double scale = std::max({1.0, m.vertices[a].squaredNorm(), m.vertices[b].squaredNorm()});
    if (n.norm() > 1e-14 * scale) g.triangles.push_back({a, b, c});
  };
  for (int i = 0; i + 1 < rows; ++i)
    for (int j = 0; j + 1 < cols; ++j) {
      int a = base + i * cols + j;
      int b = a + 1;
      int c = a + cols;
      int d = c + 1;
      push(a, b, d);
      push(a, d, c);
    }
  m.groups.push_back(std::move(g));
}

Vec3 to_spiral(const Vec3& x) {
  Vec s = spiral_embed(patch_to_tilde(x));
  return Vec3(s(0), s(1), s(2));
}

void map_to_spiral(Mesh& m) {
  for (auto& v : m.vertices) v = to_spiral(v);
}

}  // namespace

MeshMode parse_mesh_mode(const std::string& name) {
  if (name == "patch") return MeshMode::Patch;
  if (name == "spiral") return MeshMode::Spiral;
  throw std::invalid_argument("unknown mesh mode: " + name);
}

std::size_t Mesh::triangle_count() const {
  std::size_t n = 0;
  for (const auto& g : groups) n += g.triangles.size();
  return n;
}

std::array<int, 2> plan_grid(int resolution, int parts) {
  if (parts < 1) throw std::invalid_argument("mesh needs at least one part");
  const double per = static_cast<double>(resolution) / parts;
  std::array<int, 2> best{0, 0};
  double best_err = std::numeric_limits<double>::infinity();
  double best_aspect = 0;
  for (int rows = 3; rows * 3 <= per; ++rows) {
    int cols = static_cast<int>(std::lround(per / rows));
    if (cols < 3) continue;
    double aspect = static_cast<double>(std::max(rows, cols)) / std::min(rows, cols);
    if (aspect > 6) continue;
    double err = std::abs(static_cast<double>(parts) * rows * cols - resolution);
    if (err < best_err || (err == best_err && aspect < best_aspect)) {
      best = {rows, cols};
      best_err = err;
      best_aspect = aspect;
    }
  }
  if (best[0] == 0 || best_err > 0.02 * resolution)
    throw std::invalid_argument("resolution " + std::to_string(resolution) + " is too small for this mesh");
  return best;
}

TildePoint patch_to_tilde(const Vec3& x) {
  // Diagonal coordinates of the section: (x, y, (Q-1)/2 | z, (Q+1)/2). The
  // negative pair never points along -(0, 1), so the angle measured from the
  // origin's direction (0, 1) has no cut on the patch.
  const double q = x(0) * x(0) + x(1) * x(1) - x(2) * x(2);
  const double c = x(2), s = (q + 1) / 2;
  Vec phi = vec({x(0), x(1), (q - 1) / 2});
  phi.normalize();
  return {phi, std::numbers::pi / 2 + std::atan2(-c, s)};
}

Mesh mesh_lightcone(const Vec3& apex, MeshMode mode, int resolution, double extent) {
  const auto [rows, cols] = plan_grid(resolution, 2);
  const double tau = 2 * std::numbers::pi;
  Mesh m;
  if (mode == MeshMode::Patch) {
    for (int sg : {1, -1})
      add_grid(m, sg > 0 ? "future" : "past", rows, cols, [&](double u, double v) {
        double t = u * extent;
        return Vec3(apex + t * Vec3(std::cos(tau * v), std::sin(tau * v), sg));
      });
    return m;
  }
  const TildePoint x0 = patch_to_tilde(apex);
  Vec e1 = Vec::Zero(3), e2;
  e1(std::abs(x0.phi(0)) < 0.9 ? 0 : 1) = 1;
  e1 = (e1 - e1.dot(x0.phi) * x0.phi).normalized();
  e2 = Vec3(Vec3(x0.phi).cross(Vec3(e1)));
  for (int sg : {1, -1})
    add_grid(m, sg > 0 ? "future" : "past", rows, cols, [&](double u, double v) {
      double d = u * std::numbers::pi;
      Vec w = std::cos(tau * v) * e1 + std::sin(tau * v) * e2;
      TildePoint p{std::cos(d) * x0.phi + std::sin(d) * w, x0.theta + sg * d};
      Vec s = spiral_embed(p);
      return Vec3(s(0), s(1), s(2));
    });
  return m;
}

Mesh mesh_hypersurface(const Vec& v, int resolution, double extent) {
  if (v.size() != 5) throw std::invalid_argument("hypersurface vector must have 5 coordinates");
  const Vec3 vx(v(0), v(1), v(2));
  const double vu = v(3), vv = v(4);
  const double tau = 2 * std::numbers::pi;
  const double scale = v.norm();
  Mesh m;
  if (std::abs(vv) > 1e-12 * scale) {
    // Q(x - c) = rho with c = vx / vV.
    const Vec3 c = vx / vv;
    const double rho = c(0) * c(0) + c(1) * c(1) - c(2) * c(2) - vu / vv;
    if (std::abs(rho) <= 1e-12 * std::max(1.0, c.squaredNorm())) return mesh_lightcone(c, MeshMode::Patch, resolution, extent);
    const double r = std::sqrt(std::abs(rho));
    const double smax = std::asinh(extent);
    if (rho > 0) {
      const auto [rows, cols] = plan_grid(resolution, 1);
      add_grid(m, "sheet", rows, cols, [&](double a, double b) {
        double s = (2 * a - 1) * smax;
        return Vec3(c + r * Vec3(std::cosh(s) * std::cos(tau * b), std::cosh(s) * std::sin(tau * b), std::sinh(s)));
      });
    } else {
      const auto [rows, cols] = plan_grid(resolution, 2);
      for (int sg : {1, -1})
        add_grid(m, sg > 0 ? "future" : "past", rows, cols, [&](double a, double b) {
          double s = a * smax;
          return Vec3(c + r * Vec3(std::sinh(s) * std::cos(tau * b), std::sinh(s) * std::sin(tau * b),
                                   sg * std::cosh(s)));
        });
    }
    return m;
  }
  // Affine plane <x, vx> = vU / 2.
  const Vec3 n(vx(0), vx(1), -vx(2));
  if (n.norm() <= 1e-12 * scale) throw std::invalid_argument("hypersurface does not meet the patch");
  const Vec3 x0 = (vu / 2) * n / n.squaredNorm();
  const Vec3 a = n.unitOrthogonal();
  const Vec3 b = n.normalized().cross(a);
  const auto [rows, cols] = plan_grid(resolution, 1);
  add_grid(m, "plane", rows, cols, [&](double s, double t) {
    return Vec3(x0 + (2 * s - 1) * extent * a + (2 * t - 1) * extent * b);
  });
  return m;
}

Mesh mesh_crooked(const CrookedPlane& c, MeshMode mode, int resolution, double extent) {
  const auto [rows, cols] = plan_grid(resolution, 4);
  const Vec3 s = c.orientation * c.spine;
  const Vec3 l1 = c.l1.normalized(), l2 = c.l2.normalized(), sn = s.normalized();
  Mesh m;
  add_grid(m, "W1", rows, cols, [&](double a, double b) {
    return Vec3(c.vertex + (2 * a - 1) * extent * l1 + b * extent * sn);
  });
  add_grid(m, "W2", rows, cols, [&](double a, double b) {
    return Vec3(c.vertex + (2 * a - 1) * extent * l2 - b * extent * sn);
  });
  add_grid(m, "stem+", rows, cols, [&](double a, double b) {
    return Vec3(c.vertex + a * extent * l1 + b * extent * l2);
  });
  add_grid(m, "stem-", rows, cols, [&](double a, double b) {
    return Vec3(c.vertex - a * extent * l1 - b * extent * l2);
  });
  if (mode == MeshMode::Spiral) map_to_spiral(m);
  return m;
}

void write_obj(const Mesh& m, std::ostream& os) {
  char buf[128];
  os << "# einkit mesh: " << m.vertices.size() << " vertices, " << m.triangle_count() << " triangles\n";
  for (const auto& v : m.vertices) {
    std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", v(0), v(1), v(2));
    os << buf;
  }
  for (const auto& g : m.groups) {
    os << "g " << g.tag << "\n";
    for (const auto& t : g.triangles) os << "f " << t[0] + 1 << " " << t[1] + 1 << " " << t[2] + 1 << "\n";
  }
}

}  // namespace ein
