#pragma once

#include "einkit/causal.hpp"
#include "einkit/crooked.hpp"

#include <array>
#include <ostream>
#include <string>
#include <vector>

namespace ein {

enum class MeshMode { Patch, Spiral };

MeshMode parse_mesh_mode(const std::string& name);

struct MeshGroup {
  std::string tag;
  std::vector<std::array<int, 3>> triangles;  // 0-based vertex indices
};

struct Mesh {
  std::vector<Vec3> vertices;
  std::vector<MeshGroup> groups;

  std::size_t triangle_count() const;
};

// Grid split (rows, cols) with parts * rows * cols within 2% of resolution.
std::array<int, 2> plan_grid(int resolution, int parts);

// Lift of a patch point to S^2 x R, continuous on the whole patch.
TildePoint patch_to_tilde(const Vec3& x);

// Patch: the double cone {apex + t (cos a, sin a, +-1) : 0 <= t <= extent}.
// Spiral: the universal-cover cone exp(theta) phi up to the conjugate points.
Mesh mesh_lightcone(const Vec3& apex, MeshMode mode, int resolution, double extent = 2.0);

// Patch part of P(v^perp cap N) for v in hyp2 coordinates.
Mesh mesh_hypersurface(const Vec& v, int resolution, double extent = 2.0);

// Faces W1, W2, stem+, stem- with parameters bounded by extent.
Mesh mesh_crooked(const CrookedPlane& c, MeshMode mode, int resolution, double extent = 2.0);

void write_obj(const Mesh& m, std::ostream& os);

}  // namespace ein
