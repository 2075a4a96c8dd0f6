#pragma once

#include "einkit/einstein.hpp"
#include "einkit/kernels.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ein {

// Crooked plane in E^{2,1} (metric diag(1,1,-1)). The spine is stored with
// <s,s> = 1; l1, l2 are the future null directions of s^perp with
// det(u, l1, s) > 0 for u = (0,0,1), scaled so <l1,l2> = -2.
//   W1   = p + R l1 + sigma R>=0 s
//   W2   = p + R l2 - sigma R>=0 s
//   stem = p + {a l1 + b l2 : ab >= 0}
struct CrookedPlane {
  Vec3 vertex;
  Vec3 spine;
  int orientation = 1;
  Vec3 l1;
  Vec3 l2;
};

CrookedPlane build_crooked(const Vec3& vertex, const Vec3& spine_dir, int orientation, double eps = kEps);

// Image under x -> r A x + b with A in O(2,1).
CrookedPlane transform_crooked(const CrookedPlane& c, double r, const Mat3& a, const Vec3& b);

enum class FaceTag { Vertex, WingInterior, StemInterior, PhotonSegment, IdealPoint, ImproperPoint, Outside };

std::string face_tag_name(FaceTag t);

struct FaceLabel {
  FaceTag tag;
  int index = 0;        // wing 1|2, stem +1|-1, ideal point 1|2, outside side +1|-1 (0 at infinity)
  std::string segment{};  // photon segment id, e.g. "phi1+"
};

std::string label_name(const FaceLabel& l);

FaceLabel membership(const Vec3& x, const CrookedPlane& c, double eps = kEps);
FaceLabel membership(const EinPoint& x, const CrookedPlane& c, double eps = kEps);

// Similarity carrying the crooked plane at the origin with spine e_x and
// positive orientation onto c.
ConformalTransform crooked_frame(const CrookedPlane& c);

struct Stratum {
  std::string id;
  int dim;
  Vec point;                          // the 0-cell, a 1-cell midpoint or a 2-cell sample
  std::vector<std::string> boundary;  // endpoint ids of a 1-cell
};

struct CrookedSurface {
  CrookedPlane base;
  bool double_cover = false;
  std::vector<Stratum> points;
  std::vector<Stratum> segments;
  std::vector<Stratum> faces;

  int euler() const;
  const Stratum& find(const std::string& id) const;
};

// In Ein: points p0, pinf, p1, p2; segments phi{1,2}{+,-}, psi{1,2}{+,-}.
// In the double cover: p0, pinf_sp, pinf_ti, p{1,2}{+,-}; segments
// phi, alpha (ending at pinf_ti) and beta (ending at pinf_sp).
CrookedSurface closure_strata(const CrookedPlane& c, bool double_cover = false);

struct FacePair {
  std::string face_a;
  std::string face_b;
  double distance;
  Vec3 point_a;
  Vec3 point_b;
};

struct DisjointReport {
  bool disjoint;
  double gap;                   // minimum face-pair distance
  FacePair closest;             // attaining pair; an intersection point when gap <= eps
  std::vector<FacePair> pairs;  // all 16 face pairs
};

// Exact distance between the polyhedral faces, by enumeration of active sets.
DisjointReport disjoint(const CrookedPlane& a, const CrookedPlane& b, double eps = kEps);

struct MonteCarloReport {
  std::uint64_t samples;
  double min_distance;
  Vec3 closest_sample;
  double box;
};

// Samples both surfaces inside |face parameters| <= box and returns the
// smallest sample-to-other-surface distance.
MonteCarloReport monte_carlo_distance(const CrookedPlane& a, const CrookedPlane& b, std::uint64_t samples,
                                      std::uint64_t seed, double box,
                                      kernels::Isa isa = kernels::best_isa());

kernels::CrookedFrame kernel_frame(const CrookedPlane& c);

// Whether g (in SO(3,2) on the hyp2 form) maps the closure of c onto itself.
bool surface_automorphism(const ConformalTransform& g, const CrookedPlane& c, double eps = 1e-7);

// Spine reflection, the inversion-type involution and the ideal-point swap
// of the standard crooked surface.
Mat crooked_s0();
Mat crooked_s1();
Mat crooked_s2();
// Homothety by r composed with the boost preserving l1 and l2 with rapidity t.
Mat crooked_a(double r, double t);

}  // namespace ein
