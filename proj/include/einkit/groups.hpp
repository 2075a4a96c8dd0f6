#pragma once

#include "einkit/crooked.hpp"
#include "einkit/einstein.hpp"

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

namespace ein {

// Null cone of a (2,1)-subspace of R^{3,2} (hyp2 form).
struct SpacelikeCircle {
  Subspace subspace;
};

SpacelikeCircle make_circle(const Mat& basis, const FormSpec& form = ein_form(), double eps = kEps);

// Circle through p_inf whose patch part is the spine p + R u.
SpacelikeCircle circle_from_spine(const Vec3& p, const Vec3& u, double eps = kEps);

struct SpineReflection {
  ConformalTransform transform;
  SpacelikeCircle fixed_circle;
  EinPoint p1;
  EinPoint p2;
};

// +Id on the circle's subspace, -Id on its orthogonal complement.
SpineReflection spine_reflection(const SpacelikeCircle& s, double eps = kEps);

// Reflection fixing the spine of p + R u, as a patch isometry.
SpineReflection spine_reflection(const Vec3& p, const Vec3& u, double eps = kEps);

bool ultraparallel(const SpacelikeCircle& a, const SpacelikeCircle& b, double eps = kEps);

struct CompositionReport {
  ConformalTransform gamma;
  std::vector<std::complex<double>> eigenvalues;  // of the linear part, sorted by real part
  double min_gap;                                 // smallest pairwise eigenvalue distance
  bool hyperbolic;                                // real, pairwise gaps > 1e-6
};

// gamma = i2 o i1.
CompositionReport compose_pair(const SpineReflection& i1, const SpineReflection& i2);

// Linear-part eigen report of a patch isometry.
CompositionReport linear_report(const ConformalTransform& g);

struct GroupPresentation {
  std::vector<ConformalTransform> generators;
  std::vector<std::vector<int>> relations;  // letters: 2i = g_i, 2i + 1 = g_i^{-1}

  std::vector<Mat> matrices() const;
};

// Reflections with g1 = i1 i2, g2 = i2 i3, g3 = i3 i1.
std::array<SpineReflection, 3> factor_triple(const ConformalTransform& g1, const ConformalTransform& g2,
                                             const ConformalTransform& g3);

struct ExampleGroup {
  std::array<Vec3, 3> vertices;
  std::array<Vec3, 3> spines;
  std::array<SpacelikeCircle, 3> circles;
  std::array<CrookedPlane, 3> planes;
  std::array<SpineReflection, 3> reflections;
  GroupPresentation group;
};

ExampleGroup example_group();

template <class T>
struct OrbitEntry {
  std::vector<int> word;
  T object;
};

// Images under the identity and all reduced words of length <= len in
// shortlex order, keeping the first occurrence of each object.
std::vector<OrbitEntry<EinPoint>> orbit(const EinPoint& seed, const GroupPresentation& g, int len,
                                        double eps = kEps);
std::vector<OrbitEntry<CrookedPlane>> orbit(const CrookedPlane& seed, const GroupPresentation& g, int len,
                                            double eps = 1e-7);

bool same_crooked(const CrookedPlane& a, const CrookedPlane& b, double eps = 1e-7);

class WallIntersection : public GeometryError {
 public:
  WallIntersection(int a, int b, const Vec3& w, const std::string& what)
      : GeometryError(what), first(a), second(b), witness(w) {}
  int first;
  int second;
  Vec3 witness;
};

struct ProperCertificate {
  bool certified;
  int depth;
  std::size_t words_checked;  // non-identity reduced words
  std::size_t region_samples;
  std::vector<int> failing_word;
  Vec3 failing_point = Vec3::Zero();
};

// Sampled region bounded by the planes; the generators must be patch
// similarities. Throws WallIntersection when two planes meet.
ProperCertificate properness_certificate(const std::vector<CrookedPlane>& planes, const GroupPresentation& g,
                                         int len, std::size_t samples = 2000, std::uint64_t seed = 1,
                                         double eps = kEps);

}  // namespace ein
