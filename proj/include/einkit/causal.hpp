#pragma once

#include "einkit/einstein.hpp"

namespace ein {

// Point of the double cover: a null vector up to positive scale.
struct HatPoint {
  Vec rep;
  FormSpec form;
};

// Point of the universal cover S^n x R.
struct TildePoint {
  Vec phi;  // unit vector in R^{n+1}
  double theta = 0.0;
};

HatPoint make_hat(const Vec& v, const FormSpec& spec, double eps = kEps);

// True iff <p, q> > eps for unit representatives.
bool causally_related_hat(const HatPoint& p, const HatPoint& q, double eps = kEps);

enum class IntervalRelation { Chronological, CausalOnly, None };

std::string interval_name(IntervalRelation r);

double sphere_distance(const Vec& a, const Vec& b);

// Future relation of y with respect to x.
IntervalRelation interval_relation_tilde(const TildePoint& x, const TildePoint& y, double eps = kEps);

// Projection S^n x R -> double cover, written in the coordinates of spec.
// In diagonal coordinates the image is (phi, cos theta, sin theta).
HatPoint tilde_to_hat(const TildePoint& x, const FormSpec& spec);

// Inverse of tilde_to_hat with theta taken in (-pi, pi].
TildePoint hat_to_tilde(const HatPoint& p);

Vec spiral_embed(const TildePoint& x);

// First future conjugate point (-phi, theta + pi).
TildePoint conjugate_point(const TildePoint& x);

// Null geodesic through x with unit tangent w on the sphere factor (w . phi = 0).
TildePoint null_geodesic(const TildePoint& x, const Vec& w, double t);

// Membership predicates for the two Minkowski patches attached to x.
class PatchPredicate {
 public:
  PatchPredicate(TildePoint x, double eps) : x_(std::move(x)), eps_(eps) {}

  // I+(x) minus J+(alpha(x)), equivalently I+(x) cap I-(alpha^2(x)).
  bool in_min_plus(const TildePoint& y) const;
  // Points not causally related to x.
  bool in_min_minus(const TildePoint& y) const;

 private:
  TildePoint x_;
  double eps_;
};

PatchPredicate minkowski_patch_tilde(const TildePoint& x, double eps = kEps);

}  // namespace ein
