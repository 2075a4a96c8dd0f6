#include "einkit/causal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ein {

HatPoint make_hat(const Vec& v, const FormSpec& spec, double eps) {
  if (v.size() != spec.dim()) throw std::invalid_argument("vector dimension does not match the form");
  if (v.norm() == 0.0) throw GeometryError("zero vector is not a point");
  if (std::abs(quad(v, spec)) > eps * v.squaredNorm()) throw GeometryError("vector is not null");
  return {v.normalized(), spec};
}

bool causally_related_hat(const HatPoint& p, const HatPoint& q, double eps) {
  if (projective_distance(p.rep, q.rep) <= eps) throw GeometryError("points are equal or antipodal");
  return inner(p.rep.normalized(), q.rep.normalized(), p.form) > eps;
}

std::string interval_name(IntervalRelation r) {
  switch (r) {
    case IntervalRelation::Chronological: return "chronological";
    case IntervalRelation::CausalOnly: return "causal";
    case IntervalRelation::None: return "none";
  }
  return "?";
}

double sphere_distance(const Vec& a, const Vec& b) {
  // Half-chord form stays accurate near 0 and pi.
  Vec u = a.normalized(), v = b.normalized();
  return 2.0 * std::atan2((u - v).norm(), (u + v).norm());
}

IntervalRelation interval_relation_tilde(const TildePoint& x, const TildePoint& y, double eps) {
  double gap = (y.theta - x.theta) - sphere_distance(x.phi, y.phi);
  if (std::abs(gap) <= eps) return IntervalRelation::CausalOnly;
  return gap > 0 ? IntervalRelation::Chronological : IntervalRelation::None;
}

HatPoint tilde_to_hat(const TildePoint& x, const FormSpec& spec) {
  const Eigen::Index m = x.phi.size();
  if (spec.q != 2 || spec.p != m) throw std::invalid_argument("universal cover needs R^{n+1,2} with n+1 = dim phi");
  Vec y(m + 2);
  y << x.phi, std::cos(x.theta), std::sin(x.theta);
  Mat d = to_diagonal(spec);
  return {d.inverse() * y, spec};
}

TildePoint hat_to_tilde(const HatPoint& p) {
  Vec y = to_diagonal(p.form) * p.rep;
  const Eigen::Index m = p.form.p;
  double r = y.tail(2).norm();
  if (r == 0.0) throw GeometryError("representative is not null");
  return {y.head(m) / r, std::atan2(y(m + 1), y(m))};
}

Vec spiral_embed(const TildePoint& x) { return std::exp(x.theta) * x.phi; }

TildePoint conjugate_point(const TildePoint& x) { return {-x.phi, x.theta + std::numbers::pi}; }

TildePoint null_geodesic(const TildePoint& x, const Vec& w, double t) {
  return {std::cos(t) * x.phi + std::sin(t) * w, x.theta + t};
}

bool PatchPredicate::in_min_plus(const TildePoint& y) const {
  double dt = y.theta - x_.theta;
  double d = sphere_distance(x_.phi, y.phi);
  return dt > d + eps_ && dt < 2.0 * std::numbers::pi - d - eps_;
}

bool PatchPredicate::in_min_minus(const TildePoint& y) const {
  double dt = y.theta - x_.theta;
  return std::abs(dt) < sphere_distance(x_.phi, y.phi) - eps_;
}

PatchPredicate minkowski_patch_tilde(const TildePoint& x, double eps) { return PatchPredicate(x, eps); }

}  // namespace ein
