#pragma once

#include "einkit/einstein.hpp"

#include <array>

namespace ein {

// V = R^4 with omega(u, v) = u^T J v, J = [[0,-1],[1,0]] + [[0,-1],[1,0]].
const Mat& symp_J();
double omega(const Vec& u, const Vec& v);

// Bivectors in raw coordinates (e12, e13, e14, e23, e24, e34).
Vec wedge(const Vec& u, const Vec& v);

// a ^ b = -B(a, b) vol with vol = e1 ^ e2 ^ e3 ^ e4.
double bivector_form(const Vec& a, const Vec& b);

// Columns f1..f5 in raw coordinates; their Gram matrix is antidiagonal.
const Mat& f_basis();

// omega* with omega(u, v) = B(u ^ v, omega*); omega* ^ omega* = 2 vol.
const Vec& dual_bivector();

// Form of W0 = (omega*)^perp in f-coordinates.
FormSpec w0_form();

// Raw bivector -> f-coordinates (drops the omega* component) and back.
Vec to_f_coords(const Vec& raw);
Vec from_f_coords(const Vec& c);

struct Lagrangian {
  Mat span;  // 4x2
};

Lagrangian make_lagrangian(const Vec& v1, const Vec& v2, double eps = kEps);

EinPoint lagrangian_to_point(const Lagrangian& l, double eps = kEps);
Lagrangian point_to_lagrangian(const EinPoint& p, double eps = kEps);

// Pencil of Lagrangians through a line of V.
Photon line_to_photon(const Vec& v, double eps = kEps);
// Common line of the Lagrangians of a photon.
Vec photon_to_line(const Photon& ph, double eps = kEps);

bool in_sp4_algebra(const Mat& m, double eps = kEps);
bool is_symplectic(const Mat& g, double eps = kEps);

// Derivative of the Lambda^2 action restricted to W0, in f-coordinates.
Mat sp_to_so_algebra(const Mat& m, double eps = kEps);
// The display-level formula; lies in so(3,2) but does not preserve brackets.
Mat sp_to_so_algebra_displayed(const Mat& m);

// Lambda^2 g on raw coordinates.
Mat lambda2(const Mat& g);

ConformalTransform sp_to_so_group(const Mat& g, double eps = kEps);

// upsilon_P = 2 u1 ^ u2 + omega*, in f-coordinates.
Vec symplectic_plane_vector(const Vec& u1, const Vec& u2, double eps = kEps);

bool is_positive_compatible(const Mat& jc, double eps = kEps);
Mat act_complex_structure(const Mat& g, const Mat& jc);

struct ContactPlane {
  Vec point;     // unit representative of [v]
  Mat perp;      // 4x3 basis of v^{perp omega}, first column v
  Mat quotient;  // 4x2 complement of [v] inside v^{perp omega}
};

ContactPlane contact_plane(const Vec& v);

// A projective line P(plane) is a contact line iff the plane is Lagrangian.
bool is_contact_line(const Mat& plane, double eps = kEps);

// P(v^{perp omega}) as a 4x3 basis; the inverse recovers [v].
Mat polarity(const Vec& v);
Vec polarity_inverse(const Mat& hyperplane);

bool maslov_incident(const Lagrangian& w, const Lagrangian& w2, double eps = kEps);

struct SplittingInvolution {
  Mat theta;  // 4x4, Id on L1 and -Id on L2
  ConformalTransform image;
  bool time_reversing;
};

SplittingInvolution splitting_involution(const Lagrangian& l1, const Lagrangian& l2, double eps = kEps);

}  // namespace ein
