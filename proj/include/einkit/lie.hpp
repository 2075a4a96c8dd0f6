#pragma once

#include "einkit/einstein.hpp"

#include <array>
#include <vector>

namespace ein {

struct Sp4Element {
  double a = 0, b = 0, a12 = 0, a21 = 0, r11 = 0, r12 = 0, r21 = 0, r22 = 0, b12 = 0, b21 = 0;
};

// [[a, a12, r11, r12], [a21, -a, r21, r22], [-r22, r12, b, b12], [r21, -r11, b21, -b]]
Mat assemble(const Sp4Element& c);
// Inverse of assemble; throws GeometryError off sp(4,R).
Sp4Element coords_of(const Mat& m, double eps = kEps);

Mat cartan_H(double a, double b);
Mat bracket(const Mat& x, const Mat& y);

struct Root {
  int x = 0;
  int y = 0;
  bool operator==(const Root&) const = default;
  double operator()(double a, double b) const { return x * a + y * b; }
};

struct RootSpace {
  Root root;
  Mat generator;  // 4x4, largest entry 1
};

// The eight roots in the order (2,0),(1,1),(0,2),(-1,1) then their negatives.
const std::vector<Root>& root_list();

// Root spaces computed as joint eigenspaces of ad(H(1,0)) and ad(H(0,1)).
std::vector<RootSpace> roots();

struct PositiveSystem {
  std::vector<Root> positive;
  std::vector<Root> simple;  // long root first
};

PositiveSystem positive_system(double v1, double v2);

// Basis of p_S for S a subset of {-alpha, -beta}, relative to v0 = (1,2).
std::vector<Mat> parabolic_basis(bool minus_alpha, bool minus_beta);

// Four points labelled so that {v1,v2} and {v3,v4} are the non-incident pairs.
struct StemConfig {
  std::array<EinPoint, 4> points;
  std::array<Photon, 4> photons;  // v1v3, v1v4, v2v3, v2v4
};

StemConfig make_stem(const std::array<Vec, 4>& reps, const FormSpec& spec, double eps = kEps);

// p0, p_inf, p1 = (0,-1,1,0,0), p2 = (0,1,1,0,0) in the hyp2 form.
StemConfig standard_stem();

// f1, f5, f2, f4 in f-coordinates of W0.
StemConfig f_stem();

struct WeylElement {
  std::array<int, 4> perm;  // v_i -> v_perm[i]
  Mat matrix;               // form-preserving realization
};

std::vector<WeylElement> weyl_symmetries(const StemConfig& cfg, double eps = kEps);

bool preserves_partition(const std::array<int, 4>& perm);

// Symplectic signed permutation matrices; each induces a Weyl symmetry of f_stem().
std::vector<Mat> sp_weyl_representatives();

struct DynamicalQuadruple {
  Vec attract;
  Vec repel;
  Vec codim1_attract;
  Vec codim1_repel;
};

// ([b3], [b4], [b1], [b2]) for a symplectic basis given as columns.
DynamicalQuadruple dynamical_quadruple(const Mat& basis, double eps = kEps);

}  // namespace ein
