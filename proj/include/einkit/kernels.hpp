#pragma once

#include <cstddef>

// Batched hot loops with a scalar reference and an AVX2+FMA variant chosen
// at runtime. All inputs are row-major arrays of doubles.
namespace ein::kernels {

enum class Isa { Scalar, Avx2 };

Isa best_isa();
const char* isa_name(Isa isa);
bool isa_available(Isa isa);

// Euclidean data of a crooked plane for point-to-surface distances. The
// surface is p + (R l1 + R>=0 s) u (R l2 - R>=0 s) u {a l1 + b l2 : ab >= 0},
// with s already multiplied by the orientation sign.
struct CrookedFrame {
  double p[3];
  double l1[3];
  double l2[3];
  double s[3];
  double inv_w1[3];  // inverse Gram (00, 01, 11) of (l1, s)
  double inv_w2[3];  // of (l2, -s)
  double inv_st[3];  // of (l1, l2)
};

CrookedFrame make_frame(const double p[3], const double l1[3], const double l2[3], const double s[3]);

// out[i] = x_i^T B x_i for xs of shape count x n, B of shape n x n.
void quad_form_batch(const double* b, int n, const double* xs, std::size_t count, double* out);
void quad_form_batch(const double* b, int n, const double* xs, std::size_t count, double* out, Isa isa);

// out[i] = Euclidean distance from pts[i] (count x 3) to the crooked plane.
void crooked_distance_batch(const CrookedFrame& f, const double* pts, std::size_t count, double* out);
void crooked_distance_batch(const CrookedFrame& f, const double* pts, std::size_t count, double* out, Isa isa);

// min_i min(|a_i - x|, |a_i + x|) over set (count x n); +inf for an empty set.
double min_projective_distance(const double* set, std::size_t count, int n, const double* x);
double min_projective_distance(const double* set, std::size_t count, int n, const double* x, Isa isa);

namespace scalar {
void quad_form_batch(const double* b, int n, const double* xs, std::size_t count, double* out);
void crooked_distance_batch(const CrookedFrame& f, const double* pts, std::size_t count, double* out);
double min_projective_distance(const double* set, std::size_t count, int n, const double* x);
}  // namespace scalar

namespace avx2 {
void quad_form_batch(const double* b, int n, const double* xs, std::size_t count, double* out);
void crooked_distance_batch(const CrookedFrame& f, const double* pts, std::size_t count, double* out);
double min_projective_distance(const double* set, std::size_t count, int n, const double* x);
}  // namespace avx2

}  // namespace ein::kernels
