#include "einkit/kernels.hpp"

#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace ein::kernels::avx2 {

namespace {

struct V3 {
  __m256d x, y, z;
};

inline __m256d dot(const V3& d, const double* g) {
  __m256d r = _mm256_mul_pd(d.x, _mm256_set1_pd(g[0]));
  r = _mm256_fmadd_pd(d.y, _mm256_set1_pd(g[1]), r);
  return _mm256_fmadd_pd(d.z, _mm256_set1_pd(g[2]), r);
}

inline __m256d norm2(__m256d a, __m256d b, __m256d c) {
  return _mm256_fmadd_pd(c, c, _mm256_fmadd_pd(b, b, _mm256_mul_pd(a, a)));
}

inline __m256d line2(const V3& d, const double* g) {
  const double gg = g[0] * g[0] + g[1] * g[1] + g[2] * g[2];
  __m256d t = _mm256_div_pd(dot(d, g), _mm256_set1_pd(gg));
  __m256d r0 = _mm256_fnmadd_pd(t, _mm256_set1_pd(g[0]), d.x);
  __m256d r1 = _mm256_fnmadd_pd(t, _mm256_set1_pd(g[1]), d.y);
  __m256d r2 = _mm256_fnmadd_pd(t, _mm256_set1_pd(g[2]), d.z);
  return norm2(r0, r1, r2);
}

inline void project(const V3& d, const double* g1, const double* g2, const double* inv, __m256d& al, __m256d& be,
                    __m256d& plane2) {
  __m256d t1 = dot(d, g1);
  __m256d t2 = dot(d, g2);
  al = _mm256_fmadd_pd(_mm256_set1_pd(inv[1]), t2, _mm256_mul_pd(_mm256_set1_pd(inv[0]), t1));
  be = _mm256_fmadd_pd(_mm256_set1_pd(inv[2]), t2, _mm256_mul_pd(_mm256_set1_pd(inv[1]), t1));
  __m256d r0 = _mm256_fnmadd_pd(be, _mm256_set1_pd(g2[0]), _mm256_fnmadd_pd(al, _mm256_set1_pd(g1[0]), d.x));
  __m256d r1 = _mm256_fnmadd_pd(be, _mm256_set1_pd(g2[1]), _mm256_fnmadd_pd(al, _mm256_set1_pd(g1[1]), d.y));
  __m256d r2 = _mm256_fnmadd_pd(be, _mm256_set1_pd(g2[2]), _mm256_fnmadd_pd(al, _mm256_set1_pd(g1[2]), d.z));
  plane2 = norm2(r0, r1, r2);
}

}  // namespace

void quad_form_batch(const double* b, int n, const double* xs, std::size_t count, double* out) {
  const __m256i idx = _mm256_set_epi64x(3LL * n, 2LL * n, 1LL * n, 0);
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const double* base = xs + i * n;
    __m256d acc = _mm256_setzero_pd();
    for (int j = 0; j < n; ++j) {
      __m256d xj = _mm256_i64gather_pd(base + j, idx, 8);
      __m256d row = _mm256_setzero_pd();
      for (int k = 0; k < n; ++k) {
        __m256d xk = _mm256_i64gather_pd(base + k, idx, 8);
        row = _mm256_fmadd_pd(_mm256_set1_pd(b[j * n + k]), xk, row);
      }
      acc = _mm256_fmadd_pd(xj, row, acc);
    }
    _mm256_storeu_pd(out + i, acc);
  }
  if (i < count) scalar::quad_form_batch(b, n, xs + i * n, count - i, out + i);
}

void crooked_distance_batch(const CrookedFrame& f, const double* pts, std::size_t count, double* out) {
  const __m256i idx = _mm256_set_epi64x(9, 6, 3, 0);
  const double ms[3] = {-f.s[0], -f.s[1], -f.s[2]};
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const double* base = pts + 3 * i;
    V3 d{_mm256_sub_pd(_mm256_i64gather_pd(base, idx, 8), _mm256_set1_pd(f.p[0])),
         _mm256_sub_pd(_mm256_i64gather_pd(base + 1, idx, 8), _mm256_set1_pd(f.p[1])),
         _mm256_sub_pd(_mm256_i64gather_pd(base + 2, idx, 8), _mm256_set1_pd(f.p[2]))};
    __m256d a1 = line2(d, f.l1);
    __m256d a2 = line2(d, f.l2);
    __m256d al, be, pl;
    project(d, f.l1, f.s, f.inv_w1, al, be, pl);
    __m256d dw1 = _mm256_blendv_pd(a1, pl, _mm256_cmp_pd(be, zero, _CMP_GE_OQ));
    project(d, f.l2, ms, f.inv_w2, al, be, pl);
    __m256d dw2 = _mm256_blendv_pd(a2, pl, _mm256_cmp_pd(be, zero, _CMP_GE_OQ));
    project(d, f.l1, f.l2, f.inv_st, al, be, pl);
    __m256d prod = _mm256_mul_pd(al, be);
    __m256d dst = _mm256_blendv_pd(_mm256_min_pd(a1, a2), pl, _mm256_cmp_pd(prod, zero, _CMP_GE_OQ));
    __m256d m = _mm256_min_pd(dw1, _mm256_min_pd(dw2, dst));
    _mm256_storeu_pd(out + i, _mm256_sqrt_pd(m));
  }
  if (i < count) scalar::crooked_distance_batch(f, pts + 3 * i, count - i, out + i);
}

double min_projective_distance(const double* set, std::size_t count, int n, const double* x) {
  const __m256i idx = _mm256_set_epi64x(3LL * n, 2LL * n, 1LL * n, 0);
  __m256d best = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const double* base = set + i * n;
    __m256d sm = _mm256_setzero_pd();
    __m256d sp = _mm256_setzero_pd();
    for (int k = 0; k < n; ++k) {
      __m256d a = _mm256_i64gather_pd(base + k, idx, 8);
      __m256d xk = _mm256_set1_pd(x[k]);
      __m256d m = _mm256_sub_pd(a, xk);
      __m256d p = _mm256_add_pd(a, xk);
      sm = _mm256_fmadd_pd(m, m, sm);
      sp = _mm256_fmadd_pd(p, p, sp);
    }
    best = _mm256_min_pd(best, _mm256_min_pd(sm, sp));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, best);
  double b2 = std::min(std::min(lanes[0], lanes[1]), std::min(lanes[2], lanes[3]));
  double tail = scalar::min_projective_distance(set + i * n, count - i, n, x);
  return std::min(std::sqrt(b2), tail);
}

}  // namespace ein::kernels::avx2
