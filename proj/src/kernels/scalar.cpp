#include "einkit/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ein::kernels {

namespace {

void inverse_gram(const double* a, const double* b, double* inv) {
  double g00 = a[0] * a[0] + a[1] * a[1] + a[2] * a[2];
  double g01 = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
  double g11 = b[0] * b[0] + b[1] * b[1] + b[2] * b[2];
  double det = g00 * g11 - g01 * g01;
  inv[0] = g11 / det;
  inv[1] = -g01 / det;
  inv[2] = g00 / det;
}

struct Proj {
  double alpha, beta, plane2;
};

Proj project(const double* d, const double* g1, const double* g2, const double* inv) {
  double t1 = d[0] * g1[0] + d[1] * g1[1] + d[2] * g1[2];
  double t2 = d[0] * g2[0] + d[1] * g2[1] + d[2] * g2[2];
  double al = inv[0] * t1 + inv[1] * t2;
  double be = inv[1] * t1 + inv[2] * t2;
  double r0 = d[0] - al * g1[0] - be * g2[0];
  double r1 = d[1] - al * g1[1] - be * g2[1];
  double r2 = d[2] - al * g1[2] - be * g2[2];
  return {al, be, r0 * r0 + r1 * r1 + r2 * r2};
}

double line2(const double* d, const double* g) {
  double gg = g[0] * g[0] + g[1] * g[1] + g[2] * g[2];
  double t = (d[0] * g[0] + d[1] * g[1] + d[2] * g[2]) / gg;
  double r0 = d[0] - t * g[0];
  double r1 = d[1] - t * g[1];
  double r2 = d[2] - t * g[2];
  return r0 * r0 + r1 * r1 + r2 * r2;
}

}  // namespace

CrookedFrame make_frame(const double p[3], const double l1[3], const double l2[3], const double s[3]) {
  CrookedFrame f{};
  double ms[3];
  for (int i = 0; i < 3; ++i) {
    f.p[i] = p[i];
    f.l1[i] = l1[i];
    f.l2[i] = l2[i];
    f.s[i] = s[i];
    ms[i] = -s[i];
  }
  inverse_gram(l1, s, f.inv_w1);
  inverse_gram(l2, ms, f.inv_w2);
  inverse_gram(l1, l2, f.inv_st);
  return f;
}

namespace scalar {

void quad_form_batch(const double* b, int n, const double* xs, std::size_t count, double* out) {
  for (std::size_t i = 0; i < count; ++i) {
    const double* x = xs + i * n;
    double acc = 0;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) acc += b[j * n + k] * x[j] * x[k];
    out[i] = acc;
  }
}

void crooked_distance_batch(const CrookedFrame& f, const double* pts, std::size_t count, double* out) {
  const double ms[3] = {-f.s[0], -f.s[1], -f.s[2]};
  for (std::size_t i = 0; i < count; ++i) {
    const double d[3] = {pts[3 * i] - f.p[0], pts[3 * i + 1] - f.p[1], pts[3 * i + 2] - f.p[2]};
    double a1 = line2(d, f.l1);
    double a2 = line2(d, f.l2);
    Proj w1 = project(d, f.l1, f.s, f.inv_w1);
    Proj w2 = project(d, f.l2, ms, f.inv_w2);
    Proj st = project(d, f.l1, f.l2, f.inv_st);
    double dw1 = w1.beta >= 0 ? w1.plane2 : a1;
    double dw2 = w2.beta >= 0 ? w2.plane2 : a2;
    double dst = st.alpha * st.beta >= 0 ? st.plane2 : std::min(a1, a2);
    out[i] = std::sqrt(std::min({dw1, dw2, dst}));
  }
}

double min_projective_distance(const double* set, std::size_t count, int n, const double* x) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < count; ++i) {
    const double* a = set + i * n;
    double sm = 0, sp = 0;
    for (int k = 0; k < n; ++k) {
      double m = a[k] - x[k];
      double p = a[k] + x[k];
      sm += m * m;
      sp += p * p;
    }
    best = std::min(best, std::min(sm, sp));
  }
  return std::sqrt(best);
}

}  // namespace scalar

}  // namespace ein::kernels
