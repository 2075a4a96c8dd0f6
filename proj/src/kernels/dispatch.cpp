#include "einkit/kernels.hpp"

namespace ein::kernels {

bool isa_available(Isa isa) {
  if (isa == Isa::Scalar) return true;
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

Isa best_isa() {
  static const Isa isa = isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
  return isa;
}

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

void quad_form_batch(const double* b, int n, const double* xs, std::size_t count, double* out, Isa isa) {
  if (isa == Isa::Avx2) avx2::quad_form_batch(b, n, xs, count, out);
  else scalar::quad_form_batch(b, n, xs, count, out);
}

void quad_form_batch(const double* b, int n, const double* xs, std::size_t count, double* out) {
  quad_form_batch(b, n, xs, count, out, best_isa());
}

void crooked_distance_batch(const CrookedFrame& f, const double* pts, std::size_t count, double* out, Isa isa) {
  if (isa == Isa::Avx2) avx2::crooked_distance_batch(f, pts, count, out);
  else scalar::crooked_distance_batch(f, pts, count, out);
}

void crooked_distance_batch(const CrookedFrame& f, const double* pts, std::size_t count, double* out) {
  crooked_distance_batch(f, pts, count, out, best_isa());
}

double min_projective_distance(const double* set, std::size_t count, int n, const double* x, Isa isa) {
  if (isa == Isa::Avx2) return avx2::min_projective_distance(set, count, n, x);
  return scalar::min_projective_distance(set, count, n, x);
}

double min_projective_distance(const double* set, std::size_t count, int n, const double* x) {
  return min_projective_distance(set, count, n, x, best_isa());
}

}  // namespace ein::kernels
