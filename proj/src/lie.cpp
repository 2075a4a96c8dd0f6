#include "einkit/lie.hpp"

#include "einkit/sympl4.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ein {

namespace {

Vec flatten(const Sp4Element& c) { return vec({c.a, c.b, c.a12, c.a21, c.r11, c.r12, c.r21, c.r22, c.b12, c.b21}); }

Sp4Element unflatten(const Vec& v) {
  return {v(0), v(1), v(2), v(3), v(4), v(5), v(6), v(7), v(8), v(9)};
}

Mat coordinate_basis(int k) {
  Vec v = Vec::Zero(10);
  v(k) = 1;
  return assemble(unflatten(v));
}

// Matrix of ad(h) on the 10 coordinates.
Mat ad_matrix(const Mat& h) {
  Mat m(10, 10);
  for (int k = 0; k < 10; ++k) m.col(k) = flatten(coords_of(bracket(h, coordinate_basis(k)), 1e-12));
  return m;
}

Mat normalize_generator(Mat g) {
  Eigen::Index r, c;
  g.cwiseAbs().maxCoeff(&r, &c);
  g /= g(r, c);
  return g;
}

}  // namespace

Mat assemble(const Sp4Element& c) {
  Mat m(4, 4);
  m << c.a, c.a12, c.r11, c.r12,
       c.a21, -c.a, c.r21, c.r22,
       -c.r22, c.r12, c.b, c.b12,
       c.r21, -c.r11, c.b21, -c.b;
  return m;
}

Sp4Element coords_of(const Mat& m, double eps) {
  if (m.rows() != 4 || m.cols() != 4) throw std::invalid_argument("expected a 4x4 matrix");
  if (!in_sp4_algebra(m, eps)) throw GeometryError("matrix is not in sp(4,R)");
  return {m(0, 0), m(2, 2), m(0, 1), m(1, 0), m(0, 2), m(0, 3), m(1, 2), m(1, 3), m(2, 3), m(3, 2)};
}

Mat cartan_H(double a, double b) { return assemble({a, b}); }

Mat bracket(const Mat& x, const Mat& y) { return x * y - y * x; }

const std::vector<Root>& root_list() {
  static const std::vector<Root> r{{2, 0}, {1, 1}, {0, 2}, {-1, 1}, {-2, 0}, {-1, -1}, {0, -2}, {1, -1}};
  return r;
}

std::vector<RootSpace> roots() {
  Mat h1 = ad_matrix(cartan_H(1, 0));
  Mat h2 = ad_matrix(cartan_H(0, 1));
  Mat id = Mat::Identity(10, 10);
  std::vector<RootSpace> out;
  for (const Root& r : root_list()) {
    Mat stacked(20, 10);
    stacked << h1 - r.x * id, h2 - r.y * id;
    Mat ns = null_space(stacked, 1e-10);
    if (ns.cols() != 1) throw std::logic_error("root space is not one-dimensional");
    out.push_back({r, normalize_generator(assemble(unflatten(ns.col(0))))});
  }
  return out;
}

PositiveSystem positive_system(double v1, double v2) {
  PositiveSystem ps;
  for (const Root& r : root_list()) {
    double val = r(v1, v2);
    if (std::abs(val) <= kEps) throw GeometryError("functional lies on a root wall");
    if (val > 0) ps.positive.push_back(r);
  }
  for (const Root& r : ps.positive) {
    bool decomposable = false;
    for (const Root& s : ps.positive)
      for (const Root& t : ps.positive)
        if (s.x + t.x == r.x && s.y + t.y == r.y) decomposable = true;
    if (!decomposable) ps.simple.push_back(r);
  }
  std::stable_sort(ps.simple.begin(), ps.simple.end(),
                   [](const Root& a, const Root& b) { return a.x * a.x + a.y * a.y > b.x * b.x + b.y * b.y; });
  return ps;
}

std::vector<Mat> parabolic_basis(bool minus_alpha, bool minus_beta) {
  PositiveSystem ps = positive_system(1, 2);
  const Root alpha = ps.simple[0];
  const Root beta = ps.simple[1];
  std::vector<Root> allowed = ps.positive;
  // Negative roots that are sums of elements of S.
  for (const Root& r : root_list()) {
    bool neg = std::find(ps.positive.begin(), ps.positive.end(), r) == ps.positive.end();
    if (!neg) continue;
    // r = -(m alpha + k beta) with m, k >= 0.
    for (int m = 0; m <= 2; ++m)
      for (int k = 0; k <= 2; ++k) {
        if (m + k == 0) continue;
        if (-(m * alpha.x + k * beta.x) != r.x || -(m * alpha.y + k * beta.y) != r.y) continue;
        if ((m > 0 && !minus_alpha) || (k > 0 && !minus_beta)) continue;
        allowed.push_back(r);
      }
  }
  std::vector<Mat> basis{cartan_H(1, 0), cartan_H(0, 1)};
  for (const RootSpace& rs : roots())
    if (std::find(allowed.begin(), allowed.end(), rs.root) != allowed.end()) basis.push_back(rs.generator);
  return basis;
}

StemConfig make_stem(const std::array<Vec, 4>& reps, const FormSpec& spec, double eps) {
  std::array<EinPoint, 4> pts;
  for (int i = 0; i < 4; ++i) pts[i] = project_null(reps[i], spec, eps);
  auto inc = [&](int i, int j) { return incidence(pts[i], pts[j], 1e-7); };
  if (inc(0, 1) || inc(2, 3)) throw GeometryError("stem pairs {v1,v2}, {v3,v4} must be non-incident");
  for (int i : {0, 1})
    for (int j : {2, 3})
      if (!inc(i, j)) throw GeometryError("stem configuration is missing an incidence");
  Mat all(spec.dim(), 4);
  for (int i = 0; i < 4; ++i) all.col(i) = pts[i].rep;
  if (numeric_rank(all, 1e-9) != 4) throw GeometryError("degenerate stem configuration");
  StemConfig cfg{pts, {photon_span(reps[0], reps[2], spec, 1e-7), photon_span(reps[0], reps[3], spec, 1e-7),
                       photon_span(reps[1], reps[2], spec, 1e-7), photon_span(reps[1], reps[3], spec, 1e-7)}};
  return cfg;
}

StemConfig standard_stem() {
  return make_stem({p0().rep, p_inf().rep, vec({0, -1, 1, 0, 0}), vec({0, 1, 1, 0, 0})}, ein_form());
}

StemConfig f_stem() {
  return make_stem({vec({1, 0, 0, 0, 0}), vec({0, 0, 0, 0, 1}), vec({0, 1, 0, 0, 0}), vec({0, 0, 0, 1, 0})},
                   w0_form());
}

bool preserves_partition(const std::array<int, 4>& perm) {
  auto block = [](int i) { return i / 2; };
  return block(perm[0]) == block(perm[1]) && block(perm[2]) == block(perm[3]);
}

std::vector<WeylElement> weyl_symmetries(const StemConfig& cfg, double eps) {
  const FormSpec& spec = cfg.points[0].form;
  const int n = spec.dim();
  bool adj[4][4];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) adj[i][j] = i != j && incidence(cfg.points[i], cfg.points[j], 1e-7);
  Mat src(n, n);
  for (int i = 0; i < 4; ++i) src.col(i) = cfg.points[i].rep;
  Mat four = src.leftCols(4);
  Subspace rest = orth_complement({four, spec}, 1e-9);
  if (rest.dim() != n - 4) throw GeometryError("degenerate stem configuration");
  src.rightCols(n - 4) = rest.basis;
  std::vector<WeylElement> out;
  std::array<int, 4> perm{0, 1, 2, 3};
  do {
    bool ok = true;
    for (int i = 0; i < 4 && ok; ++i)
      for (int j = 0; j < 4 && ok; ++j) ok = adj[i][j] == adj[perm[i]][perm[j]];
    if (!ok) continue;
    Mat dst = src;
    for (auto [i, j] : {std::pair{0, 1}, std::pair{2, 3}}) {
      double k = inner(src.col(i), src.col(j), spec);
      double k2 = inner(src.col(perm[i]), src.col(perm[j]), spec);
      double c = std::sqrt(std::abs(k / k2));
      dst.col(i) = c * src.col(perm[i]);
      dst.col(j) = (k / k2 > 0 ? c : -c) * src.col(perm[j]);
    }
    Mat g = dst * src.inverse();
    if (!preserves_form(g, spec, std::max(eps, 1e-9))) throw std::logic_error("Weyl realization failed");
    out.push_back({perm, g});
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::vector<Mat> sp_weyl_representatives() {
  std::vector<Mat> out;
  std::array<int, 4> perm{0, 1, 2, 3};
  do {
    for (int signs = 0; signs < 16; ++signs) {
      Mat p = Mat::Zero(4, 4);
      for (int i = 0; i < 4; ++i) p(perm[i], i) = (signs >> i) & 1 ? -1.0 : 1.0;
      if (!is_symplectic(p, 1e-12)) continue;
      // Keep one representative per induced permutation of the f-stem.
      Mat img = sp_to_so_group(p).matrix;
      bool dup = false;
      for (const Mat& q : out) {
        Mat other = sp_to_so_group(q).matrix;
        bool same = true;
        for (int c : {0, 1, 3, 4}) same = same && projective_distance(img.col(c), other.col(c)) < 1e-12;
        if (same) dup = true;
      }
      if (!dup) out.push_back(p);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

DynamicalQuadruple dynamical_quadruple(const Mat& basis, double eps) {
  if (basis.rows() != 4 || basis.cols() != 4) throw std::invalid_argument("expected a 4x4 basis");
  if (!is_symplectic(basis, eps)) throw GeometryError("basis is not symplectic");
  return {normalize_projective(basis.col(2)), normalize_projective(basis.col(3)), normalize_projective(basis.col(0)),
          normalize_projective(basis.col(1))};
}

}  // namespace ein
