#include "einkit/crooked.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

namespace ein {

namespace {

double mink(const Vec3& a, const Vec3& b) { return a(0) * b(0) + a(1) * b(1) - a(2) * b(2); }

int sgn(double x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

Vec lift(const Vec3& v) { return vec({v(0), v(1), v(2), 0, 0}); }

Vec section(const Vec3& x) { return chart_section(Vec(x)); }

const Vec3 kStdL1(0, -1, 1);
const Vec3 kStdL2(0, 1, 1);

// Face as a 2-parameter polyhedron o + g0 x0 + g1 x1, optionally x_k >= 0.
struct Poly {
  std::string name;
  Vec3 o;
  std::array<Vec3, 2> g;
  std::array<bool, 2> nonneg;
};

std::array<Poly, 4> faces_of(const CrookedPlane& c) {
  const Vec3 s = c.orientation * c.spine;
  return {{{"W1", c.vertex, {c.l1, s}, {false, true}},
           {"W2", c.vertex, {c.l2, Vec3(-s)}, {false, true}},
           {"stem+", c.vertex, {c.l1, c.l2}, {true, true}},
           {"stem-", c.vertex, {Vec3(-c.l1), Vec3(-c.l2)}, {true, true}}}};
}

FacePair poly_distance(const Poly& a, const Poly& b) {
  Eigen::Matrix<double, 3, 4> k;
  k << a.g[0], a.g[1], -b.g[0], -b.g[1];
  const Vec3 r = b.o - a.o;
  const std::array<bool, 4> cons{a.nonneg[0], a.nonneg[1], b.nonneg[0], b.nonneg[1]};
  FacePair best{a.name, b.name, std::numeric_limits<double>::infinity(), a.o, b.o};
  // A KKT point fixes some constrained variables at zero and is an
  // unconstrained least-squares minimizer in the rest; at a maximal active
  // set the constrained values are unique, so the min-norm solution is it.
  for (int mask = 0; mask < 16; ++mask) {
    bool valid = true;
    for (int i = 0; i < 4; ++i)
      if ((mask >> i & 1) && !cons[i]) valid = false;
    if (!valid) continue;
    std::vector<int> live;
    for (int i = 0; i < 4; ++i)
      if (!(mask >> i & 1)) live.push_back(i);
    Eigen::Vector4d x = Eigen::Vector4d::Zero();
    if (!live.empty()) {
      Mat kr(3, static_cast<Eigen::Index>(live.size()));
      for (size_t j = 0; j < live.size(); ++j) kr.col(static_cast<Eigen::Index>(j)) = k.col(live[j]);
      Eigen::JacobiSVD<Mat> svd(kr, Eigen::ComputeThinU | Eigen::ComputeThinV);
      svd.setThreshold(1e-12);
      Vec y = svd.solve(Vec(r));
      for (size_t j = 0; j < live.size(); ++j) x(live[j]) = y(static_cast<Eigen::Index>(j));
    }
    const double tol = 1e-12 * (1.0 + x.cwiseAbs().maxCoeff());
    bool feasible = true;
    for (int i = 0; i < 4; ++i)
      if (cons[i] && x(i) < -tol) feasible = false;
    if (!feasible) continue;
    for (int i = 0; i < 4; ++i)
      if (cons[i]) x(i) = std::max(0.0, x(i));
    Vec3 pa = a.o + a.g[0] * x(0) + a.g[1] * x(1);
    Vec3 pb = b.o + b.g[0] * x(2) + b.g[1] * x(3);
    double d = (pa - pb).norm();
    if (d < best.distance) best = {a.name, b.name, d, pa, pb};
  }
  return best;
}

std::string signed_id(const std::string& stem, int sign) { return stem + (sign > 0 ? "+" : "-"); }

}  // namespace

CrookedPlane build_crooked(const Vec3& vertex, const Vec3& spine_dir, int orientation, double eps) {
  if (orientation != 1 && orientation != -1) throw std::invalid_argument("orientation must be +1 or -1");
  const double qs = mink(spine_dir, spine_dir);
  if (!(qs > eps * spine_dir.squaredNorm())) throw GeometryError("crooked plane spine must be spacelike");
  const Vec3 s = spine_dir / std::sqrt(qs);
  const Vec3 u(0, 0, 1);
  Vec3 t = u - mink(u, s) * s;
  t /= std::sqrt(-mink(t, t));
  const Mat3 q = Vec3(1, 1, -1).asDiagonal();
  Vec3 w = (q * s).cross(q * t);
  w /= std::sqrt(mink(w, w));
  Vec3 la = t + w;
  Vec3 lb = t - w;
  if (u.dot(la.cross(s)) < 0) std::swap(la, lb);
  return {vertex, s, orientation, la, lb};
}

CrookedPlane transform_crooked(const CrookedPlane& c, double r, const Mat3& a, const Vec3& b) {
  const int det = a.determinant() > 0 ? 1 : -1;
  return build_crooked(r * a * c.vertex + b, a * c.spine, c.orientation * det);
}

std::string face_tag_name(FaceTag t) {
  switch (t) {
    case FaceTag::Vertex: return "vertex";
    case FaceTag::WingInterior: return "wing";
    case FaceTag::StemInterior: return "stem";
    case FaceTag::PhotonSegment: return "photon";
    case FaceTag::IdealPoint: return "ideal";
    case FaceTag::ImproperPoint: return "improper";
    case FaceTag::Outside: return "outside";
  }
  return "?";
}

std::string label_name(const FaceLabel& l) {
  switch (l.tag) {
    case FaceTag::Vertex: return "vertex";
    case FaceTag::WingInterior: return "W" + std::to_string(l.index);
    case FaceTag::StemInterior: return l.index > 0 ? "stem+" : "stem-";
    case FaceTag::PhotonSegment: return l.segment;
    case FaceTag::IdealPoint: return "p" + std::to_string(l.index);
    case FaceTag::ImproperPoint: return "pinf";
    case FaceTag::Outside: return l.index > 0 ? "outside+" : (l.index < 0 ? "outside-" : "outside");
  }
  return "?";
}

FaceLabel membership(const Vec3& x, const CrookedPlane& c, double eps) {
  const Vec3 d = x - c.vertex;
  const double tol = eps * std::max(1.0, d.norm());
  if (d.norm() <= tol) return {FaceTag::Vertex};
  Mat3 m;
  m << c.l1, c.l2, c.spine;
  const Vec3 k = m.partialPivLu().solve(d);
  const double a = k(0), b = k(1), cc = k(2);
  const bool za = std::abs(a) * c.l1.norm() <= tol;
  const bool zb = std::abs(b) * c.l2.norm() <= tol;
  const bool zc = std::abs(cc) <= tol;
  const double wing_side = c.orientation * cc;
  if (zc) {
    if (zb) return {FaceTag::PhotonSegment, 0, signed_id("phi1", sgn(a))};
    if (za) return {FaceTag::PhotonSegment, 0, signed_id("phi2", sgn(b))};
    if (a * b > 0) return {FaceTag::StemInterior, sgn(a)};
    return {FaceTag::Outside, sgn(b)};
  }
  if (wing_side > 0) {
    if (zb) return {FaceTag::WingInterior, 1};
    return {FaceTag::Outside, sgn(b)};
  }
  if (za) return {FaceTag::WingInterior, 2};
  return {FaceTag::Outside, -sgn(a)};
}

ConformalTransform crooked_frame(const CrookedPlane& c) {
  Mat3 from, to;
  from << Vec3(1, 0, 0), kStdL1, kStdL2;
  to << c.spine, c.l1, c.l2;
  Mat3 a = to * from.inverse();
  return similarity_matrix(1.0, Mat(a), Vec(c.vertex), 1e-8);
}

FaceLabel membership(const EinPoint& x, const CrookedPlane& c, double eps) {
  try {
    Vec y = chart_inverse(x, eps);
    return membership(Vec3(y(0), y(1), y(2)), c, eps);
  } catch (const ChartError& e) {
    if (e.stratum == IdealStratum::ImproperPoint) return {FaceTag::ImproperPoint};
  }
  // Work in the frame of the standard plane, where the ideal points are
  // the lifts of the null directions.
  const Mat g = crooked_frame(c).matrix;
  const Vec r = g.partialPivLu().solve(x.rep).normalized();
  const Vec pu = vec({0, 0, 0, 1, 0});
  const std::array<Vec3, 2> ls{kStdL1, kStdL2};
  for (int i = 0; i < 2; ++i)
    if (projective_distance(r, lift(ls[i])) <= eps) return {FaceTag::IdealPoint, i + 1};
  for (int i = 0; i < 2; ++i) {
    Mat basis(5, 2);
    basis << pu, lift(ls[i]).normalized();
    if (line_to_subspace_distance(r, basis) <= eps) {
      Vec coef = basis.transpose() * r;
      return {FaceTag::PhotonSegment, 0, signed_id("psi" + std::to_string(i + 1), sgn(coef(0) * coef(1)))};
    }
  }
  return {FaceTag::Outside, 0};
}

int CrookedSurface::euler() const {
  return static_cast<int>(points.size()) - static_cast<int>(segments.size()) + static_cast<int>(faces.size());
}

const Stratum& CrookedSurface::find(const std::string& id) const {
  for (const auto* list : {&points, &segments, &faces})
    for (const auto& s : *list)
      if (s.id == id) return s;
  throw std::invalid_argument("no stratum named " + id);
}

CrookedSurface closure_strata(const CrookedPlane& c, bool double_cover) {
  const Mat g = crooked_frame(c).matrix;
  const Vec p0 = g * vec({0, 0, 0, 0, 1});
  const Vec pu = g * vec({0, 0, 0, 1, 0});
  const std::array<Vec, 2> q{g * lift(kStdL1), g * lift(kStdL2)};

  CrookedSurface out;
  out.base = c;
  out.double_cover = double_cover;
  out.points.push_back({"p0", 0, p0, {}});
  out.points.push_back({"pinf_sp", 0, pu, {}});
  out.points.push_back({"pinf_ti", 0, -pu, {}});
  for (int i = 0; i < 2; ++i)
    for (int sg : {1, -1}) out.points.push_back({signed_id("p" + std::to_string(i + 1), sg), 0, sg * q[i], {}});
  struct Family {
    const char* name;
    Vec end;
    const char* end_id;
  };
  for (const Family& f : {Family{"phi", p0, "p0"}, Family{"beta", pu, "pinf_sp"}, Family{"alpha", -pu, "pinf_ti"}})
    for (int i = 0; i < 2; ++i)
      for (int sg : {1, -1}) {
        std::string pi = signed_id("p" + std::to_string(i + 1), sg);
        out.segments.push_back({signed_id(f.name + std::to_string(i + 1), sg), 1, f.end + sg * q[i], {f.end_id, pi}});
      }
  const Vec3 s = c.orientation * c.spine;
  out.faces.push_back({"W1", 2, section(c.vertex + s), {}});
  out.faces.push_back({"W2", 2, section(c.vertex - s), {}});
  out.faces.push_back({"stem+", 2, section(c.vertex + c.l1 + c.l2), {}});
  out.faces.push_back({"stem-", 2, section(c.vertex - c.l1 - c.l2), {}});
  if (double_cover) return out;

  // Pass to Ein: identify antipodal representatives.
  const std::map<std::string, std::string> rename{{"pinf_sp", "pinf"}, {"p1+", "p1"}, {"p2+", "p2"}};
  std::map<std::string, std::string> alias;
  auto dedupe = [&](std::vector<Stratum>& list) {
    std::vector<Stratum> kept;
    for (auto& s0 : list) {
      auto hit = std::find_if(kept.begin(), kept.end(),
                              [&](const Stratum& k) { return projective_distance(k.point, s0.point) <= 1e-9; });
      if (hit != kept.end()) {
        alias[s0.id] = hit->id;
        continue;
      }
      alias[s0.id] = s0.id;
      kept.push_back(s0);
    }
    list = kept;
  };
  dedupe(out.points);
  dedupe(out.segments);
  auto final_id = [&](const std::string& id) {
    std::string a = alias.count(id) ? alias[id] : id;
    auto r = rename.find(a);
    if (r != rename.end()) return r->second;
    if (a.rfind("beta", 0) == 0) return "psi" + a.substr(4);
    return a;
  };
  for (auto& p : out.points) p.id = final_id(p.id);
  for (auto& sg : out.segments) {
    sg.id = final_id(sg.id);
    for (auto& b : sg.boundary) b = final_id(b);
  }
  return out;
}

DisjointReport disjoint(const CrookedPlane& a, const CrookedPlane& b, double eps) {
  DisjointReport rep{};
  rep.gap = std::numeric_limits<double>::infinity();
  for (const Poly& fa : faces_of(a))
    for (const Poly& fb : faces_of(b)) {
      FacePair fp = poly_distance(fa, fb);
      rep.pairs.push_back(fp);
      if (fp.distance < rep.gap) {
        rep.gap = fp.distance;
        rep.closest = fp;
      }
    }
  rep.disjoint = rep.gap > eps;
  return rep;
}

kernels::CrookedFrame kernel_frame(const CrookedPlane& c) {
  const Vec3 s = c.orientation * c.spine;
  return kernels::make_frame(c.vertex.data(), c.l1.data(), c.l2.data(), s.data());
}

MonteCarloReport monte_carlo_distance(const CrookedPlane& a, const CrookedPlane& b, std::uint64_t samples,
                                      std::uint64_t seed, double box, kernels::Isa isa) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> full(-box, box);
  std::uniform_real_distribution<double> half(0.0, box);
  MonteCarloReport rep{samples, std::numeric_limits<double>::infinity(), Vec3::Zero(), box};
  constexpr std::size_t kBatch = 4096;
  std::vector<double> pts(3 * kBatch);
  std::vector<double> dist(kBatch);
  const std::array<const CrookedPlane*, 2> planes{&a, &b};
  for (int side = 0; side < 2; ++side) {
    const auto faces = faces_of(*planes[side]);
    const kernels::CrookedFrame other = kernel_frame(*planes[1 - side]);
    std::uint64_t todo = samples / 2 + (side == 0 ? samples % 2 : 0);
    std::uint64_t drawn = 0;
    while (drawn < todo) {
      const std::size_t n = static_cast<std::size_t>(std::min<std::uint64_t>(kBatch, todo - drawn));
      for (std::size_t i = 0; i < n; ++i) {
        const Poly& f = faces[(drawn + i) % 4];
        double x0 = f.nonneg[0] ? half(rng) : full(rng);
        double x1 = f.nonneg[1] ? half(rng) : full(rng);
        Vec3 p = f.o + f.g[0].normalized() * x0 + f.g[1].normalized() * x1;
        pts[3 * i] = p(0);
        pts[3 * i + 1] = p(1);
        pts[3 * i + 2] = p(2);
      }
      kernels::crooked_distance_batch(other, pts.data(), n, dist.data(), isa);
      for (std::size_t i = 0; i < n; ++i)
        if (dist[i] < rep.min_distance) {
          rep.min_distance = dist[i];
          rep.closest_sample = Vec3(pts[3 * i], pts[3 * i + 1], pts[3 * i + 2]);
        }
      drawn += n;
    }
  }
  return rep;
}

bool surface_automorphism(const ConformalTransform& g, const CrookedPlane& c, double eps) {
  if (!(g.form == ein_form()) || g.matrix.rows() != 5 || g.matrix.cols() != 5)
    throw std::invalid_argument("automorphism test needs a 5x5 transform on the hyp2 form");
  if (!preserves_form(g.matrix, g.form, 1e-8) || g.matrix.determinant() < 0)
    throw GeometryError("transform is not in SO(3,2)");
  const Mat& m = g.matrix;
  const CrookedSurface surf = closure_strata(c);

  // The four points are permuted.
  std::vector<bool> hit(surf.points.size(), false);
  for (const auto& p : surf.points) {
    Vec img = m * p.point;
    bool found = false;
    for (size_t j = 0; j < surf.points.size(); ++j)
      if (projective_distance(img, surf.points[j].point) <= eps) {
        hit[j] = true;
        found = true;
      }
    if (!found) return false;
  }
  if (std::count(hit.begin(), hit.end(), true) != static_cast<long>(hit.size())) return false;

  // The four photons are permuted.
  const Vec p0 = surf.find("p0").point, pu = surf.find("pinf").point;
  const Vec q1 = surf.find("p1").point, q2 = surf.find("p2").point;
  std::vector<Mat> photons;
  for (const auto& [x, y] : {std::pair{p0, q1}, std::pair{p0, q2}, std::pair{pu, q1}, std::pair{pu, q2}}) {
    Mat b(5, 2);
    b << x, y;
    photons.push_back(b);
  }
  for (const Mat& ph : photons) {
    Mat img = m * ph;
    if (std::none_of(photons.begin(), photons.end(),
                     [&](const Mat& other) { return subspace_distance(img, other) <= eps; }))
      return false;
  }

  // Face samples land on the surface; for a closed surface into is onto.
  const Vec3 s = c.orientation * c.spine;
  const std::array<double, 6> ts{-3.0, -1.0, -0.3, 0.4, 1.2, 3.5};
  const std::array<double, 3> cs{0.2, 1.0, 4.0};
  for (double t : ts)
    for (double k : cs) {
      const std::array<Vec3, 4> xs{c.vertex + t * c.l1 + k * s, c.vertex + t * c.l2 - k * s,
                                   c.vertex + k * c.l1 + std::abs(t) * c.l2,
                                   c.vertex - k * c.l1 - std::abs(t) * c.l2};
      for (const Vec3& x : xs) {
        EinPoint img{m * section(x), g.form};
        if (membership(img, c, eps).tag == FaceTag::Outside) return false;
      }
    }
  return true;
}

Mat crooked_s0() { return Vec(vec({1, -1, -1, 1, 1})).asDiagonal(); }

Mat crooked_s1() {
  // Acts on the patch as x -> x / <x,x>.
  Mat m = Mat::Zero(5, 5);
  m(0, 0) = m(1, 1) = m(2, 2) = -1;
  m(3, 4) = m(4, 3) = -1;
  return m;
}

Mat crooked_s2() { return Vec(vec({-1, 1, -1, 1, 1})).asDiagonal(); }

Mat crooked_a(double r, double t) {
  Mat a = Mat::Identity(3, 3);
  a(1, 1) = a(2, 2) = std::cosh(t);
  a(1, 2) = a(2, 1) = std::sinh(t);
  return similarity_matrix(r, a, Vec::Zero(3)).matrix;
}

}  // namespace ein
