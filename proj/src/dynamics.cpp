#include "einkit/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ein {

namespace {

double op_norm(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues()(0);
}

// Second compound matrix: 2x2 minors indexed by pairs i < j.
Mat compound2(const Mat& g) {
  const Eigen::Index n = g.rows();
  std::vector<std::pair<Eigen::Index, Eigen::Index>> idx;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) idx.emplace_back(i, j);
  const auto m = static_cast<Eigen::Index>(idx.size());
  Mat c(m, m);
  for (Eigen::Index r = 0; r < m; ++r)
    for (Eigen::Index k = 0; k < m; ++k) {
      auto [a, b] = idx[static_cast<size_t>(r)];
      auto [x, y] = idx[static_cast<size_t>(k)];
      c(r, k) = g(a, x) * g(b, y) - g(a, y) * g(b, x);
    }
  return c;
}

// 2-plane of the top left singular vector of the last Lambda^2 term.
Mat top_plane(const Sequence& seq) {
  if (seq.wedge_terms.empty()) throw GeometryError("sequence carries no exterior-square terms");
  const Mat& w = seq.wedge_terms.back();
  Eigen::JacobiSVD<Mat> svd(w, Eigen::ComputeFullU);
  Vec c = svd.matrixU().col(0);
  const Eigen::Index n = static_cast<Eigen::Index>(std::lround((1.0 + std::sqrt(1.0 + 8.0 * c.size())) / 2.0));
  Mat a = Mat::Zero(n, n);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      a(i, j) = c(k);
      a(j, i) = -c(k);
      ++k;
    }
  // a = u v^T - v u^T for a decomposable bivector; its image is span(u, v).
  Eigen::JacobiSVD<Mat> sa(a, Eigen::ComputeFullU);
  return sa.matrixU().leftCols(2);
}

double track(const Sequence& seq, size_t i) {
  return i < seq.wedge_log.size() ? seq.wedge_log[i] : std::numeric_limits<double>::quiet_NaN();
}

// Unit vector w = x+ + x- with B x+ = x+, B x- = -x-, |x+| = |x-|, so
// that w is B-isotropic. `comp` spans the B-invariant subspace w must lie in.
Vec isotropize(const Vec& w, const Mat& b, const Mat& comp) {
  Vec xp = 0.5 * (w + b * w);
  Vec xm = 0.5 * (w - b * w);
  const double h = 1.0 / std::sqrt(2.0);
  if (xp.norm() < 1e-6 || xm.norm() < 1e-6) {
    Mat rb = comp.transpose() * b * comp;
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (rb + rb.transpose()));
    if (xp.norm() < 1e-6) xp = comp * es.eigenvectors().col(es.eigenvalues().size() - 1);
    if (xm.norm() < 1e-6) xm = comp * es.eigenvectors().col(0);
  }
  return h * xp.normalized() + h * xm.normalized();
}

KAKDecomp kak_sp(const Mat& g, double eps) {
  if (g.rows() != 4 || g.cols() != 4) throw std::invalid_argument("Sp(4) KAK needs a 4x4 matrix");
  if (!is_symplectic(g, eps)) throw GeometryError("matrix is not symplectic");
  const Mat& j = symp_J();
  Eigen::JacobiSVD<Mat> svd(g, Eigen::ComputeFullV);
  Vec w3 = svd.matrixV().col(0);
  Vec w4 = j * w3;
  Mat c(2, 4);
  c.row(0) = w3.transpose();
  c.row(1) = w4.transpose();
  Mat comp = null_space(c, 1e-12);
  Eigen::JacobiSVD<Mat> svd2(g * comp, Eigen::ComputeFullV);
  Vec w1 = (comp * svd2.matrixV().col(0)).normalized();
  Vec w2 = j * w1;
  double s2 = svd.singularValues()(0);
  double s1 = std::max(1.0, svd2.singularValues()(0));
  KAKDecomp d{Group::Sp4, Mat(4, 4), Mat(), Mat(4, 4), std::log(s1), std::log(s2)};
  Mat w(4, 4);
  w << w1, w2, w3, w4;
  Vec k1 = g * w1 / s1;
  Vec k3 = g * w3 / s2;
  d.k << k1, j * k1, k3, j * k3;
  d.kp = w.transpose();
  d.a = sp_cartan_A(d.x1, d.x2);
  return d;
}

KAKDecomp kak_so_f(const Mat& g) {
  const Mat b = form_matrix(w0_form());
  Eigen::JacobiSVD<Mat> svd(g, Eigen::ComputeFullV);
  double s1 = std::max(1.0, svd.singularValues()(0));
  Vec w1 = isotropize(svd.matrixV().col(0), b, Mat::Identity(5, 5));
  Vec w5 = b * w1;
  Mat c1(2, 5);
  c1.row(0) = w1.transpose();
  c1.row(1) = w5.transpose();
  Mat comp = null_space(c1, 1e-12);
  Eigen::JacobiSVD<Mat> svd2(g * comp, Eigen::ComputeFullV);
  double s2 = std::max(1.0, svd2.singularValues()(0));
  Vec w2 = isotropize(comp * svd2.matrixV().col(0), b, comp);
  Vec w4 = b * w2;
  Mat c2(4, 5);
  c2 << w1.transpose(), w2.transpose(), w4.transpose(), w5.transpose();
  Vec w3 = null_space(c2, 1e-12).col(0);
  KAKDecomp d{Group::SO32, Mat(5, 5), Mat(), Mat(5, 5), std::log(s1), std::log(s2)};
  Mat w(5, 5);
  w << w1, w2, w3, w4, w5;
  Vec k1 = g * w1 / s1;
  Vec k2 = g * w2 / s2;
  Vec k3 = g * w3;
  d.k << k1, k2, k3, b * k2, b * k1;
  d.kp = w.transpose();
  d.a = so_cartan_A(d.x1, d.x2);
  return d;
}

}  // namespace

Mat sp_cartan_A(double alpha1, double alpha2) {
  Vec d = vec({std::exp(alpha1), std::exp(-alpha1), std::exp(alpha2), std::exp(-alpha2)});
  return d.asDiagonal();
}

Mat so_cartan_A(double a1, double a2) {
  Vec d = vec({std::exp(a1), std::exp(a2), 1.0, std::exp(-a2), std::exp(-a1)});
  return d.asDiagonal();
}

KAKDecomp kak(const Mat& g, Group which, const FormSpec& form, double eps) {
  if (which == Group::Sp4) return kak_sp(g, eps);
  if (g.rows() != 5 || g.cols() != 5 || form.dim() != 5) throw std::invalid_argument("SO(3,2) KAK needs a 5x5 matrix");
  if (!preserves_form(g, form, eps)) throw GeometryError("matrix does not preserve the form");
  Mat m = intertwiner(form, w0_form());
  Mat mi = m.inverse();
  KAKDecomp d = kak_so_f(m * g * mi);
  d.k = mi * d.k * m;
  d.a = mi * d.a * m;
  d.kp = mi * d.kp * m;
  return d;
}

Mat Sequence::term(size_t i) const { return terms.at(i) * std::exp(log_scale.at(i)); }

Sequence powers(const Mat& g, int n) {
  if (n < 1) throw std::invalid_argument("need at least one power");
  Sequence s;
  double l1 = op_norm(g);
  Mat unit = g / l1;
  Mat cur = unit;
  double ls = std::log(l1);
  Mat w = compound2(g);
  double w1 = op_norm(w);
  Mat wunit = w / w1;
  Mat wcur = wunit;
  double wl = std::log(w1);
  for (int i = 0; i < n; ++i) {
    if (i > 0) {
      cur = cur * unit;
      double c = op_norm(cur);
      cur /= c;
      ls += std::log(l1) + std::log(c);
      wcur = wcur * wunit;
      double wc = op_norm(wcur);
      wcur /= wc;
      wl += std::log(w1) + std::log(wc);
    }
    s.terms.push_back(cur);
    s.log_scale.push_back(ls);
    s.wedge_log.push_back(wl);
    s.wedge_terms.push_back(wcur);
  }
  return s;
}

Sequence from_list(const std::vector<Mat>& list) {
  Sequence s;
  for (const Mat& m : list) {
    double c = op_norm(m);
    if (c == 0.0) throw GeometryError("zero matrix in sequence");
    s.terms.push_back(m / c);
    s.log_scale.push_back(std::log(c));
    Mat w = compound2(m);
    double wc = op_norm(w);
    s.wedge_log.push_back(std::log(wc));
    s.wedge_terms.push_back(w / wc);
  }
  return s;
}

Sequence inverse_sequence(const Sequence& s, Group which, const FormSpec& form) {
  Sequence out;
  Mat b = which == Group::Sp4 ? symp_J() : form_matrix(form);
  Mat bi = b.inverse();
  for (size_t i = 0; i < s.size(); ++i) {
    // g^{-1} = B^{-1} g^T B with B = J or the form matrix.
    Mat inv = bi * s.terms[i].transpose() * b;
    double c = op_norm(inv);
    out.terms.push_back(inv / c);
    out.log_scale.push_back(s.log_scale[i] + std::log(c));
  }
  // Both groups have singular values closed under inversion.
  out.wedge_log = s.wedge_log;
  if (!s.wedge_terms.empty()) {
    Mat cb = compound2(b);
    Mat cbi = compound2(bi);
    for (const Mat& w : s.wedge_terms) {
      Mat inv = cbi * w.transpose() * cb;
      out.wedge_terms.push_back(inv / op_norm(inv));
    }
  }
  return out;
}

namespace {

// Past this gap the second singular value of a normalized term is rounding noise.
constexpr double kResolvableGap = 25.0;

double second_exponent(double top, double direct, double wedge_log) {
  if (top - direct <= kResolvableGap || std::isnan(wedge_log)) return direct;
  return wedge_log - top;
}

}  // namespace

std::pair<double, double> sp_exponents(const Mat& unit, double log_scale, double wedge_log) {
  Eigen::JacobiSVD<Mat> svd(unit);
  const Vec& s = svd.singularValues();
  double a2 = std::log(s(0)) + log_scale;
  double a1 = second_exponent(a2, std::log(s(1)) + log_scale, wedge_log);
  return {std::max(0.0, a1), std::max(0.0, a2)};
}

std::pair<double, double> so_exponents(const Mat& unit, double log_scale, const FormSpec& form, double wedge_log) {
  Mat m = intertwiner(form, w0_form());
  Eigen::JacobiSVD<Mat> svd(m * unit * m.inverse());
  const Vec& s = svd.singularValues();
  double a1 = std::log(s(0)) + log_scale;
  double a2 = second_exponent(a1, std::log(s(1)) + log_scale, wedge_log);
  return {std::max(0.0, a1), std::max(0.0, a2)};
}

std::string sp_class_name(SpClass c) {
  switch (c) {
    case SpClass::None: return "none";
    case SpClass::Bounded: return "bounded";
    case SpClass::Balanced: return "balanced";
    case SpClass::Mixed: return "mixed";
  }
  return "?";
}

std::string so_class_name(SoClass c) {
  switch (c) {
    case SoClass::None: return "none";
    case SoClass::Balanced: return "balanced";
    case SoClass::Unbalanced: return "unbalanced";
    case SoClass::Mixed: return "mixed";
  }
  return "?";
}

bool bounded_trace(const std::vector<double>& xs, double threshold) {
  if (xs.empty()) throw std::invalid_argument("empty sequence");
  const size_t n = xs.size();
  const size_t start = n / 2;
  if (n - start < 2) return true;
  double mx = 0, my = 0;
  for (size_t i = start; i < n; ++i) {
    mx += static_cast<double>(i);
    my += xs[i];
  }
  const double cnt = static_cast<double>(n - start);
  mx /= cnt;
  my /= cnt;
  double sxy = 0, sxx = 0;
  for (size_t i = start; i < n; ++i) {
    double dx = static_cast<double>(i) - mx;
    sxy += dx * (xs[i] - my);
    sxx += dx * dx;
  }
  return sxy / sxx < threshold;
}

namespace {

SoClass so_class_of(const std::vector<ExponentRow>& t) {
  std::vector<double> a1, a2, d;
  for (const ExponentRow& r : t) {
    a1.push_back(r.a1);
    a2.push_back(r.a2);
    d.push_back(r.a1 - r.a2);
  }
  if (bounded_trace(a1)) return SoClass::None;
  if (bounded_trace(d)) return SoClass::Balanced;
  if (bounded_trace(a2)) return SoClass::Unbalanced;
  return SoClass::Mixed;
}

}  // namespace

DistortionReport classify_distortion(const Sequence& seq) {
  if (seq.size() == 0) throw std::invalid_argument("empty sequence");
  DistortionReport r;
  for (size_t i = 0; i < seq.size(); ++i) {
    if (seq.terms[i].rows() != 4) throw std::invalid_argument("Sp(4) sequence needs 4x4 terms");
    auto [al1, al2] = sp_exponents(seq.terms[i], seq.log_scale[i], track(seq, i));
    // The two top singular values of Lambda^2 g on W0 are s1 s2 and s1 s3 = s1 / s2.
    // Reading them off the Sp singular values keeps a2 resolved after the
    // 5x5 SVD has lost it (once 2 alpha1 exceeds the double range).
    r.trace.push_back({al1, al2, al1 + al2, al2 - al1});
  }
  std::vector<double> x1, x2, d;
  for (const ExponentRow& e : r.trace) {
    x1.push_back(e.alpha1);
    x2.push_back(e.alpha2);
    d.push_back(e.alpha2 - e.alpha1);
  }
  if (bounded_trace(x2)) r.sp_class = SpClass::None;
  else if (bounded_trace(d)) r.sp_class = SpClass::Bounded;
  else if (bounded_trace(x1)) r.sp_class = SpClass::Balanced;
  else r.sp_class = SpClass::Mixed;
  r.so_class = so_class_of(r.trace);
  return r;
}

DistortionReport classify_distortion_so(const Sequence& seq, const FormSpec& form) {
  if (seq.size() == 0) throw std::invalid_argument("empty sequence");
  DistortionReport r;
  for (size_t i = 0; i < seq.size(); ++i) {
    if (seq.terms[i].rows() != 5) throw std::invalid_argument("SO(3,2) sequence needs 5x5 terms");
    auto [a1, a2] = so_exponents(seq.terms[i], seq.log_scale[i], form, track(seq, i));
    r.trace.push_back({0.5 * (a1 - a2), 0.5 * (a1 + a2), a1, a2});
  }
  r.so_class = so_class_of(r.trace);
  return r;
}

SingularLimit singular_limit(const Sequence& seq, double tail_tol, double rank_tol) {
  if (seq.size() == 0) throw std::invalid_argument("empty sequence");
  std::vector<Mat> t;
  for (const Mat& m : seq.terms) {
    Mat x = m;
    if (!t.empty() && (x.array() * t.back().array()).sum() < 0) x = -x;
    t.push_back(x);
  }
  const Mat& last = t.back();
  size_t tail = std::max<size_t>(2, t.size() / 4);
  tail = std::min(tail, t.size());
  for (size_t i = t.size() - tail; i < t.size(); ++i)
    if ((t[i] - last).norm() > tail_tol) throw GeometryError("normalized sequence does not converge");
  SingularLimit lim;
  lim.ginf = last;
  Eigen::JacobiSVD<Mat> svd(last, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vec& s = svd.singularValues();
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rank_tol * s(0)) ++r;
  if (r == last.cols()) throw GeometryError("no escape: the normalized limit is invertible");
  lim.rank = r;
  lim.image = svd.matrixU().leftCols(r);
  lim.kernel = svd.matrixV().rightCols(last.cols() - r);
  return lim;
}

LimitSets limit_sets_ein(const Sequence& seq, const FormSpec& form) {
  DistortionReport rep = classify_distortion_so(seq, form);
  if (rep.so_class == SoClass::None) throw GeometryError("sequence has no distortion");
  LimitSets out{rep.so_class, {}, {}, {}, {}, Mat()};
  const double tol = 1e-6;
  if (rep.so_class == SoClass::Mixed) {
    out.ginf = seq.terms.back();
    Mat t = top_plane(seq);
    Mat s = top_plane(inverse_sequence(seq, Group::SO32, form));
    out.target_photon = photon_span(t.col(0), t.col(1), form, tol);
    out.source_photon = photon_span(s.col(0), s.col(1), form, tol);
    return out;
  }
  SingularLimit lim = singular_limit(seq);
  out.ginf = lim.ginf;
  if (rep.so_class == SoClass::Balanced) {
    if (lim.rank != 2) throw GeometryError("balanced limit does not have rank 2");
    Subspace rad = radical({lim.kernel, form}, tol);
    if (rad.dim() != 2) throw GeometryError("kernel does not meet Ein in a photon");
    out.source_photon = photon_span(rad.basis.col(0), rad.basis.col(1), form, tol);
    out.target_photon = photon_span(lim.image.col(0), lim.image.col(1), form, tol);
  } else {
    if (lim.rank != 1) throw GeometryError("unbalanced limit does not have rank 1");
    Subspace v = orth_complement({lim.kernel, form}, tol);
    out.source_vertex = project_null(v.basis.col(0), form, tol);
    out.target_point = project_null(lim.image.col(0), form, tol);
  }
  return out;
}

FlagLimits flag_limits(const Sequence& seq, double eps) {
  DistortionReport rep = classify_distortion(seq);
  if (rep.sp_class != SpClass::Mixed) throw GeometryError("flag limits need mixed distortion");
  if (seq.log_scale.back() > 600) throw GeometryError("sequence term too large for KAK");
  KAKDecomp d = kak(seq.term(seq.size() - 1), Group::Sp4, w0_form(), eps);
  FlagLimits f;
  f.q_line = normalize_projective(d.k.col(2));
  Mat q(4, 2);
  q << d.k.col(0), d.k.col(2);
  f.q_plane = {q};
  f.beta_plus = line_to_photon(f.q_line);
  Mat w = d.kp.transpose();
  Mat am(4, 2);
  am << w.col(1), w.col(3);
  f.alpha_minus = {am};
  f.beta_minus_line = normalize_projective(w.col(3));
  f.beta_minus = line_to_photon(f.beta_minus_line);
  return f;
}

bool flag_removed(const FlagLimits& f, const Vec& line, const Lagrangian& plane, double tol) {
  if (std::abs(omega(line.normalized(), f.beta_minus_line)) <= tol) return true;
  return maslov_incident(plane, f.alpha_minus, tol);
}

std::string removed_kind_name(RemovedKind k) {
  switch (k) {
    case RemovedKind::Photon: return "photon";
    case RemovedKind::Lightcone: return "lightcone";
    case RemovedKind::ProjectiveSubspace: return "projective_subspace";
  }
  return "?";
}

bool ProperReport::in_domain(const Vec& x) const {
  for (const RemovedObject& r : removed) {
    switch (r.kind) {
      case RemovedKind::Photon:
      case RemovedKind::ProjectiveSubspace:
        if (line_to_subspace_distance(x, r.basis) <= tol) return false;
        break;
      case RemovedKind::Lightcone:
        if (std::abs(inner(x.normalized(), r.basis.col(0).normalized(), form)) <= tol) return false;
        break;
    }
  }
  return true;
}

std::vector<std::vector<int>> reduced_words(const std::vector<Mat>& gens, int len, double eps) {
  if (gens.empty()) throw std::invalid_argument("empty generator list");
  std::vector<int> alphabet;
  std::vector<bool> involution(gens.size());
  for (size_t i = 0; i < gens.size(); ++i) {
    const Mat& g = gens[i];
    Mat id = Mat::Identity(g.rows(), g.cols());
    involution[i] = (g * g - id).cwiseAbs().maxCoeff() <= eps * std::max(1.0, g.squaredNorm());
    alphabet.push_back(static_cast<int>(2 * i));
    if (!involution[i]) alphabet.push_back(static_cast<int>(2 * i + 1));
  }
  auto inverse = [&](int l) { return involution[l / 2] ? l : (l ^ 1); };
  std::vector<std::vector<int>> out;
  std::vector<std::vector<int>> layer{{}};
  for (int k = 1; k <= len; ++k) {
    std::vector<std::vector<int>> next;
    for (const auto& w : layer)
      for (int l : alphabet) {
        if (!w.empty() && inverse(w.back()) == l) continue;
        auto w2 = w;
        w2.push_back(l);
        next.push_back(w2);
      }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

Mat word_matrix(const std::vector<Mat>& gens, const std::vector<int>& word) {
  if (gens.empty()) throw std::invalid_argument("empty generator list");
  Mat m = Mat::Identity(gens[0].rows(), gens[0].cols());
  for (int l : word) {
    const Mat& g = gens.at(static_cast<size_t>(l / 2));
    m = m * ((l & 1) ? Mat(g.inverse()) : g);
  }
  return m;
}

ProperReport properness_domain(const std::vector<Mat>& gens, const FormSpec& form, int len, ProperSpace space,
                               int powers_n) {
  if (gens.empty()) throw std::invalid_argument("empty generator list");
  if (len < 1) throw std::invalid_argument("word length must be at least 1");
  ProperReport rep;
  rep.form = form;
  rep.words = reduced_words(gens, len);
  for (const auto& w : rep.words) {
    Sequence seq = powers(word_matrix(gens, w), powers_n);
    if (space == ProperSpace::ProjV) {
      DistortionReport d = classify_distortion(seq);
      std::string cls = sp_class_name(d.sp_class);
      if (d.sp_class == SpClass::Bounded) rep.first_kind_evidence = false;
      if (d.sp_class != SpClass::None) {
        try {
          SingularLimit lim = singular_limit(seq);
          rep.removed.push_back({RemovedKind::ProjectiveSubspace, w, lim.kernel, cls});
        } catch (const GeometryError&) {
          cls += ":unresolved";
        }
      }
      rep.classes.push_back(cls);
      continue;
    }
    DistortionReport d = classify_distortion_so(seq, form);
    std::string cls = so_class_name(d.so_class);
    if (d.so_class == SoClass::Unbalanced) rep.first_kind_evidence = false;
    if (space == ProperSpace::Ein && d.so_class != SoClass::None) {
      try {
        LimitSets ls = limit_sets_ein(seq, form);
        if (ls.source_photon) rep.removed.push_back({RemovedKind::Photon, w, ls.source_photon->basis(), cls});
        if (ls.target_photon) rep.removed.push_back({RemovedKind::Photon, w, ls.target_photon->basis(), cls});
        if (ls.source_vertex) {
          Mat v(form.dim(), 1);
          v.col(0) = ls.source_vertex->rep;
          rep.removed.push_back({RemovedKind::Lightcone, w, v, cls});
        }
      } catch (const GeometryError&) {
        cls += ":unresolved";
      }
    }
    rep.classes.push_back(cls);
  }
  return rep;
}

}  // namespace ein
