#pragma once

#include "einkit/einstein.hpp"
#include "einkit/sympl4.hpp"

#include <functional>
#include <limits>
#include <optional>
#include <vector>

namespace ein {

enum class Group { Sp4, SO32 };

// Sp: A(x1, x2) = diag(e^x1, e^-x1, e^x2, e^-x2), chamber x2 >= x1 >= 0.
// SO: A'(x1, x2) = diag(e^x1, e^x2, 1, e^-x2, e^-x1) in f-coordinates, x1 >= x2 >= 0.
struct KAKDecomp {
  Group group;
  Mat k;
  Mat a;
  Mat kp;
  double x1 = 0;  // alpha1 or a1
  double x2 = 0;  // alpha2 or a2
};

Mat sp_cartan_A(double alpha1, double alpha2);
Mat so_cartan_A(double a1, double a2);

// For SO32 the input is read in the coordinates of `form`; the factors are
// returned in the same coordinates.
KAKDecomp kak(const Mat& g, Group which, const FormSpec& form = w0_form(), double eps = 1e-7);

// A sequence stored as unit-norm matrices with their log operator norms.
struct Sequence {
  std::vector<Mat> terms;
  std::vector<double> log_scale;
  // log of the top singular value of Lambda^2 of each term; resolves the
  // second exponent beyond the dynamic range of the normalized terms.
  std::vector<double> wedge_log;
  std::vector<Mat> wedge_terms;  // Lambda^2 of each term, unit operator norm

  size_t size() const { return terms.size(); }
  Mat term(size_t i) const;  // unnormalized (may overflow for long sequences)
};

Sequence powers(const Mat& g, int n);
Sequence from_list(const std::vector<Mat>& list);
// Group inverse termwise: J^{-1} g^T J for Sp, B^{-1} g^T B for SO.
Sequence inverse_sequence(const Sequence& s, Group which, const FormSpec& form = w0_form());

// Exponents from singular values, robust to the stored normalization.
// wedge_log = log(s1 s2) of the unnormalized term; used when the normalized
// term no longer resolves the second singular value.
std::pair<double, double> sp_exponents(const Mat& unit, double log_scale,
                                       double wedge_log = std::numeric_limits<double>::quiet_NaN());
std::pair<double, double> so_exponents(const Mat& unit, double log_scale, const FormSpec& form,
                                       double wedge_log = std::numeric_limits<double>::quiet_NaN());

enum class SpClass { None, Bounded, Balanced, Mixed };
enum class SoClass { None, Balanced, Unbalanced, Mixed };

std::string sp_class_name(SpClass c);
std::string so_class_name(SoClass c);

inline constexpr double kSlopeThreshold = 0.05;

// Least-squares slope over the last half of the trace.
bool bounded_trace(const std::vector<double>& xs, double threshold = kSlopeThreshold);

struct ExponentRow {
  double alpha1, alpha2, a1, a2;
};

struct DistortionReport {
  SpClass sp_class = SpClass::None;
  SoClass so_class = SoClass::None;
  std::vector<ExponentRow> trace;
};

// Sequence in Sp(4,R); SO exponents come from the induced action on W0.
DistortionReport classify_distortion(const Sequence& seq);
// Sequence in O(3,2) written in `form`; only the SO fields are filled.
DistortionReport classify_distortion_so(const Sequence& seq, const FormSpec& form);

struct SingularLimit {
  Mat ginf;    // unit operator norm
  Mat kernel;  // orthonormal columns
  Mat image;   // orthonormal columns
  int rank = 0;
};

SingularLimit singular_limit(const Sequence& seq, double tail_tol = 1e-6, double rank_tol = 1e-6);

struct LimitSets {
  SoClass cls;
  std::optional<Photon> source_photon;
  std::optional<Photon> target_photon;
  std::optional<EinPoint> source_vertex;  // vertex of the removed lightcone
  std::optional<EinPoint> target_point;
  Mat ginf;
};

LimitSets limit_sets_ein(const Sequence& seq, const FormSpec& form);

struct FlagLimits {
  Vec q_line;             // [k e3]
  Lagrangian q_plane;     // k span(e1, e3) = alpha+
  Photon beta_plus;       // photon of the line k e3
  Lagrangian alpha_minus; // W span(e2, e4)
  Vec beta_minus_line;    // w4; beta- is its photon
  Photon beta_minus;
};

FlagLimits flag_limits(const Sequence& seq, double eps = 1e-7);

// Flags (line in Lagrangian) that fail to converge to q+.
bool flag_removed(const FlagLimits& f, const Vec& line, const Lagrangian& plane, double tol = 1e-9);

enum class ProperSpace { Ein, ProjV, ProjR32minusEin };

enum class RemovedKind { Photon, Lightcone, ProjectiveSubspace };

std::string removed_kind_name(RemovedKind k);

struct RemovedObject {
  RemovedKind kind;
  std::vector<int> word;  // letters: 2i = g_i, 2i + 1 = g_i^{-1}
  Mat basis;              // photon plane, lightcone vertex (1 column) or subspace
  std::string cls;
};

struct ProperReport {
  std::vector<std::vector<int>> words;
  std::vector<std::string> classes;
  std::vector<RemovedObject> removed;
  bool first_kind_evidence = true;  // no bounded-distortion subsequence found
  FormSpec form;
  double tol = 1e-6;

  bool in_domain(const Vec& x) const;
};

// Reduced words of length 1..len over generators and their inverses
// (involutions contribute a single letter).
std::vector<std::vector<int>> reduced_words(const std::vector<Mat>& gens, int len, double eps = 1e-9);
Mat word_matrix(const std::vector<Mat>& gens, const std::vector<int>& word);

ProperReport properness_domain(const std::vector<Mat>& gens, const FormSpec& form, int len, ProperSpace space,
                               int powers_n = 32);

}  // namespace ein
