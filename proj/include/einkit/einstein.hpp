#pragma once

#include "einkit/forms.hpp"

#include <optional>
#include <string>
#include <variant>

namespace ein {

// Ambient form of Ein^{n,1}: R^{n+1,2} with the last-pair hyperbolic matrix.
// Coordinates (x_1..x_{n+1}, U, V); p0 = e_V, p_inf = e_U.
FormSpec ein_form(int n = 2);

struct EinPoint {
  Vec rep;
  FormSpec form;
};

struct Photon {
  Vec u;
  Vec v;
  FormSpec form;

  Mat basis() const;
};

struct IsotropicFlag {
  EinPoint point;
  Photon photon;
};

enum class HypersurfaceKind { Lightcone, EinsteinHypersphere, SpacelikeHypersphere, SpacelikeCircle, TimelikeCircle };

std::string hypersurface_name(HypersurfaceKind k);

struct Hypersurface {
  HypersurfaceKind kind;
  Subspace defining;  // the subspace whose null cone is the surface
  Vec vector;         // defining normal vector when there is one
};

struct ConformalTransform {
  Mat matrix;
  FormSpec form;
};

// Throws GeometryError unless M^T B M = B within eps (relative to |M|^2).
ConformalTransform make_transform(const Mat& m, const FormSpec& form, double eps = kEps);
bool preserves_form(const Mat& m, const FormSpec& form, double eps = kEps);

// Sign of the determinant of the negative-definite block in diagonal
// coordinates: +1 time-orientation preserving, -1 time-reversing.
int time_orientation_sign(const Mat& m, const FormSpec& form);

EinPoint project_null(const Vec& v, const FormSpec& spec, double eps = kEps);
EinPoint p0(int n = 2);
EinPoint p_inf(int n = 2);

EinPoint apply(const ConformalTransform& g, const EinPoint& p);
Photon apply(const ConformalTransform& g, const Photon& ph);

bool same_point(const EinPoint& a, const EinPoint& b, double eps = kEps);

Photon photon_span(const Vec& v, const Vec& w, const FormSpec& spec, double eps = kEps);
bool same_photon(const Photon& a, const Photon& b, double eps = kEps);

bool incidence(const EinPoint& a, const EinPoint& b, double eps = kEps);
bool incidence(const EinPoint& a, const Photon& b, double eps = kEps);
bool incidence(const Photon& a, const EinPoint& b, double eps = kEps);
bool incidence(const Photon& a, const Photon& b, double eps = kEps);

Hypersurface hypersurface_from_vector(const Vec& v, const FormSpec& spec, double eps = kEps);

std::variant<Photon, Hypersurface> lightcone_pair_intersection(const EinPoint& p, const EinPoint& q,
                                                                double eps = kEps);

enum class LightconeSection { SpacelikeCircle, TwoIncidentPhotons };

LightconeSection lightcone_vs_hypersphere(const Vec& u, const Vec& v, const FormSpec& spec, double eps = kEps);

// Minkowski metric diag(1,..,1,-1) on E^{n,1}.
Mat minkowski_metric(int n);
double minkowski_inner(const Vec& x, const Vec& y);

// Unnormalized section (x, <x,x>, 1) and its projectivization.
Vec chart_section(const Vec& x);
EinPoint minkowski_chart(const Vec& x);

enum class IdealStratum { ImproperPoint, IdealSpherePoint, GenericIdealPoint };

std::string stratum_name(IdealStratum s);

class ChartError : public GeometryError {
 public:
  ChartError(IdealStratum s, const std::string& what) : GeometryError(what), stratum(s) {}
  IdealStratum stratum;
};

Vec chart_inverse(const EinPoint& p, double eps = kEps);

// F with F chart(x) ~ chart(r A x + b).
ConformalTransform similarity_matrix(double r, const Mat& a, const Vec& b, double eps = kEps);

struct Similarity {
  double r;
  Mat a;
  Vec b;
};

// Inverse of similarity_matrix for transforms fixing [p_inf].
Similarity similarity_parts(const ConformalTransform& g, double eps = kEps);

Mat inversion_matrix(int n = 2);
EinPoint inversion_apply(const EinPoint& p);

double invert_photon_parameter(double r0, double psi, double theta, double t, double eps = kEps);

enum class InvolutionType { EmptyFix, SpacelikeSphere, TimelikeCircle, SpacelikeCircleAndTwoPoints, EinsteinHypersphere };

std::string involution_name(InvolutionType t);

struct InvolutionReport {
  InvolutionType type;
  Subspace plus;    // +1 eigenspace of the chosen lift
  Subspace minus;   // -1 eigenspace
  std::optional<EinPoint> p1;
  std::optional<EinPoint> p2;
  std::optional<Subspace> circle;
};

InvolutionReport classify_involution(const ConformalTransform& g, double eps = kEps);

enum class FrontierKind { SpatialImproperPoint, TimelikeImproperPoint, Photon };

struct GeodesicFrontier {
  FrontierKind kind;
  Vec hat_point;                // representative in the double cover (sign matters)
  std::optional<Photon> photon;  // closure of a lightlike geodesic
};

// Improper points of the patch in the double cover.
Vec improper_spatial(int n = 2);
Vec improper_timelike(int n = 2);

GeodesicFrontier geodesic_closure(const Vec& p, const Vec& v, double eps = kEps);

struct Ein11Point {
  Vec coords;       // (m11, m12, m21, m22)
  Vec column_leaf;  // [c] for X = c r^T
  Vec row_leaf;     // [r]
};

Mat ein11_form();
Ein11Point ein11_model(const Eigen::Matrix2d& x, double eps = kEps);
// Matrix of X -> A X B^{-1} on flattened coordinates.
Mat ein11_action(const Eigen::Matrix2d& a, const Eigen::Matrix2d& b);

}  // namespace ein
