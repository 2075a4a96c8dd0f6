#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace ein {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// Default tolerance for null and degeneracy tests.
inline constexpr double kEps = 1e-9;

// Raised when a geometric precondition or invariant fails.
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Vec vec(std::initializer_list<double> xs);

// Unit Euclidean norm, first coordinate with |x| > tol made positive.
Vec normalize_projective(const Vec& v, double tol = 1e-12);

// min(|a-b|, |a+b|) after normalizing both to unit length.
double projective_distance(const Vec& a, const Vec& b);

int numeric_rank(const Mat& m, double eps);

// Orthonormal basis (columns) of the column space / null space.
Mat column_basis(const Mat& m, double eps);
Mat null_space(const Mat& m, double eps);

// Largest principal angle sine between the column spans of a and b.
double subspace_distance(const Mat& a, const Mat& b);

// Euclidean distance from the line spanned by v to the column span of basis.
double line_to_subspace_distance(const Vec& v, const Mat& basis);

// Orthonormal basis of the intersection of two column spans.
Mat subspace_intersection(const Mat& a, const Mat& b, double eps);

bool approx_equal(const Mat& a, const Mat& b, double tol);

}  // namespace ein
