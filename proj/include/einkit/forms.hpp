#pragma once

#include "einkit/linalg.hpp"

#include <string>

namespace ein {

// Matrix conventions for R^{p,q}.
//   Diagonal            Id_p + -Id_q
//   CartanBlocks        Id_{p-q} + q copies of (-1/2) antidiag(1,1)
//   LastPairHyperbolic  Id_{p-1} + -Id_{q-1} + (-1/2) antidiag(1,1)
//   Antidiagonal        ones on the antidiagonal (p - q in {0, 1})
enum class Convention { Diagonal, CartanBlocks, LastPairHyperbolic, Antidiagonal };

struct FormSpec {
  int p = 0;
  int q = 0;
  Convention convention = Convention::Diagonal;

  int dim() const { return p + q; }
  bool operator==(const FormSpec&) const = default;
};

std::string convention_name(Convention c);
Convention parse_convention(const std::string& name);

// Throws std::invalid_argument for unsupported (p, q, convention).
Mat form_matrix(const FormSpec& spec);

double inner(const Vec& u, const Vec& v, const FormSpec& spec);
double quad(const Vec& v, const FormSpec& spec);

// D with D^T (Id_p + -Id_q) D = form_matrix(spec); maps convention
// coordinates to diagonal coordinates (positive directions first).
Mat to_diagonal(const FormSpec& spec);

// M with x_to = M x_from carrying one convention's form to the other's;
// both specs must have the same (p, q).
Mat intertwiner(const FormSpec& from, const FormSpec& to);

enum class CausalTag { Timelike, Lightlike, Spacelike, Zero };

struct CausalClass {
  CausalTag tag;
  bool causal;  // <v,v> <= eps |v|^2
};

std::string causal_name(CausalTag t);

CausalClass classify_vector(const Vec& v, const FormSpec& spec, double eps = kEps);

// Columns of basis span the subspace.
struct Subspace {
  Mat basis;
  FormSpec ambient;

  int dim() const { return static_cast<int>(basis.cols()); }
};

struct Signature {
  int p = 0;
  int q = 0;
  int r = 0;
  bool operator==(const Signature&) const = default;
};

Mat gram(const Mat& basis, const FormSpec& spec);

Signature signature(const Subspace& s, double eps = kEps);

Subspace orth_complement(const Subspace& s, double eps = kEps);

// Radical S cap S^perp of the restricted form.
Subspace radical(const Subspace& s, double eps = kEps);

}  // namespace ein
