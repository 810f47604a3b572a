#pragma once

// 2x2 matrix arena. Every decomposable loss reduces to evaluations on a pair
// of 2x2 blocks: the population block A(ell) = diag(ell, 1) and the estimate
// block B(eta, c, s). Everything here is closed-form double arithmetic.

namespace eigenshrink {

struct SymMat2 {
  double a11 = 0.0;
  double a12 = 0.0;
  double a22 = 0.0;

  double trace() const { return a11 + a22; }
  double det() const { return a11 * a22 - a12 * a12; }
};

struct Mat2 {
  double a11 = 0.0, a12 = 0.0;
  double a21 = 0.0, a22 = 0.0;

  double trace() const { return a11 + a22; }
  double det() const { return a11 * a22 - a12 * a21; }
  double frob2() const { return a11 * a11 + a12 * a12 + a21 * a21 + a22 * a22; }
};

struct EigPair {
  double hi;
  double lo;
};

// diag(ell, 1); requires ell >= 1.
SymMat2 mat_A(double ell);

// [[1+(eta-1)c^2, (eta-1)cs], [(eta-1)cs, 1+(eta-1)s^2]]; trace eta+1,
// det eta. Requires eta >= 1 and c^2 + s^2 = 1 within 1e-12.
SymMat2 mat_B(double eta, double c, double s);

// Eigenvalues of a symmetric 2x2 matrix, descending. Uses the
// cancellation-free discriminant (a11-a22)^2 + 4 a12^2.
EigPair eigvals2(const SymMat2& m);

// Eigenvalues of a general 2x2 matrix via trace/det. The discriminant is
// clamped to zero when within -1e-12 * scale; a complex pair beyond that
// tolerance raises numeric_error.
EigPair eigvals2(const Mat2& m);

// Singular values of a general 2x2 matrix, descending.
EigPair singvals2(const Mat2& m);

SymMat2 inverse(const SymMat2& m);        // domain_error if not PD
SymMat2 sqrt_pd(const SymMat2& m);        // principal square root of a PD matrix
SymMat2 log_pd(const SymMat2& m);         // matrix log of a PD matrix

inline Mat2 as_mat2(const SymMat2& s) { return {s.a11, s.a12, s.a12, s.a22}; }

Mat2 mul(const SymMat2& a, const SymMat2& b);

bool is_pd(const SymMat2& m);

}  // namespace eigenshrink
