#pragma once

// Evaluation of the 26 losses on a pair of positive-definite matrices.
//
// Two routes are provided. The 2x2 route works entirely in closed form and
// is the one the shrinker optimizer drives millions of times. The general
// route accepts p x p symmetric positive-definite matrices and computes
// matrix functions by eigendecomposition; the simulation harness uses it to
// score full covariance estimates.
//
// Conventions, stated once: Frobenius-family values are SQUARED Frobenius
// norms of the pivot; Operator and Nuclear families are unsquared norms.
// Stein, Entropy and Divergence carry a factor 1/2. Non-symmetric pivots
// (A^-1 B - I, B^-1 A - I, and A^-1 B + B^-1 A - 2I) contribute through
// their singular values; Frobenius on them is trace(D'D).

#include <Eigen/Dense>

#include "eigenshrink/loss.hpp"
#include "eigenshrink/mat2.hpp"

namespace eigenshrink {

// Closed-form 2x2 evaluation. Throws std::domain_error unless both
// arguments are positive definite.
double eval_loss(LossId loss, const SymMat2& a, const SymMat2& b);

// General evaluation by symmetric eigendecomposition. Throws
// std::domain_error for non-PD input or a dimension mismatch, and
// numeric_error when an eigenvalue clamp exceeds 1e-8 relative.
double eval_loss(LossId loss, const Eigen::MatrixXd& a,
                 const Eigen::MatrixXd& b);

// The pivot matrix Delta_k(A, B), k in 1..7. Pivots 1, 2, 6, 7 are
// symmetric; 3, 4 and 5 are generally not.
Mat2 pivot_eval(int pivot, const SymMat2& a, const SymMat2& b);
Eigen::MatrixXd pivot_eval(int pivot, const Eigen::MatrixXd& a,
                           const Eigen::MatrixXd& b);

}  // namespace eigenshrink
