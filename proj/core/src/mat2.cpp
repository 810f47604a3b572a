#include "eigenshrink/mat2.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "eigenshrink/errors.hpp"

namespace eigenshrink {

SymMat2 mat_A(double ell) {
  if (!(ell >= 1.0)) {
    throw std::domain_error("mat_A: ell must be >= 1, got " +
                            std::to_string(ell));
  }
  return {ell, 0.0, 1.0};
}

SymMat2 mat_B(double eta, double c, double s) {
  if (!(eta >= 1.0)) {
    throw std::domain_error("mat_B: eta must be >= 1, got " +
                            std::to_string(eta));
  }
  const double unit = c * c + s * s;
  if (std::abs(unit - 1.0) > 1e-12) {
    throw std::domain_error("mat_B: c^2 + s^2 must equal 1, got " +
                            std::to_string(unit));
  }
  const double t = eta - 1.0;
  return {1.0 + t * c * c, t * c * s, 1.0 + t * s * s};
}

EigPair eigvals2(const SymMat2& m) {
  const double d = m.a11 - m.a22;
  const double root = std::sqrt(d * d + 4.0 * m.a12 * m.a12);
  const double t = m.trace();
  return {(t + root) / 2.0, (t - root) / 2.0};
}

EigPair eigvals2(const Mat2& m) {
  const double t = m.trace();
  double disc = t * t - 4.0 * m.det();
  if (disc < 0.0) {
    const double scale = std::max(1.0, t * t);
    if (disc < -1e-12 * scale) {
      throw numeric_error("eigvals2: complex eigenvalue pair, disc=" +
                          std::to_string(disc));
    }
    disc = 0.0;
  }
  const double root = std::sqrt(disc);
  return {(t + root) / 2.0, (t - root) / 2.0};
}

EigPair singvals2(const Mat2& m) {
  // sigma^2 are eigenvalues of M'M: trace = ||M||_F^2, det = det(M)^2.
  const double t = m.frob2();
  const double d = m.det();
  double disc = t * t - 4.0 * d * d;
  if (disc < 0.0) disc = 0.0;  // roundoff only; t^2 >= 4 det^2 analytically
  const double hi2 = (t + std::sqrt(disc)) / 2.0;
  const double hi = std::sqrt(hi2 > 0.0 ? hi2 : 0.0);
  // sigma_+ sigma_- = |det|; dividing avoids the cancellation in t - sqrt().
  const double lo = hi > 0.0 ? std::abs(d) / hi : 0.0;
  return {hi, lo};
}

bool is_pd(const SymMat2& m) { return m.a11 > 0.0 && m.det() > 0.0; }

SymMat2 inverse(const SymMat2& m) {
  const double d = m.det();
  if (!is_pd(m)) {
    throw std::domain_error("inverse: matrix is not positive definite");
  }
  return {m.a22 / d, -m.a12 / d, m.a11 / d};
}

SymMat2 sqrt_pd(const SymMat2& m) {
  if (!is_pd(m)) {
    throw std::domain_error("sqrt_pd: matrix is not positive definite");
  }
  // sqrt(M) = (M + sqrt(det) I) / sqrt(trace + 2 sqrt(det)) for PD 2x2.
  const double sd = std::sqrt(m.det());
  const double denom = std::sqrt(m.trace() + 2.0 * sd);
  return {(m.a11 + sd) / denom, m.a12 / denom, (m.a22 + sd) / denom};
}

SymMat2 log_pd(const SymMat2& m) {
  if (!is_pd(m)) {
    throw std::domain_error("log_pd: matrix is not positive definite");
  }
  const EigPair w = eigvals2(m);
  const double f_hi = std::log(w.hi);
  const double f_lo = std::log(w.lo);
  if (w.hi - w.lo <= 1e-14 * std::max(1.0, w.hi)) {
    const double f = (f_hi + f_lo) / 2.0;
    return {f, 0.0, f};
  }
  // f(M) = alpha M + beta I with alpha, beta interpolating the eigenvalues.
  const double alpha = (f_hi - f_lo) / (w.hi - w.lo);
  const double beta = (f_lo * w.hi - f_hi * w.lo) / (w.hi - w.lo);
  return {alpha * m.a11 + beta, alpha * m.a12, alpha * m.a22 + beta};
}

Mat2 mul(const SymMat2& a, const SymMat2& b) {
  return {a.a11 * b.a11 + a.a12 * b.a12, a.a11 * b.a12 + a.a12 * b.a22,
          a.a12 * b.a11 + a.a22 * b.a12, a.a12 * b.a12 + a.a22 * b.a22};
}

}  // namespace eigenshrink
