#include "eigenshrink/loss_kernel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "eigenshrink/errors.hpp"

namespace eigenshrink {

namespace {

void require_pd2(const SymMat2& m, const char* who) {
  if (!is_pd(m)) {
    throw std::domain_error(std::string(who) +
                            ": argument is not positive definite");
  }
}

double stein2(const SymMat2& a, const SymMat2& b) {
  const Mat2 aib = mul(inverse(a), b);
  return 0.5 * (aib.trace() - 2.0 - std::log(b.det() / a.det()));
}

double affinity2(const SymMat2& a, const SymMat2& b) {
  const SymMat2 mid{(a.a11 + b.a11) / 2.0, (a.a12 + b.a12) / 2.0,
                    (a.a22 + b.a22) / 2.0};
  return 0.5 * std::log(mid.det() / std::sqrt(a.det() * b.det()));
}

double frechet2(const SymMat2& a, const SymMat2& b) {
  const Mat2 cross = mul(sqrt_pd(a), sqrt_pd(b));
  return a.trace() + b.trace() - 2.0 * cross.trace();
}

double norm_of(Norm norm, const EigPair& vals_abs) {
  switch (norm) {
    case Norm::frobenius:
      return vals_abs.hi * vals_abs.hi + vals_abs.lo * vals_abs.lo;
    case Norm::op:
      return vals_abs.hi;
    case Norm::nuclear:
      return vals_abs.hi + vals_abs.lo;
  }
  return 0.0;
}

EigPair abs_eigs(const SymMat2& m) {
  const EigPair w = eigvals2(m);
  const double x = std::abs(w.hi);
  const double y = std::abs(w.lo);
  return x >= y ? EigPair{x, y} : EigPair{y, x};
}

}  // namespace

Mat2 pivot_eval(int pivot, const SymMat2& a, const SymMat2& b) {
  require_pd2(a, "pivot_eval");
  require_pd2(b, "pivot_eval");
  switch (pivot) {
    case 1:
      return {a.a11 - b.a11, a.a12 - b.a12, a.a12 - b.a12, a.a22 - b.a22};
    case 2: {
      const SymMat2 ai = inverse(a), bi = inverse(b);
      return {ai.a11 - bi.a11, ai.a12 - bi.a12, ai.a12 - bi.a12,
              ai.a22 - bi.a22};
    }
    case 3: {
      Mat2 m = mul(inverse(a), b);
      m.a11 -= 1.0;
      m.a22 -= 1.0;
      return m;
    }
    case 4: {
      Mat2 m = mul(inverse(b), a);
      m.a11 -= 1.0;
      m.a22 -= 1.0;
      return m;
    }
    case 5: {
      const Mat2 x = mul(inverse(a), b);
      const Mat2 y = mul(inverse(b), a);
      return {x.a11 + y.a11 - 2.0, x.a12 + y.a12, x.a21 + y.a21,
              x.a22 + y.a22 - 2.0};
    }
    case 6: {
      const SymMat2 ais = inverse(sqrt_pd(a));
      // ais * b * ais, symmetric by construction.
      const Mat2 t = mul(ais, b);
      return {t.a11 * ais.a11 + t.a12 * ais.a12 - 1.0,
              t.a11 * ais.a12 + t.a12 * ais.a22,
              t.a21 * ais.a11 + t.a22 * ais.a12,
              t.a21 * ais.a12 + t.a22 * ais.a22 - 1.0};
    }
    case 7: {
      const SymMat2 ais = inverse(sqrt_pd(a));
      const Mat2 t = mul(ais, b);
      const SymMat2 m{t.a11 * ais.a11 + t.a12 * ais.a12,
                      t.a11 * ais.a12 + t.a12 * ais.a22,
                      t.a21 * ais.a12 + t.a22 * ais.a22};
      return as_mat2(log_pd(m));
    }
    default:
      throw std::invalid_argument("pivot must be in 1..7");
  }
}

double eval_loss(LossId loss, const SymMat2& a, const SymMat2& b) {
  require_pd2(a, "eval_loss");
  require_pd2(b, "eval_loss");
  if (loss.is_statistical()) {
    switch (loss.stat()) {
      case Statistical::stein: return stein2(a, b);
      case Statistical::entropy: return stein2(b, a);
      case Statistical::divergence: return stein2(a, b) + stein2(b, a);
      case Statistical::affinity: return affinity2(a, b);
      case Statistical::frechet: return frechet2(a, b);
    }
  }
  const int pivot = loss.pivot();
  const Norm norm = loss.norm();
  switch (pivot) {
    case 1: {
      const SymMat2 d{a.a11 - b.a11, a.a12 - b.a12, a.a22 - b.a22};
      return norm_of(norm, abs_eigs(d));
    }
    case 2: {
      const SymMat2 ai = inverse(a), bi = inverse(b);
      const SymMat2 d{ai.a11 - bi.a11, ai.a12 - bi.a12, ai.a22 - bi.a22};
      return norm_of(norm, abs_eigs(d));
    }
    case 3:
    case 4:
    case 5: {
      const Mat2 d = pivot_eval(pivot, a, b);
      if (norm == Norm::frobenius) return d.frob2();
      return norm_of(norm, singvals2(d));
    }
    case 6: {
      const Mat2 raw = pivot_eval(6, a, b);
      const SymMat2 d{raw.a11, (raw.a12 + raw.a21) / 2.0, raw.a22};
      return norm_of(norm, abs_eigs(d));
    }
    case 7: {
      const Mat2 raw = pivot_eval(6, a, b);  // A^-1/2 B A^-1/2 - I
      const SymMat2 m{raw.a11 + 1.0, (raw.a12 + raw.a21) / 2.0, raw.a22 + 1.0};
      const EigPair w = eigvals2(m);
      if (!(w.lo > 0.0)) {
        throw numeric_error("eval_loss: nonpositive eigenvalue in log pivot");
      }
      const double x = std::abs(std::log(w.hi));
      const double y = std::abs(std::log(w.lo));
      return norm_of(norm, x >= y ? EigPair{x, y} : EigPair{y, x});
    }
  }
  throw std::logic_error("unreachable loss dispatch");
}

// ---------------------------------------------------------------------------
// General p x p route.

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct EigDecomp {
  VectorXd values;  // ascending
  MatrixXd vectors;
};

EigDecomp decompose_pd(const MatrixXd& m, const char* who) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(m);
  if (es.info() != Eigen::Success) {
    throw numeric_error(std::string(who) + ": eigensolver failed");
  }
  VectorXd w = es.eigenvalues();
  const double top = w(w.size() - 1);
  if (!(top > 0.0)) {
    throw std::domain_error(std::string(who) +
                            ": argument is not positive definite");
  }
  for (int i = 0; i < w.size(); ++i) {
    if (w(i) < 1e-30) {
      if (1e-30 - w(i) > 1e-8 * top) {
        throw std::domain_error(std::string(who) +
                                ": argument is not positive definite");
      }
      w(i) = 1e-30;
    }
  }
  return {std::move(w), es.eigenvectors()};
}

MatrixXd apply_fn(const EigDecomp& d, double (*fn)(double)) {
  VectorXd w(d.values.size());
  for (int i = 0; i < w.size(); ++i) w(i) = fn(d.values(i));
  return d.vectors * w.asDiagonal() * d.vectors.transpose();
}

void check_pair(const MatrixXd& a, const MatrixXd& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw std::domain_error("eval_loss: dimension mismatch");
  }
}

VectorXd abs_eigenvalues(const MatrixXd& sym) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(sym,
                                             Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw numeric_error("eval_loss: eigensolver failed");
  }
  return es.eigenvalues().cwiseAbs();
}

VectorXd singular_values(const MatrixXd& m) {
  // Singular values via the symmetric Gram matrix; adequate at the
  // tolerances used here and much cheaper than a full SVD.
  const MatrixXd g = m.transpose() * m;
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(g, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw numeric_error("eval_loss: eigensolver failed");
  }
  return es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
}

double norm_from_values(Norm norm, const VectorXd& vals) {
  switch (norm) {
    case Norm::frobenius: return vals.squaredNorm();
    case Norm::op: return vals.maxCoeff();
    case Norm::nuclear: return vals.sum();
  }
  return 0.0;
}

}  // namespace

MatrixXd pivot_eval(int pivot, const MatrixXd& a, const MatrixXd& b) {
  check_pair(a, b);
  const int p = static_cast<int>(a.rows());
  const MatrixXd id = MatrixXd::Identity(p, p);
  const EigDecomp da = decompose_pd(a, "pivot_eval");
  switch (pivot) {
    case 1:
      decompose_pd(b, "pivot_eval");  // PD validation
      return a - b;
    case 2: {
      const EigDecomp db = decompose_pd(b, "pivot_eval");
      return apply_fn(da, [](double x) { return 1.0 / x; }) -
             apply_fn(db, [](double x) { return 1.0 / x; });
    }
    case 3: {
      decompose_pd(b, "pivot_eval");
      return apply_fn(da, [](double x) { return 1.0 / x; }) * b - id;
    }
    case 4: {
      const EigDecomp db = decompose_pd(b, "pivot_eval");
      return apply_fn(db, [](double x) { return 1.0 / x; }) * a - id;
    }
    case 5: {
      const EigDecomp db = decompose_pd(b, "pivot_eval");
      return apply_fn(da, [](double x) { return 1.0 / x; }) * b +
             apply_fn(db, [](double x) { return 1.0 / x; }) * a - 2.0 * id;
    }
    case 6: {
      decompose_pd(b, "pivot_eval");
      const MatrixXd ais =
          apply_fn(da, [](double x) { return 1.0 / std::sqrt(x); });
      return ais * b * ais - id;
    }
    case 7: {
      decompose_pd(b, "pivot_eval");
      const MatrixXd ais =
          apply_fn(da, [](double x) { return 1.0 / std::sqrt(x); });
      const MatrixXd m = ais * b * ais;
      const EigDecomp dm = decompose_pd(m, "pivot_eval");
      return apply_fn(dm, [](double x) { return std::log(x); });
    }
    default:
      throw std::invalid_argument("pivot must be in 1..7");
  }
}

double eval_loss(LossId loss, const MatrixXd& a, const MatrixXd& b) {
  check_pair(a, b);
  const int p = static_cast<int>(a.rows());
  if (loss.is_statistical()) {
    const EigDecomp da = decompose_pd(a, "eval_loss");
    const EigDecomp db = decompose_pd(b, "eval_loss");
    const double logdet_a = da.values.array().log().sum();
    const double logdet_b = db.values.array().log().sum();
    switch (loss.stat()) {
      case Statistical::stein: {
        const MatrixXd ai = apply_fn(da, [](double x) { return 1.0 / x; });
        return 0.5 * ((ai * b).trace() - p - (logdet_b - logdet_a));
      }
      case Statistical::entropy: {
        const MatrixXd bi = apply_fn(db, [](double x) { return 1.0 / x; });
        return 0.5 * ((bi * a).trace() - p - (logdet_a - logdet_b));
      }
      case Statistical::divergence: {
        const MatrixXd ai = apply_fn(da, [](double x) { return 1.0 / x; });
        const MatrixXd bi = apply_fn(db, [](double x) { return 1.0 / x; });
        return 0.5 * ((ai * b).trace() + (bi * a).trace() - 2.0 * p);
      }
      case Statistical::affinity: {
        const MatrixXd mid = (a + b) / 2.0;
        const EigDecomp dm = decompose_pd(mid, "eval_loss");
        const double logdet_mid = dm.values.array().log().sum();
        return 0.5 * (logdet_mid - 0.5 * (logdet_a + logdet_b));
      }
      case Statistical::frechet: {
        const MatrixXd sa = apply_fn(da, [](double x) { return std::sqrt(x); });
        const MatrixXd sb = apply_fn(db, [](double x) { return std::sqrt(x); });
        return a.trace() + b.trace() - 2.0 * (sa * sb).trace();
      }
    }
  }
  const int pivot = loss.pivot();
  const Norm norm = loss.norm();
  const MatrixXd d = pivot_eval(pivot, a, b);
  if (pivot == 3 || pivot == 4 || pivot == 5) {
    if (norm == Norm::frobenius) return d.squaredNorm();
    return norm_from_values(norm, singular_values(d));
  }
  if (norm == Norm::frobenius) return d.squaredNorm();
  return norm_from_values(norm, abs_eigenvalues(d));
}

}  // namespace eigenshrink
