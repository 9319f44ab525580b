#pragma once

// Dense symmetric linear algebra used throughout: a symmetric matrix type,
// a thresholded Cholesky factorization, triangular solves, and a Lanczos
// estimate of the smallest eigenvalue.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <string>
#include <utility>

#include "bqp/errors.hpp"

namespace bqp {

using Index = Eigen::Index;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Max-abs row sum, i.e. the induced infinity norm.
template <typename Derived>
typename Derived::Scalar inf_norm(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  if (a.size() == 0) return Scalar(0);
  return a.cwiseAbs().rowwise().sum().maxCoeff();
}

/// Square matrix whose entries satisfy a(i,j) == a(j,i) bit for bit.
template <typename Scalar>
class SymMatrix {
 public:
  using MatrixType = Matrix<Scalar>;

  /// Throws DimensionMismatch if `a` is empty, not square, or not exactly
  /// symmetric.
  explicit SymMatrix(MatrixType a) : a_(std::move(a)) {
    if (a_.rows() < 1 || a_.rows() != a_.cols()) {
      throw DimensionMismatch("symmetric matrix must be square with n >= 1");
    }
    for (Index j = 0; j < a_.cols(); ++j) {
      for (Index i = j + 1; i < a_.rows(); ++i) {
        if (a_(i, j) != a_(j, i)) {
          throw DimensionMismatch("matrix is not symmetric at (" +
                                  std::to_string(i) + "," + std::to_string(j) +
                                  ")");
        }
      }
    }
  }

  /// Averages `a` with its transpose. For results of floating-point
  /// arithmetic that are symmetric only up to rounding.
  static SymMatrix Symmetrized(const MatrixType& a) {
    if (a.rows() != a.cols()) {
      throw DimensionMismatch("symmetrize: matrix is not square");
    }
    MatrixType s = a;
    for (Index j = 0; j < s.cols(); ++j) {
      for (Index i = j + 1; i < s.rows(); ++i) {
        const Scalar v = (a(i, j) + a(j, i)) / Scalar(2);
        s(i, j) = v;
        s(j, i) = v;
      }
    }
    return SymMatrix(std::move(s));
  }

  static SymMatrix Identity(Index n) {
    return SymMatrix(MatrixType::Identity(n, n));
  }
  static SymMatrix Zero(Index n) { return SymMatrix(MatrixType::Zero(n, n)); }

  Index n() const { return a_.rows(); }
  const MatrixType& matrix() const { return a_; }
  Scalar operator()(Index i, Index j) const { return a_(i, j); }

  friend bool operator==(const SymMatrix& x, const SymMatrix& y) {
    return x.a_.rows() == y.a_.rows() && x.a_ == y.a_;
  }

 private:
  MatrixType a_;
};

/// Lower-triangular Cholesky factor L with L * L^T equal to the source.
template <typename Scalar>
class SpdFactor {
 public:
  explicit SpdFactor(Matrix<Scalar> lower) : lower_(std::move(lower)) {}

  Index n() const { return lower_.rows(); }
  const Matrix<Scalar>& lower() const { return lower_; }

  Matrix<Scalar> Reconstruct() const {
    const auto l = lower_.template triangularView<Eigen::Lower>();
    return l * lower_.transpose();
  }

  /// log det of the factored matrix.
  Scalar LogDeterminant() const {
    return Scalar(2) * lower_.diagonal().array().log().sum();
  }

 private:
  Matrix<Scalar> lower_;
};

namespace internal {

// Left-looking Cholesky. Returns -1 on success, otherwise the index of the
// first pivot that does not exceed the threshold.
template <typename Scalar>
Index CholeskyInPlace(const Matrix<Scalar>& a, Matrix<Scalar>& lower) {
  using std::abs;
  using std::sqrt;
  const Index n = a.rows();
  lower.setZero(n, n);
  const Scalar threshold =
      Scalar(1e-12) * (Scalar(1) + a.diagonal().cwiseAbs().maxCoeff());
  for (Index j = 0; j < n; ++j) {
    Scalar pivot = a(j, j);
    if (j > 0) pivot -= lower.row(j).head(j).squaredNorm();
    if (!(pivot > threshold)) return j;
    const Scalar ljj = sqrt(pivot);
    lower(j, j) = ljj;
    const Index rest = n - j - 1;
    if (rest > 0) {
      auto col = lower.col(j).tail(rest);
      col = a.col(j).tail(rest);
      if (j > 0) {
        col.noalias() -= lower.block(j + 1, 0, rest, j) *
                         lower.row(j).head(j).transpose();
      }
      col /= ljj;
    }
  }
  return -1;
}

}  // namespace internal

/// Factors `a`, or returns std::nullopt when some pivot is not above
/// 1e-12 * (1 + max |a_ii|). Used on hot paths where failure is expected.
template <typename Scalar>
std::optional<SpdFactor<Scalar>> try_spd_factorize(const SymMatrix<Scalar>& a) {
  Matrix<Scalar> lower;
  if (internal::CholeskyInPlace(a.matrix(), lower) >= 0) return std::nullopt;
  return SpdFactor<Scalar>(std::move(lower));
}

/// Throws NotPositiveDefinite carrying the first failing pivot.
template <typename Scalar>
SpdFactor<Scalar> spd_factorize(const SymMatrix<Scalar>& a) {
  Matrix<Scalar> lower;
  const Index failed = internal::CholeskyInPlace(a.matrix(), lower);
  if (failed >= 0) throw NotPositiveDefinite(failed);
  return SpdFactor<Scalar>(std::move(lower));
}

template <typename Scalar, typename Derived>
Matrix<Scalar> spd_solve(const SpdFactor<Scalar>& f,
                         const Eigen::MatrixBase<Derived>& b) {
  if (b.rows() != f.n()) {
    throw DimensionMismatch("spd_solve: right-hand side has " +
                            std::to_string(b.rows()) + " rows, expected " +
                            std::to_string(f.n()));
  }
  Matrix<Scalar> x = b;
  f.lower().template triangularView<Eigen::Lower>().solveInPlace(x);
  f.lower().transpose().template triangularView<Eigen::Upper>().solveInPlace(
      x);
  return x;
}

template <typename Scalar>
Vector<Scalar> spd_solve(const SpdFactor<Scalar>& f, const Vector<Scalar>& b) {
  return spd_solve<Scalar, Vector<Scalar>>(f, b).col(0);
}

/// Inverse of the factored matrix, symmetrized.
template <typename Scalar>
SymMatrix<Scalar> spd_inverse(const SpdFactor<Scalar>& f) {
  return SymMatrix<Scalar>::Symmetrized(
      spd_solve(f, Matrix<Scalar>::Identity(f.n(), f.n())));
}

/// Tolerance attached to min_eigenvalue: 1e-8 * (1 + ||a||_inf).
template <typename Scalar>
Scalar eigenvalue_tolerance(const SymMatrix<Scalar>& a) {
  return Scalar(1e-8) * (Scalar(1) + inf_norm(a.matrix()));
}

/// Smallest eigenvalue by Lanczos with full reorthogonalization.
///
/// The Krylov basis is restarted with a fresh random direction whenever it
/// becomes invariant, so after at most n steps the tridiagonal projection
/// carries the whole spectrum. Iteration stops early once the Ritz residual
/// of the smallest Ritz value drops below 1e-10 * (1 + ||a||_inf). The start
/// vector is drawn from a fixed-seed generator, so results are reproducible.
template <typename Scalar>
Scalar min_eigenvalue(const SymMatrix<Scalar>& a) {
  using std::abs;
  using std::sqrt;
  const Index n = a.n();
  const Matrix<Scalar>& m = a.matrix();
  if (n == 1) return m(0, 0);

  const Scalar norm = inf_norm(m);
  const Scalar conv_tol = Scalar(1e-10) * (Scalar(1) + norm);
  const Scalar breakdown_tol =
      Scalar(64) * Eigen::NumTraits<Scalar>::epsilon() * (Scalar(1) + norm);
  const Index max_iterations = 10 * n;

  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  auto random_direction = [&](Index k, const Matrix<Scalar>& basis) {
    // Orthogonal to the first k basis columns; retried until it is not
    // swallowed by them.
    for (int attempt = 0; attempt < 32; ++attempt) {
      Vector<Scalar> v(n);
      for (Index i = 0; i < n; ++i) v(i) = Scalar(unit(rng));
      for (int pass = 0; pass < 2 && k > 0; ++pass) {
        v.noalias() -= basis.leftCols(k) * (basis.leftCols(k).transpose() * v);
      }
      const Scalar len = v.norm();
      if (len > Scalar(1e-8)) return Vector<Scalar>(v / len);
    }
    throw NoConvergence("min_eigenvalue: could not extend Krylov basis");
  };

  Matrix<Scalar> basis(n, n);
  Vector<Scalar> alpha(n);
  Vector<Scalar> beta = Vector<Scalar>::Zero(n);  // beta(k) couples k and k+1
  basis.col(0) = random_direction(0, basis);

  Scalar ritz_min = m(0, 0);
  Index iterations = 0;
  for (Index k = 0; k < n; ++k) {
    if (++iterations > max_iterations) {
      throw NoConvergence("min_eigenvalue: iteration cap exceeded");
    }
    Vector<Scalar> w = m * basis.col(k);
    alpha(k) = basis.col(k).dot(w);
    for (int pass = 0; pass < 2; ++pass) {
      w.noalias() -= basis.leftCols(k + 1) *
                     (basis.leftCols(k + 1).transpose() * w);
    }
    const Scalar b = w.norm();

    Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> tri;
    tri.computeFromTridiagonal(alpha.head(k + 1), beta.head(k),
                               Eigen::ComputeEigenvectors);
    if (tri.info() != Eigen::Success) {
      throw NoConvergence("min_eigenvalue: tridiagonal eigensolver failed");
    }
    ritz_min = tri.eigenvalues()(0);
    const Scalar residual = b * abs(tri.eigenvectors()(k, 0));

    if (k + 1 == n) break;
    if (b <= breakdown_tol) {
      // Invariant subspace found; its Ritz values are exact but the rest of
      // the spectrum is unexplored.
      beta(k) = Scalar(0);
      basis.col(k + 1) = random_direction(k + 1, basis);
      continue;
    }
    // Only trust early exit once the basis is large enough for the Ritz
    // value to have moved away from its start.
    if (residual <= conv_tol && k >= 2) break;
    beta(k) = b;
    basis.col(k + 1) = w / b;
  }
  return ritz_min;
}

}  // namespace bqp
