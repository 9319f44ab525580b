#pragma once

// Problem data for min { 1/2 x^T Q x - c^T x : x in {-1,1}^n } and the
// Lagrangian dual built from the constraints 1/2 (x_i^2 - 1) = 0.

#include <Eigen/Dense>

#include <cmath>
#include <optional>
#include <string>
#include <utility>

#include "bqp/errors.hpp"
#include "bqp/numerics.hpp"

namespace bqp {

namespace internal {

inline void CheckSameSize(Index expected, Index got, const char* what) {
  if (expected != got) {
    throw DimensionMismatch(std::string(what) + ": expected dimension " +
                            std::to_string(expected) + ", got " +
                            std::to_string(got));
  }
}

}  // namespace internal

template <typename Scalar>
class BqpInstance {
 public:
  BqpInstance(SymMatrix<Scalar> q, Vector<Scalar> c)
      : q_(std::move(q)), c_(std::move(c)) {
    internal::CheckSameSize(q_.n(), c_.size(), "BqpInstance");
  }

  Index n() const { return q_.n(); }
  const SymMatrix<Scalar>& q() const { return q_; }
  const Vector<Scalar>& c() const { return c_; }

  /// Generated instances always have c != 0. Loaded ones may not; callers
  /// can surface this as a warning.
  bool has_zero_c() const { return c_.isZero(0); }

  friend bool operator==(const BqpInstance& a, const BqpInstance& b) {
    return a.q_ == b.q_ && a.c_ == b.c_;
  }

 private:
  SymMatrix<Scalar> q_;
  Vector<Scalar> c_;
};

/// A point of {-1,1}^n.
class SignVector {
 public:
  explicit SignVector(Eigen::VectorXi entries) : entries_(std::move(entries)) {
    for (Index i = 0; i < entries_.size(); ++i) {
      if (entries_(i) != 1 && entries_(i) != -1) {
        throw std::invalid_argument("sign vector entry " + std::to_string(i) +
                                    " is not -1 or 1");
      }
    }
  }

  static SignVector Constant(Index n, int sign) {
    return SignVector(Eigen::VectorXi::Constant(n, sign));
  }

  Index n() const { return entries_.size(); }
  int operator()(Index i) const { return entries_(i); }
  const Eigen::VectorXi& entries() const { return entries_; }

  template <typename Scalar>
  Vector<Scalar> as() const {
    return entries_.cast<Scalar>();
  }

  SignVector Flipped(Index i) const {
    Eigen::VectorXi e = entries_;
    e(i) = -e(i);
    return SignVector(std::move(e));
  }

  friend bool operator==(const SignVector& a, const SignVector& b) {
    return a.entries_.size() == b.entries_.size() && a.entries_ == b.entries_;
  }

 private:
  Eigen::VectorXi entries_;
};

/// One multiplier per constraint. No sign restriction; dual feasibility is
/// the separate positive-definiteness condition.
template <typename Scalar>
class Multipliers {
 public:
  explicit Multipliers(Vector<Scalar> values) : values_(std::move(values)) {
    if (!values_.allFinite()) {
      throw std::invalid_argument("multipliers must be finite");
    }
  }

  static Multipliers Constant(Index n, Scalar v) {
    return Multipliers(Vector<Scalar>::Constant(n, v));
  }

  Index n() const { return values_.size(); }
  Scalar operator()(Index i) const { return values_(i); }
  const Vector<Scalar>& values() const { return values_; }

  friend bool operator==(const Multipliers& a, const Multipliers& b) {
    return a.values_.size() == b.values_.size() && a.values_ == b.values_;
  }

 private:
  Vector<Scalar> values_;
};

/// A multiplier vector together with the factorization of Q(lambda) and the
/// solution of Q(lambda) x = c when lambda is dual feasible. Gradient,
/// Hessian and dual value all reuse the same solve.
template <typename Scalar>
class DualState {
 public:
  static DualState Infeasible(Multipliers<Scalar> lambda) {
    return DualState(std::move(lambda), std::nullopt, std::nullopt);
  }
  static DualState Feasible(Multipliers<Scalar> lambda,
                            SpdFactor<Scalar> factor, Vector<Scalar> x) {
    return DualState(std::move(lambda), std::move(factor), std::move(x));
  }

  const Multipliers<Scalar>& lambda() const { return lambda_; }
  bool feasible() const { return factor_.has_value(); }
  const std::optional<SpdFactor<Scalar>>& factor() const { return factor_; }
  const std::optional<Vector<Scalar>>& x_of_lambda() const { return x_; }

  const SpdFactor<Scalar>& RequireFactor() const {
    if (!factor_) throw bqp::Infeasible("lambda is not dual feasible");
    return *factor_;
  }
  const Vector<Scalar>& RequireX() const {
    if (!x_) throw bqp::Infeasible("lambda is not dual feasible");
    return *x_;
  }

 private:
  DualState(Multipliers<Scalar> lambda, std::optional<SpdFactor<Scalar>> f,
            std::optional<Vector<Scalar>> x)
      : lambda_(std::move(lambda)), factor_(std::move(f)), x_(std::move(x)) {}

  Multipliers<Scalar> lambda_;
  std::optional<SpdFactor<Scalar>> factor_;
  std::optional<Vector<Scalar>> x_;
};

/// 1/2 x^T Q x - c^T x for an arbitrary real x.
template <typename Scalar>
Scalar quadratic_objective(const BqpInstance<Scalar>& inst,
                           const Vector<Scalar>& x) {
  internal::CheckSameSize(inst.n(), x.size(), "objective");
  return Scalar(0.5) * x.dot(inst.q().matrix() * x) - inst.c().dot(x);
}

template <typename Scalar>
Scalar objective_value(const BqpInstance<Scalar>& inst, const SignVector& x) {
  internal::CheckSameSize(inst.n(), x.n(), "objective_value");
  return quadratic_objective(inst, x.as<Scalar>());
}

/// Q + diag(lambda).
template <typename Scalar>
SymMatrix<Scalar> q_of_lambda(const SymMatrix<Scalar>& q,
                              const Multipliers<Scalar>& lambda) {
  internal::CheckSameSize(q.n(), lambda.n(), "q_of_lambda");
  Matrix<Scalar> shifted = q.matrix();
  shifted.diagonal() += lambda.values();
  return SymMatrix<Scalar>(std::move(shifted));
}

/// 1/2 x^T Q(lambda) x - c^T x - 1/2 sum(lambda).
template <typename Scalar>
Scalar lagrangian_value(const BqpInstance<Scalar>& inst,
                        const Vector<Scalar>& x,
                        const Multipliers<Scalar>& lambda) {
  internal::CheckSameSize(inst.n(), x.size(), "lagrangian_value");
  internal::CheckSameSize(inst.n(), lambda.n(), "lagrangian_value");
  const Matrix<Scalar>& q = inst.q().matrix();
  const Vector<Scalar>& lam = lambda.values();
  return Scalar(0.5) * x.dot(q * x) - inst.c().dot(x) +
         Scalar(0.5) * (lam.array() * (x.array().square() - Scalar(1))).sum();
}

/// Factors Q(lambda); on success also solves Q(lambda) x = c.
template <typename Scalar>
DualState<Scalar> is_dual_feasible(const BqpInstance<Scalar>& inst,
                                   const Multipliers<Scalar>& lambda) {
  auto factor = try_spd_factorize(q_of_lambda(inst.q(), lambda));
  if (!factor) return DualState<Scalar>::Infeasible(lambda);
  Vector<Scalar> x = spd_solve(*factor, inst.c());
  return DualState<Scalar>::Feasible(lambda, std::move(*factor), std::move(x));
}

/// g(lambda) = -1/2 c^T Q(lambda)^{-1} c - 1/2 sum(lambda), evaluated as
/// -1/2 c^T x(lambda) - 1/2 sum(lambda). Throws Infeasible off the cone.
template <typename Scalar>
Scalar dual_value(const DualState<Scalar>& state,
                  const BqpInstance<Scalar>& inst) {
  const Vector<Scalar>& x = state.RequireX();
  internal::CheckSameSize(inst.n(), x.size(), "dual_value");
  return Scalar(-0.5) * inst.c().dot(x) -
         Scalar(0.5) * state.lambda().values().sum();
}

/// dg/dlambda_i = 1/2 (x_i^2 - 1) with x = Q(lambda)^{-1} c.
template <typename Scalar>
Vector<Scalar> dual_gradient(const DualState<Scalar>& state) {
  const Vector<Scalar>& x = state.RequireX();
  return Scalar(0.5) * (x.array().square() - Scalar(1)).matrix();
}

/// H_ij = -x_i [Q(lambda)^{-1}]_ij x_j. Negative semidefinite on the cone.
template <typename Scalar>
SymMatrix<Scalar> dual_hessian(const DualState<Scalar>& state) {
  const SpdFactor<Scalar>& factor = state.RequireFactor();
  const Vector<Scalar>& x = state.RequireX();
  Matrix<Scalar> h = spd_solve(factor, Matrix<Scalar>(x.asDiagonal()));
  h = -(x.asDiagonal() * h);
  return SymMatrix<Scalar>::Symmetrized(h);
}

}  // namespace bqp
