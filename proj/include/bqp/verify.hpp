#pragma once

// Optimality certificates: given (x, lambda), check that lambda is dual
// feasible, Q(lambda) x = c, x is boolean and the duality gap vanishes. Also
// the block-matrix form of dual feasibility, [[Q(lambda), c], [c^T, t]] >= 0.

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <string>

#include "bqp/errors.hpp"
#include "bqp/generator.hpp"
#include "bqp/model.hpp"
#include "bqp/numerics.hpp"

namespace bqp {

/// Counts of positive, negative and zero eigenvalues.
struct Inertia {
  Index positive = 0;
  Index negative = 0;
  Index zero = 0;

  std::string ToString() const {
    return "(" + std::to_string(positive) + "," + std::to_string(negative) +
           "," + std::to_string(zero) + ")";
  }
};

/// Inertia from the pivots of a pivoted LDL^T (Sylvester's law). Pivots
/// within 1e-12 (1 + ||A||_inf) of zero count as zero.
template <typename Scalar>
Inertia inertia(const SymMatrix<Scalar>& a) {
  using std::abs;
  Eigen::LDLT<Matrix<Scalar>> ldlt(a.matrix());
  const Scalar tol = Scalar(1e-12) * (Scalar(1) + inf_norm(a.matrix()));
  Inertia result;
  for (Index i = 0; i < a.n(); ++i) {
    const Scalar d = ldlt.vectorD()(i);
    if (abs(d) <= tol) {
      ++result.zero;
    } else if (d > Scalar(0)) {
      ++result.positive;
    } else {
      ++result.negative;
    }
  }
  return result;
}

template <typename Scalar>
struct VerifyReport {
  bool pd_ok = false;
  bool stationary_ok = false;
  bool boolean_ok = false;
  /// f(x) - g(lambda); NaN when lambda is infeasible.
  Scalar gap{};
  bool gap_ok = false;
  /// Signature of Q, informational only.
  Inertia q_inertia;
  bool overall = false;
};

/// Checks a candidate with real entries. boolean_ok demands every entry be
/// exactly -1 or +1.
template <typename Scalar>
VerifyReport<Scalar> verify_point(const BqpInstance<Scalar>& inst,
                                  const Vector<Scalar>& x,
                                  const Multipliers<Scalar>& lambda,
                                  Scalar tol = Scalar(1e-6)) {
  using std::abs;
  internal::CheckSameSize(inst.n(), x.size(), "verify");
  internal::CheckSameSize(inst.n(), lambda.n(), "verify");
  if (!(tol > Scalar(0))) throw std::invalid_argument("tol must be positive");

  VerifyReport<Scalar> r;
  r.q_inertia = inertia(inst.q());

  const SymMatrix<Scalar> shifted = q_of_lambda(inst.q(), lambda);
  const DualState<Scalar> state = is_dual_feasible(inst, lambda);
  r.pd_ok = state.feasible();

  const Vector<Scalar> residual = shifted.matrix() * x - inst.c();
  const Scalar c_norm = inst.c().cwiseAbs().maxCoeff();
  r.stationary_ok =
      residual.cwiseAbs().maxCoeff() <= tol * (Scalar(1) + c_norm);

  r.boolean_ok = (x.array() == Scalar(1) || x.array() == Scalar(-1)).all();

  const Scalar f = quadratic_objective(inst, x);
  if (r.pd_ok) {
    r.gap = f - dual_value(state, inst);
    r.gap_ok = abs(r.gap) <= tol * (Scalar(1) + abs(f));
  } else {
    r.gap = std::numeric_limits<Scalar>::quiet_NaN();
    r.gap_ok = false;
  }
  r.overall = r.pd_ok && r.stationary_ok && r.boolean_ok && r.gap_ok;
  return r;
}

template <typename Scalar>
VerifyReport<Scalar> verify_certificate(const BqpInstance<Scalar>& inst,
                                        const Certificate<Scalar>& cert,
                                        Scalar tol = Scalar(1e-6)) {
  internal::CheckSameSize(inst.n(), cert.x.n(), "verify_certificate");
  return verify_point(inst, cert.x.template as<Scalar>(), cert.lambda, tol);
}

/// f(x) - g(lambda). Throws Infeasible when lambda is off the cone.
template <typename Scalar>
Scalar duality_gap(const BqpInstance<Scalar>& inst, const SignVector& x,
                   const Multipliers<Scalar>& lambda) {
  const DualState<Scalar> state = is_dual_feasible(inst, lambda);
  return objective_value(inst, x) - dual_value(state, inst);
}

/// [[Q(lambda), c], [c^T, t]].
template <typename Scalar>
class SchurBlock {
 public:
  SchurBlock(const BqpInstance<Scalar>& inst, const Multipliers<Scalar>& lambda,
             Scalar t)
      : t_(t), block_(Build(inst, lambda, t)) {}

  Scalar t() const { return t_; }
  const SymMatrix<Scalar>& block() const { return block_; }

 private:
  static SymMatrix<Scalar> Build(const BqpInstance<Scalar>& inst,
                                 const Multipliers<Scalar>& lambda, Scalar t) {
    const Index n = inst.n();
    Matrix<Scalar> m(n + 1, n + 1);
    m.topLeftCorner(n, n) = q_of_lambda(inst.q(), lambda).matrix();
    m.col(n).head(n) = inst.c();
    m.row(n).head(n) = inst.c().transpose();
    m(n, n) = t;
    return SymMatrix<Scalar>(std::move(m));
  }

  Scalar t_;
  SymMatrix<Scalar> block_;
};

template <typename Scalar>
struct SchurCheck {
  bool is_psd = false;
  Scalar min_eig{};
};

/// PSD test of the Schur block through its smallest eigenvalue, with the
/// min_eigenvalue tolerance 1e-8 (1 + ||block||_inf).
template <typename Scalar>
SchurCheck<Scalar> schur_block_psd(const BqpInstance<Scalar>& inst,
                                   const Multipliers<Scalar>& lambda,
                                   Scalar t) {
  internal::CheckSameSize(inst.n(), lambda.n(), "schur_block_psd");
  const SchurBlock<Scalar> block(inst, lambda, t);
  const Scalar min_eig = min_eigenvalue(block.block());
  return {min_eig >= -eigenvalue_tolerance(block.block()), min_eig};
}

/// Smallest t making the Schur block PSD: c^T Q(lambda)^{-1} c.
template <typename Scalar>
Scalar optimal_schur_t(const BqpInstance<Scalar>& inst,
                       const Multipliers<Scalar>& lambda) {
  const DualState<Scalar> state = is_dual_feasible(inst, lambda);
  return inst.c().dot(state.RequireX());
}

}  // namespace bqp
