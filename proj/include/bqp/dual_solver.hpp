#pragma once

// Damped Newton ascent on the concave dual function over the open cone
// { lambda : Q + diag(lambda) > 0 }, followed by primal recovery
// x = Q(lambda)^{-1} c and rounding to signs.

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bqp/errors.hpp"
#include "bqp/model.hpp"
#include "bqp/numerics.hpp"

namespace bqp {

struct SolveOptions {
  double grad_tol = 1e-8;
  int max_iter = 100;
  double backtrack_factor = 0.5;
  double armijo_coeff = 1e-4;
  double sign_tol = 1e-4;

  void Validate() const {
    if (!(grad_tol > 0.0)) throw std::invalid_argument("grad_tol must be > 0");
    if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
    if (!(backtrack_factor > 0.0 && backtrack_factor < 1.0)) {
      throw std::invalid_argument("backtrack_factor must lie in (0,1)");
    }
    if (!(armijo_coeff > 0.0 && armijo_coeff < 1.0)) {
      throw std::invalid_argument("armijo_coeff must lie in (0,1)");
    }
    if (!(sign_tol > 0.0 && sign_tol < 0.5)) {
      throw std::invalid_argument("sign_tol must lie in (0,0.5)");
    }
  }
};

enum class SolveStatus {
  kCertified,
  kStationaryNotBoolean,
  kMaxIterations,
  kNoFeasibleStart,
};

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kCertified:
      return "Certified";
    case SolveStatus::kStationaryNotBoolean:
      return "StationaryNotBoolean";
    case SolveStatus::kMaxIterations:
      return "MaxIterations";
    case SolveStatus::kNoFeasibleStart:
      return "NoFeasibleStart";
  }
  return "Unknown";
}

template <typename Scalar>
struct IterationRecord {
  int iteration = 0;
  Scalar dual_value{};
  Scalar grad_norm{};
  Scalar step{};
  bool newton = true;
};

template <typename Scalar>
struct SolveReport {
  Multipliers<Scalar> lambda;
  /// Present whenever x_raw rounds to signs within sign_tol.
  std::optional<SignVector> x;
  Vector<Scalar> x_raw;
  /// NaN when x is absent.
  Scalar primal_value{};
  Scalar dual_value{};
  /// primal_value - dual_value; NaN when x is absent.
  Scalar gap{};
  int iterations = 0;
  SolveStatus status = SolveStatus::kMaxIterations;
  std::vector<IterationRecord<Scalar>> trace;
};

/// Maps each entry to its sign when ||x_i| - 1| <= sign_tol; otherwise throws
/// NotBoolean listing every offending index. Entries near zero are never
/// rounded.
template <typename Scalar>
SignVector round_to_signs(const Vector<Scalar>& x_raw, Scalar sign_tol) {
  using std::abs;
  if (!(sign_tol > Scalar(0) && sign_tol < Scalar(0.5))) {
    throw std::invalid_argument("sign_tol must lie in (0,0.5)");
  }
  Eigen::VectorXi signs(x_raw.size());
  std::vector<std::ptrdiff_t> bad;
  for (Index i = 0; i < x_raw.size(); ++i) {
    if (abs(abs(x_raw(i)) - Scalar(1)) <= sign_tol) {
      signs(i) = x_raw(i) > Scalar(0) ? 1 : -1;
    } else {
      bad.push_back(i);
    }
  }
  if (!bad.empty()) throw NotBoolean(std::move(bad));
  return SignVector(std::move(signs));
}

/// x = Q(lambda)^{-1} c. Throws Infeasible off the cone.
template <typename Scalar>
Vector<Scalar> recover_primal(const BqpInstance<Scalar>& inst,
                              const Multipliers<Scalar>& lambda) {
  DualState<Scalar> state = is_dual_feasible(inst, lambda);
  return state.RequireX();
}

/// Starts from lambda_i = sum_j |Q_ij| + 1, which is strictly diagonally
/// dominant. The shift doubles until Q(lambda) factors; NoFeasibleStart
/// after 60 doublings.
template <typename Scalar>
DualState<Scalar> initial_point(const BqpInstance<Scalar>& inst) {
  const Vector<Scalar> rowsums = inst.q().matrix().cwiseAbs().rowwise().sum();
  Scalar shift(1);
  for (int doubling = 0; doubling <= 60; ++doubling) {
    Vector<Scalar> lam = rowsums;
    lam.array() += shift;
    if (lam.allFinite()) {
      DualState<Scalar> state =
          is_dual_feasible(inst, Multipliers<Scalar>(std::move(lam)));
      if (state.feasible()) return state;
    }
    shift *= Scalar(2);
  }
  throw NoFeasibleStart("no dual feasible starting point after 60 doublings");
}

namespace internal {

template <typename Scalar>
struct LineSearchResult {
  std::optional<DualState<Scalar>> state;
  Scalar value{};
  Scalar step{};
};

// Backtracks from t = 1 until lambda + t d is feasible and satisfies the
// Armijo condition; at most 60 reductions.
template <typename Scalar>
LineSearchResult<Scalar> BacktrackingSearch(const BqpInstance<Scalar>& inst,
                                            const Vector<Scalar>& lambda,
                                            Scalar value,
                                            const Vector<Scalar>& direction,
                                            Scalar slope,
                                            const SolveOptions& opts) {
  using std::abs;
  // Near the maximizer the predicted increase drops below the resolution of
  // the dual value itself, so allow a few ulps of slack in the Armijo test.
  const Scalar slack =
      Scalar(16) * std::numeric_limits<Scalar>::epsilon() * (Scalar(1) + abs(value));
  Scalar t(1);
  for (int k = 0; k <= 60; ++k, t *= Scalar(opts.backtrack_factor)) {
    Vector<Scalar> cand = lambda + t * direction;
    if (!cand.allFinite()) continue;
    DualState<Scalar> state =
        is_dual_feasible(inst, Multipliers<Scalar>(std::move(cand)));
    if (!state.feasible()) continue;
    const Scalar cand_value = dual_value(state, inst);
    if (cand_value >= value + Scalar(opts.armijo_coeff) * t * slope - slack) {
      return {std::move(state), cand_value, t};
    }
  }
  return {std::nullopt, value, Scalar(0)};
}

}  // namespace internal

/// Maximizes the dual function. Each iteration solves
/// (-H + eps I) d = grad with eps = 1e-10 (1 + ||H||_inf), backtracks until
/// the trial point is dual feasible and satisfies Armijo, and falls back to a
/// plain gradient step when the Newton step cannot be accepted. Stops when
/// ||grad||_inf <= grad_tol or after max_iter iterations.
template <typename Scalar>
SolveReport<Scalar> solve_dual(const BqpInstance<Scalar>& inst,
                               const SolveOptions& opts = {}) {
  using std::abs;
  opts.Validate();
  const Index n = inst.n();
  const Scalar nan = std::numeric_limits<Scalar>::quiet_NaN();

  std::optional<DualState<Scalar>> start;
  try {
    start = initial_point(inst);
  } catch (const NoFeasibleStart&) {
    SolveReport<Scalar> report{Multipliers<Scalar>(Vector<Scalar>::Zero(n)),
                               std::nullopt, Vector<Scalar>::Constant(n, nan),
                               nan, nan, nan, 0, SolveStatus::kNoFeasibleStart, {}};
    return report;
  }

  DualState<Scalar> state = std::move(*start);
  Scalar value = dual_value(state, inst);
  std::vector<IterationRecord<Scalar>> trace;
  bool converged = false;
  int iterations = 0;

  for (;;) {
    const Vector<Scalar> grad = dual_gradient(state);
    const Scalar grad_norm = grad.cwiseAbs().maxCoeff();
    if (grad_norm <= Scalar(opts.grad_tol)) {
      converged = true;
      break;
    }
    if (iterations >= opts.max_iter) break;

    const SymMatrix<Scalar> hessian = dual_hessian(state);
    Matrix<Scalar> system = -hessian.matrix();
    system.diagonal().array() +=
        Scalar(1e-10) * (Scalar(1) + inf_norm(hessian.matrix()));

    Vector<Scalar> direction;
    bool newton = false;
    if (auto f = try_spd_factorize(SymMatrix<Scalar>::Symmetrized(system))) {
      direction = spd_solve(*f, grad);
      newton = direction.allFinite() && grad.dot(direction) > Scalar(0);
    }

    const Vector<Scalar>& lam = state.lambda().values();
    internal::LineSearchResult<Scalar> accepted{std::nullopt, value, Scalar(0)};
    if (newton) {
      accepted = internal::BacktrackingSearch(inst, lam, value, direction,
                                              grad.dot(direction), opts);
    }
    if (!accepted.state) {
      newton = false;
      accepted = internal::BacktrackingSearch(inst, lam, value, grad,
                                              grad.squaredNorm(), opts);
    }
    // No ascent step exists at working precision.
    if (!accepted.state) break;

    ++iterations;
    state = std::move(*accepted.state);
    value = accepted.value;
    trace.push_back({iterations, value, grad_norm, accepted.step, newton});
  }

  SolveReport<Scalar> report{state.lambda(),
                             std::nullopt,
                             state.RequireX(),
                             nan,
                             value,
                             nan,
                             iterations,
                             SolveStatus::kMaxIterations,
                             std::move(trace)};
  try {
    report.x = round_to_signs(report.x_raw, Scalar(opts.sign_tol));
    report.primal_value = objective_value(inst, *report.x);
    report.gap = report.primal_value - report.dual_value;
  } catch (const NotBoolean&) {
  }
  if (converged) {
    const bool gap_ok =
        report.x && abs(report.gap) <=
                        Scalar(1e-6) * (Scalar(1) + abs(report.primal_value));
    report.status =
        gap_ok ? SolveStatus::kCertified : SolveStatus::kStationaryNotBoolean;
  }
  return report;
}

}  // namespace bqp
