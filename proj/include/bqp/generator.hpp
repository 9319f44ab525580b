#pragma once

// Random instances with a planted global minimizer. Q is a rounded random
// symmetric matrix, lambda its absolute row sums (so Q + diag(lambda) is
// diagonally dominant), x a random sign vector and c = (Q + diag(lambda)) x.

#include <cstdint>
#include <utility>

#include "bqp/model.hpp"
#include "bqp/numerics.hpp"

namespace bqp {

/// Witness (x, lambda) that x is the global minimizer: lambda is dual
/// feasible and Q(lambda) x = c.
template <typename Scalar>
struct Certificate {
  SignVector x;
  Multipliers<Scalar> lambda;

  friend bool operator==(const Certificate& a, const Certificate& b) {
    return a.x == b.x && a.lambda == b.lambda;
  }
};

struct GenConfig {
  Index n = 1;
  double base = 10.0;
  std::uint64_t seed = 0;
  /// Added to every multiplier after rounding to the nearest integer.
  double margin = 0.0;

  /// Throws std::invalid_argument unless n >= 1, base > 0, margin >= 0.
  void Validate() const;
};

struct GeneratedInstance {
  BqpInstance<double> instance;
  Certificate<double> certificate;
  /// Number of redraws of Q before Q(lambda) factored.
  int redraws = 0;
  /// True when the margin fallback (+1 on every multiplier) was needed.
  bool margin_fallback = false;
};

/// Redraw budget before the margin fallback kicks in.
inline constexpr int kMaxRedraws = 100;

/// lambda_i = sum_j |Q_ij| + margin. The sum includes the diagonal.
template <typename Scalar>
Multipliers<Scalar> multipliers_from_rowsums(const SymMatrix<Scalar>& q,
                                             Scalar margin) {
  if (!(margin >= Scalar(0))) {
    throw std::invalid_argument("margin must be nonnegative");
  }
  Vector<Scalar> lam = q.matrix().cwiseAbs().rowwise().sum();
  lam.array() += margin;
  return Multipliers<Scalar>(std::move(lam));
}

/// c = (Q + diag(lambda)) x.
template <typename Scalar>
Vector<Scalar> rhs_from_certificate(const SymMatrix<Scalar>& q,
                                    const Multipliers<Scalar>& lambda,
                                    const SignVector& x) {
  internal::CheckSameSize(q.n(), x.n(), "rhs_from_certificate");
  return q_of_lambda(q, lambda).matrix() * x.as<Scalar>();
}

/// Q = round(base * (G + G^T) / 2) with G standard normal, drawn from
/// stream `stream` of `seed`, rounding half away from zero. Exposed for
/// distribution checks.
SymMatrix<double> draw_symmetric(Index n, double base, std::uint64_t seed,
                                 std::uint64_t stream);

/// Full pipeline. If Q(lambda) fails to factor, Q and x are redrawn from the
/// next stream, up to kMaxRedraws times; after that every multiplier gets +1.
/// Deterministic in the config. Throws GenerationFailed if even the fallback
/// does not factor.
GeneratedInstance generate_instance(const GenConfig& cfg);

}  // namespace bqp
