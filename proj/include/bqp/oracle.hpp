#pragma once

// Exhaustive minimization over {-1,1}^n for small n.
//
// Points are enumerated in reflected Gray-code order so consecutive points
// differ in one sign and the objective updates in O(n). Bit b of the mask
// holds variable n-1-b (set bit = +1), which makes numeric mask order equal
// to lexicographic order with -1 < +1.

#include <bit>
#include <cmath>
#include <cstdint>
#include <string>

#include "bqp/errors.hpp"
#include "bqp/model.hpp"

namespace bqp {

inline constexpr Index kDefaultOracleCap = 25;

template <typename Scalar>
struct OracleResult {
  SignVector best_x;
  Scalar best_value{};
  std::uint64_t minimizer_count = 0;
};

namespace internal {

inline SignVector SignsFromMask(std::uint64_t mask, Index n) {
  Eigen::VectorXi x(n);
  for (Index i = 0; i < n; ++i) {
    x(i) = ((mask >> (n - 1 - i)) & 1U) ? 1 : -1;
  }
  return SignVector(std::move(x));
}

// Walks every point of {-1,1}^n in Gray order, calling visit(mask, f(x)).
// The running objective and Q x are recomputed from scratch every 4096 flips
// to keep rounding drift bounded for non-integer data.
template <typename Scalar, typename Visitor>
void GrayWalk(const BqpInstance<Scalar>& inst, Visitor&& visit) {
  const Index n = inst.n();
  const Matrix<Scalar>& q = inst.q().matrix();
  const Vector<Scalar>& c = inst.c();

  Vector<Scalar> x = Vector<Scalar>::Constant(n, Scalar(-1));
  Vector<Scalar> qx = q * x;
  Scalar f = Scalar(0.5) * x.dot(qx) - c.dot(x);
  std::uint64_t mask = 0;
  visit(mask, f);

  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k < total; ++k) {
    const int bit = std::countr_zero(k);
    const Index i = n - 1 - bit;
    const Scalar xi = x(i);
    f += Scalar(2) * (q(i, i) - xi * qx(i) + xi * c(i));
    qx.noalias() -= (Scalar(2) * xi) * q.col(i);
    x(i) = -xi;
    mask ^= std::uint64_t{1} << bit;
    if ((k & 4095U) == 0) {
      qx.noalias() = q * x;
      f = Scalar(0.5) * x.dot(qx) - c.dot(x);
    }
    visit(mask, f);
  }
}

}  // namespace internal

/// Global minimum over all 2^n sign vectors. Returns the lexicographically
/// smallest minimizer (-1 < +1) and the number of points within
/// 1e-9 (1 + |min|) of the minimum. Throws TooLarge when n > max_n.
template <typename Scalar>
OracleResult<Scalar> brute_force_minimize(const BqpInstance<Scalar>& inst,
                                          Index max_n = kDefaultOracleCap) {
  using std::abs;
  const Index n = inst.n();
  if (n > max_n || n > 62) {
    throw TooLarge("brute force limited to n <= " +
                   std::to_string(std::min<Index>(max_n, 62)) + ", got " +
                   std::to_string(n));
  }

  Scalar best = std::numeric_limits<Scalar>::infinity();
  internal::GrayWalk(inst, [&](std::uint64_t, Scalar f) {
    if (f < best) best = f;
  });

  const Scalar tie_tol = Scalar(1e-9) * (Scalar(1) + abs(best));
  std::uint64_t count = 0;
  std::uint64_t best_mask = ~std::uint64_t{0};
  internal::GrayWalk(inst, [&](std::uint64_t mask, Scalar f) {
    if (f <= best + tie_tol) {
      ++count;
      if (mask < best_mask) best_mask = mask;
    }
  });

  SignVector best_x = internal::SignsFromMask(best_mask, n);
  return {best_x, objective_value(inst, best_x), count};
}

}  // namespace bqp
