#include "bqp/generator.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "bqp/rng.hpp"

namespace bqp {

void GenConfig::Validate() const {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  if (!(base > 0.0) || !std::isfinite(base)) {
    throw std::invalid_argument("base must be positive and finite");
  }
  if (!(margin >= 0.0) || !std::isfinite(margin)) {
    throw std::invalid_argument("margin must be nonnegative and finite");
  }
}

namespace {

Matrix<double> DrawSymmetric(Index n, double base, RandomStream& rng) {
  Matrix<double> g(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) g(i, j) = rng.Normal();
  }
  Matrix<double> q(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) {
      // std::round rounds halves away from zero.
      const double v = std::round((base * g(i, j) + base * g(j, i)) / 2.0);
      q(i, j) = v;
      q(j, i) = v;
    }
  }
  return q;
}

SignVector DrawSigns(Index n, RandomStream& rng) {
  Eigen::VectorXi x(n);
  for (Index i = 0; i < n; ++i) x(i) = rng.Coin() ? 1 : -1;
  return SignVector(std::move(x));
}

}  // namespace

SymMatrix<double> draw_symmetric(Index n, double base, std::uint64_t seed,
                                 std::uint64_t stream) {
  RandomStream rng(seed, stream);
  return SymMatrix<double>(DrawSymmetric(n, base, rng));
}

GeneratedInstance generate_instance(const GenConfig& cfg) {
  cfg.Validate();
  const double margin = std::round(cfg.margin);

  for (int attempt = 0; attempt <= kMaxRedraws; ++attempt) {
    RandomStream rng(cfg.seed, static_cast<std::uint64_t>(attempt));
    SymMatrix<double> q(DrawSymmetric(cfg.n, cfg.base, rng));
    SignVector x = DrawSigns(cfg.n, rng);

    auto lambda = multipliers_from_rowsums(q, margin);
    bool fallback = false;
    if (!try_spd_factorize(q_of_lambda(q, lambda))) {
      if (attempt < kMaxRedraws) continue;
      fallback = true;
      lambda = multipliers_from_rowsums(q, margin + 1.0);
      if (!try_spd_factorize(q_of_lambda(q, lambda))) break;
    }
    Vector<double> c = rhs_from_certificate(q, lambda, x);
    return GeneratedInstance{
        BqpInstance<double>(std::move(q), std::move(c)),
        Certificate<double>{std::move(x), std::move(lambda)},
        attempt,
        fallback,
    };
  }
  throw GenerationFailed("no positive definite Q(lambda) for n=" +
                         std::to_string(cfg.n) + " seed " +
                         std::to_string(cfg.seed));
}

}  // namespace bqp
