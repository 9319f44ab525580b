#pragma once

#include <cstdint>
#include <vector>

#include "bqp/dual_solver.hpp"
#include "bqp/io.hpp"

namespace bqp {

/// Generates one instance (base 10, margin 0), solves it, and times both
/// phases with a steady clock.
BenchRecord run_bench_case(Index n, std::uint64_t seed,
                           const SolveOptions& opts = {});

/// One record per (size, seed) pair, sizes outer and seeds 1..num_seeds
/// inner. With jobs > 1 cases run on worker threads; output order is the
/// same either way.
std::vector<BenchRecord> run_bench(const std::vector<Index>& sizes,
                                   int num_seeds, int jobs = 1,
                                   const SolveOptions& opts = {});

}  // namespace bqp
