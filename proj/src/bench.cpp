#include "bqp/bench.hpp"

#include <atomic>
#include <chrono>
#include <stdexcept>
#include <thread>

#include "bqp/generator.hpp"

namespace bqp {

namespace {

double MillisSince(std::chrono::steady_clock::time_point start) {
  const auto elapsed = std::chrono::steady_clock::now() - start;
  return std::chrono::duration<double, std::milli>(elapsed).count();
}

}  // namespace

BenchRecord run_bench_case(Index n, std::uint64_t seed,
                           const SolveOptions& opts) {
  GenConfig cfg;
  cfg.n = n;
  cfg.seed = seed;

  const auto gen_start = std::chrono::steady_clock::now();
  const GeneratedInstance gen = generate_instance(cfg);
  const double gen_ms = MillisSince(gen_start);

  const auto solve_start = std::chrono::steady_clock::now();
  const SolveReport<double> report = solve_dual(gen.instance, opts);
  const double solve_ms = MillisSince(solve_start);

  BenchRecord r;
  r.n = n;
  r.seed = seed;
  r.gen_millis = gen_ms;
  r.solve_millis = solve_ms;
  r.iterations = report.iterations;
  r.gap = report.gap;
  r.certified = report.status == SolveStatus::kCertified;
  return r;
}

std::vector<BenchRecord> run_bench(const std::vector<Index>& sizes,
                                   int num_seeds, int jobs,
                                   const SolveOptions& opts) {
  if (num_seeds < 1) throw std::invalid_argument("seeds must be >= 1");
  if (jobs < 1) throw std::invalid_argument("jobs must be >= 1");
  struct Case {
    Index n;
    std::uint64_t seed;
  };
  std::vector<Case> cases;
  for (Index n : sizes) {
    if (n < 1) throw std::invalid_argument("sizes must be >= 1");
    for (int s = 1; s <= num_seeds; ++s) {
      cases.push_back({n, static_cast<std::uint64_t>(s)});
    }
  }

  std::vector<BenchRecord> records(cases.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cases.size(); i = next++) {
      records[i] = run_bench_case(cases[i].n, cases[i].seed, opts);
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  return records;
}

}  // namespace bqp
