// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <unistd.h>

#include "bqp/dual_solver.hpp"
#include "bqp/generator.hpp"
#include "bqp/io.hpp"
#include "bqp/oracle.hpp"
#include "bqp/verify.hpp"
#include "cli.hpp"
#include "finite_difference.hpp"
#include "reference_instances.hpp"

namespace {

using bqp::Index;
using Eigen::VectorXd;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string Fixture(int k) {
  return std::string(BQP_TEST_DATA_DIR) + "/example" + std::to_string(k) +
         ".bqp";
}

std::string Num(double v) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << v;
  return s.str();
}

Outcome ReproduceExample(int k, const bqp::testing::ReferenceInstance& ex,
                         double lambda_tol, double max_seconds) {
  const auto start = std::chrono::steady_clock::now();
  const bqp::InstanceFile file = bqp::load_instance(Fixture(k));
  const auto r = bqp::solve_dual(file.instance);
  const double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  const double err =
      (r.lambda.values() - ex.lambda_reported).cwiseAbs().maxCoeff();
  const bool x_ok = r.x && r.x->entries() == ex.x_reported;
  const bool ok = r.status == bqp::SolveStatus::kCertified && err <= lambda_tol &&
                  x_ok && secs < max_seconds;
  return {ok, "status=" + std::string(bqp::to_string(r.status)) +
                  " |lambda-reported|_inf=" + Num(err) +
                  " x_match=" + (x_ok ? "yes" : "no") +
                  " time=" + Num(secs) + "s"};
}

Outcome Criterion1() {
  return ReproduceExample(1, bqp::testing::Example1(), 1e-3, 1.0);
}
Outcome Criterion2() {
  return ReproduceExample(2, bqp::testing::Example2(), 1e-2, INFINITY);
}
Outcome Criterion3() {
  return ReproduceExample(3, bqp::testing::Example3(), 1e-2, INFINITY);
}

Outcome Criterion4() {
  bool ok = true;
  std::string detail;
  for (int k = 1; k <= 3; ++k) {
    const auto inst = bqp::load_instance(Fixture(k)).instance;
    const auto r = bqp::solve_dual(inst);
    if (!r.x) return {false, "example " + std::to_string(k) + " not boolean"};
    const double f = bqp::objective_value(inst, *r.x);
    const double g =
        bqp::dual_value(bqp::is_dual_feasible(inst, r.lambda), inst);
    const double rel = std::abs(f - g) / (1.0 + std::abs(f));
    ok &= rel <= 1e-6;
    detail += "ex" + std::to_string(k) + " rel_gap=" + Num(rel) + " ";
    if (k == 1) {
      const auto oracle = bqp::brute_force_minimize(inst);
      ok &= oracle.best_value == -171.0 && f == -171.0 &&
            oracle.best_x == *r.x;
      detail += "oracle_f=" + bqp::format_number(oracle.best_value) + " ";
    }
  }
  return {ok, detail};
}

Outcome Criterion5() {
  int passed = 0, total = 0;
  for (Index n = 2; n <= 12; ++n) {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      ++total;
      bqp::GenConfig cfg;
      cfg.n = n;
      cfg.seed = seed;
      const auto gen = bqp::generate_instance(cfg);
      const auto report = bqp::verify_certificate(gen.instance, gen.certificate);
      const auto oracle = bqp::brute_force_minimize(gen.instance);
      if (report.overall && oracle.best_x == gen.certificate.x &&
          oracle.best_value ==
              bqp::objective_value(gen.instance, gen.certificate.x)) {
        ++passed;
      }
    }
  }
  return {passed == total,
          std::to_string(passed) + "/" + std::to_string(total) + " instances"};
}

Outcome Criterion6() {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> shift(0.5, 20.0);
  double worst_grad = 0.0, worst_hess = 0.0;
  int points = 0;
  for (int inst_id = 0; inst_id < 10; ++inst_id) {
    bqp::GenConfig cfg;
    cfg.n = 3 + inst_id;
    cfg.seed = rng();
    const auto gen = bqp::generate_instance(cfg);
    const auto& inst = gen.instance;
    for (int p = 0; p < 2; ++p, ++points) {
      VectorXd lam = gen.certificate.lambda.values();
      for (Index i = 0; i < cfg.n; ++i) lam(i) += shift(rng);
      const auto state = bqp::is_dual_feasible(inst, bqp::Multipliers<double>(lam));
      if (!state.feasible()) return {false, "sample point infeasible"};
      auto value = [&](const VectorXd& l) {
        return bqp::dual_value(
            bqp::is_dual_feasible(inst, bqp::Multipliers<double>(l)), inst);
      };
      auto grad = [&](const VectorXd& l) {
        return bqp::dual_gradient(
            bqp::is_dual_feasible(inst, bqp::Multipliers<double>(l)));
      };
      worst_grad = std::max(
          worst_grad,
          bqp::testing::RelativeError(bqp::dual_gradient(state),
                                      bqp::testing::CentralGradient(value, lam,
                                                                    1e-5)));
      worst_hess = std::max(
          worst_hess,
          bqp::testing::RelativeError(
              bqp::dual_hessian(state).matrix(),
              bqp::testing::CentralJacobian(grad, lam, 1e-4)));
    }
  }
  return {worst_grad <= 1e-5 && worst_hess <= 1e-4,
          std::to_string(points) + " points, worst grad rel=" +
              Num(worst_grad) + " hess rel=" + Num(worst_hess)};
}

Outcome Criterion7() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> shift(0.0, 20.0);
  std::uniform_real_distribution<double> rel(-1.0, 1.0);
  int agree = 0, samples = 0;
  while (samples < 100) {
    bqp::GenConfig cfg;
    cfg.n = 1 + samples % 10;
    cfg.seed = rng();
    const auto gen = bqp::generate_instance(cfg);
    VectorXd lam = gen.certificate.lambda.values();
    for (Index i = 0; i < cfg.n; ++i) lam(i) += shift(rng);
    const bqp::Multipliers<double> m(lam);
    if (!bqp::is_dual_feasible(gen.instance, m).feasible()) continue;
    const double threshold = bqp::optimal_schur_t(gen.instance, m);
    const double t = threshold * (1.0 + rel(rng));
    if (std::abs(t - threshold) <= 1e-6 * (1.0 + std::abs(t))) continue;
    ++samples;
    if (bqp::schur_block_psd(gen.instance, m, t).is_psd == (t >= threshold)) {
      ++agree;
    }
  }
  return {agree == samples,
          std::to_string(agree) + "/" + std::to_string(samples) + " agree"};
}

Outcome Criterion8() {
  namespace fs = std::filesystem;
  const fs::path csv_path =
      fs::temp_directory_path() /
      ("bqp_acceptance_" + std::to_string(::getpid()) + ".csv");
  std::ostringstream out, err;
  const int code = bqp::cli::run({"bench", "--sizes", "50,100,200", "--seeds",
                                  "3", "--csv", csv_path.string()},
                                 out, err);
  std::ifstream in(csv_path);
  std::string header;
  std::getline(in, header);
  bool ok = code == 0 && err.str().empty() &&
            header == "n,seed,gen_ms,solve_ms,iters,gap,certified";
  int rows = 0;
  double worst_gap = 0.0, slowest_200 = 0.0;
  for (std::string line; std::getline(in, line);) {
    ++rows;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cols.push_back(c);
    if (cols.size() != 7) {
      ok = false;
      continue;
    }
    const Index n = std::stol(cols[0]);
    const std::uint64_t seed = std::stoull(cols[1]);
    const double solve_ms = std::stod(cols[3]);
    const double gap = std::stod(cols[5]);
    ok &= cols[6] == "true";
    bqp::GenConfig cfg;
    cfg.n = n;
    cfg.seed = seed;
    const auto gen = bqp::generate_instance(cfg);
    const double f = bqp::objective_value(gen.instance, gen.certificate.x);
    const double rel = std::abs(gap) / (1.0 + std::abs(f));
    worst_gap = std::max(worst_gap, rel);
    ok &= rel <= 1e-6;
    if (n == 200) slowest_200 = std::max(slowest_200, solve_ms / 1000.0);
  }
  fs::remove(csv_path);
  ok &= rows == 9 && slowest_200 < 30.0;
  return {ok, std::to_string(rows) + " rows, worst rel gap=" + Num(worst_gap) +
                  ", slowest n=200 solve=" + Num(slowest_200) + "s"};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"1 Example 1 reproduction", Criterion1},
      {"2 Example 2 reproduction", Criterion2},
      {"3 Example 3 reproduction", Criterion3},
      {"4 Zero duality gap on fixtures", Criterion4},
      {"5 Generator soundness (550 instances)", Criterion5},
      {"6 Dual derivatives vs finite differences", Criterion6},
      {"7 Schur block PSD equivalence", Criterion7},
      {"8 Bench harness 50,100,200 x 3 seeds", Criterion8},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o{false, ""};
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << name << " -- " << o.detail
              << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria passed"
                              : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
