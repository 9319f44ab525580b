#include "cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "bqp/bench.hpp"
#include "bqp/dual_solver.hpp"
#include "bqp/generator.hpp"
#include "bqp/io.hpp"
#include "bqp/oracle.hpp"
#include "bqp/verify.hpp"

namespace bqp::cli {

namespace {

constexpr const char* kGeneratorTag = "bqp-gen-1";

std::string Fixed(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed,
                           6);
  return std::string(buf, res.ptr);
}

template <typename Derived>
std::string Join(const Eigen::DenseBase<Derived>& v, bool fixed) {
  std::string s;
  for (Index i = 0; i < v.size(); ++i) {
    if (i > 0) s += ' ';
    s += fixed ? Fixed(static_cast<double>(v(i)))
               : format_number(static_cast<double>(v(i)));
  }
  return s;
}

const char* YesNo(bool b) { return b ? "true" : "false"; }

// Distinguishes unreadable/unparseable input (exit 4) from everything else.
struct LoadFailure {
  std::string message;
};

InstanceFile Load(const std::string& path) {
  try {
    return load_instance(path);
  } catch (const ParseError& e) {
    throw LoadFailure{path + ": " + e.what()};
  } catch (const std::exception& e) {
    throw LoadFailure{e.what()};
  }
}

struct GenArgs {
  long long n = 0;
  double base = 10.0;
  std::uint64_t seed = 0;
  double margin = 0.0;
  bool with_certificate = false;
  std::string out_path;
};

int RunGen(const GenArgs& a, std::ostream& out, std::ostream& err) {
  GenConfig cfg;
  cfg.n = a.n;
  cfg.base = a.base;
  cfg.seed = a.seed;
  cfg.margin = a.margin;
  try {
    cfg.Validate();
  } catch (const std::invalid_argument& e) {
    err << "gen: " << e.what() << '\n';
    return kUsage;
  }
  const GeneratedInstance gen = generate_instance(cfg);

  InstanceFile file{kFormatVersion, gen.instance, std::nullopt, {}};
  if (a.with_certificate) file.certificate = gen.certificate;
  file.metadata = {{"seed", std::to_string(cfg.seed)},
                   {"base", format_number(cfg.base)},
                   {"margin", format_number(cfg.margin)},
                   {"generator", kGeneratorTag}};
  try {
    save_instance(file, a.out_path);
  } catch (const std::exception& e) {
    err << "gen: " << e.what() << '\n';
    return kWriteFailed;
  }
  out << "objective " << format_number(objective_value(gen.instance,
                                                       gen.certificate.x))
      << '\n';
  return kOk;
}

struct SolveArgs {
  std::string path;
  double grad_tol = 1e-8;
  int max_iter = 100;
  std::string emit_cert;
};

int RunSolve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  SolveOptions opts;
  opts.grad_tol = a.grad_tol;
  opts.max_iter = a.max_iter;
  try {
    opts.Validate();
  } catch (const std::invalid_argument& e) {
    err << "solve: " << e.what() << '\n';
    return kUsage;
  }
  const InstanceFile file = Load(a.path);
  const SolveReport<double> r = solve_dual(file.instance, opts);

  out << "status " << to_string(r.status) << '\n';
  out << "iterations " << r.iterations << '\n';
  out << "lambda " << Join(r.lambda.values(), true) << '\n';
  if (r.x) {
    out << "x " << Join(r.x->entries(), false) << '\n';
  } else {
    out << "x_raw " << Join(r.x_raw, true) << '\n';
  }
  out << "primal " << format_number(r.primal_value) << '\n';
  out << "dual " << format_number(r.dual_value) << '\n';
  out << "gap " << format_number(r.gap) << '\n';

  if (!a.emit_cert.empty()) {
    if (r.status == SolveStatus::kCertified) {
      InstanceFile cert{kFormatVersion, file.instance,
                        Certificate<double>{*r.x, r.lambda}, file.metadata};
      try {
        save_instance(cert, a.emit_cert);
      } catch (const std::exception& e) {
        err << "solve: " << e.what() << '\n';
        return kWriteFailed;
      }
      out << "certificate " << a.emit_cert << '\n';
    } else {
      out << "certificate not written (status " << to_string(r.status)
          << ")\n";
    }
  }
  return r.status == SolveStatus::kCertified ? kOk : kNotCertified;
}

int RunVerify(const std::string& path, double tol, std::ostream& out,
              std::ostream& err) {
  if (!(tol > 0.0)) {
    err << "verify: tol must be positive\n";
    return kUsage;
  }
  const InstanceFile file = Load(path);
  if (file.instance.has_zero_c()) out << "warning c is the zero vector\n";
  if (!file.certificate) {
    out << "no certificate present\n";
    return kNotCertified;
  }
  const VerifyReport<double> r =
      verify_certificate(file.instance, *file.certificate, tol);
  out << "pd_ok " << YesNo(r.pd_ok) << '\n';
  out << "stationary_ok " << YesNo(r.stationary_ok) << '\n';
  out << "boolean_ok " << YesNo(r.boolean_ok) << '\n';
  out << "gap " << format_number(r.gap) << '\n';
  out << "gap_ok " << YesNo(r.gap_ok) << '\n';
  out << "inertia " << r.q_inertia.ToString() << '\n';
  out << "overall " << YesNo(r.overall) << '\n';
  return r.overall ? kOk : kNotCertified;
}

int RunOracle(const std::string& path, bool force, std::ostream& out,
              std::ostream& err) {
  const InstanceFile file = Load(path);
  try {
    const OracleResult<double> r = brute_force_minimize(
        file.instance, force ? Index{62} : kDefaultOracleCap);
    out << "best_x " << Join(r.best_x.entries(), false) << '\n';
    out << "best_value " << format_number(r.best_value) << '\n';
    out << "count " << r.minimizer_count << '\n';
  } catch (const TooLarge& e) {
    err << "oracle: " << e.what()
        << (force ? "" : " (use --force to raise the cap)") << '\n';
    return kTooLarge;
  }
  return kOk;
}

struct BenchArgs {
  std::vector<long long> sizes{50, 100, 200};
  int seeds = 3;
  int jobs = 1;
  std::string csv_path;
};

int RunBench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  std::vector<Index> sizes;
  for (long long s : a.sizes) {
    if (s < 1) {
      err << "bench: sizes must be >= 1\n";
      return kUsage;
    }
    sizes.push_back(static_cast<Index>(s));
  }
  if (sizes.empty() || a.seeds < 1 || a.jobs < 1) {
    err << "bench: need at least one size, seeds >= 1 and jobs >= 1\n";
    return kUsage;
  }
  const std::vector<BenchRecord> records = run_bench(sizes, a.seeds, a.jobs);
  const std::string csv = write_bench_csv(records);
  {
    std::ofstream f(a.csv_path, std::ios::binary | std::ios::trunc);
    if (f) f << csv;
    if (!f) {
      err << "bench: cannot write '" << a.csv_path << "'\n";
      return kWriteFailed;
    }
  }
  bool all_certified = true;
  for (const BenchRecord& r : records) all_certified &= r.certified;
  out << "rows " << records.size() << '\n';
  out << "certified " << YesNo(all_certified) << '\n';
  out << "csv " << a.csv_path << '\n';
  return all_certified ? kOk : kNotCertified;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Boolean quadratic programs with planted optima"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate an instance");
  gen_cmd->add_option("-n", gen.n, "dimension")->required();
  gen_cmd->add_option("--base", gen.base, "scale of Q entries");
  gen_cmd->add_option("--seed", gen.seed, "random seed");
  gen_cmd->add_option("--margin", gen.margin, "added to every multiplier");
  gen_cmd->add_flag("--with-certificate", gen.with_certificate,
                    "include x and lambda sections");
  gen_cmd->add_option("-o", gen.out_path, "output path")->required();

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "solve the Lagrangian dual");
  solve_cmd->add_option("path", solve.path, "instance file")->required();
  solve_cmd->add_option("--grad-tol", solve.grad_tol, "gradient tolerance");
  solve_cmd->add_option("--max-iter", solve.max_iter, "Newton iteration cap");
  solve_cmd->add_option("--emit-cert", solve.emit_cert,
                        "write instance plus certificate here");

  std::string verify_path;
  double verify_tol = 1e-6;
  auto* verify_cmd = app.add_subcommand("verify", "check a certificate");
  verify_cmd->add_option("path", verify_path, "instance file")->required();
  verify_cmd->add_option("--tol", verify_tol, "relative tolerance");

  std::string oracle_path;
  bool oracle_force = false;
  auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive minimization");
  oracle_cmd->add_option("path", oracle_path, "instance file")->required();
  oracle_cmd->add_flag("--force", oracle_force, "allow n > 25");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "timing sweep to CSV");
  bench_cmd->add_option("--sizes", bench.sizes, "comma separated sizes")
      ->delimiter(',');
  bench_cmd->add_option("--seeds", bench.seeds, "seeds per size (1..k)");
  bench_cmd->add_option("--jobs", bench.jobs, "worker threads");
  bench_cmd->add_option("--csv", bench.csv_path, "output CSV")->required();

  std::vector<const char*> argv{"bqp"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n' << app.help();
    return kUsage;
  }

  try {
    if (*gen_cmd) return RunGen(gen, out, err);
    if (*solve_cmd) return RunSolve(solve, out, err);
    if (*verify_cmd) return RunVerify(verify_path, verify_tol, out, err);
    if (*oracle_cmd) return RunOracle(oracle_path, oracle_force, out, err);
    if (*bench_cmd) return RunBench(bench, out, err);
  } catch (const LoadFailure& e) {
    err << e.message << '\n';
    return kReadFailed;
  }
  return kUsage;
}

}  // namespace bqp::cli
