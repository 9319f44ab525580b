#pragma once

// Text serialization of instances and CSV output for benchmark sweeps.
//
// Instance format, one item per line:
//
//   bqp 1
//   n <int>
//   Q
//   <n lines of n numbers>
//   c
//   <1 line of n numbers>
//   x                      (optional, together with lambda)
//   <1 line of n values, each -1 or 1>
//   lambda
//   <1 line of n numbers>
//   meta <key> <value>     (optional, repeatable)
//
// Numbers are written in shortest round-trip form. '#' starts a comment;
// blank lines are ignored.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bqp/generator.hpp"
#include "bqp/model.hpp"

namespace bqp {

inline constexpr int kFormatVersion = 1;

struct InstanceFile {
  int version = kFormatVersion;
  BqpInstance<double> instance;
  std::optional<Certificate<double>> certificate;
  std::vector<std::pair<std::string, std::string>> metadata;

  friend bool operator==(const InstanceFile&, const InstanceFile&) = default;
};

/// Deterministic: the same file always produces the same bytes.
std::string serialize_instance(const InstanceFile& file);

/// Strict parse. Throws ParseError with the offending line number.
InstanceFile parse_instance(std::string_view text);

/// Reads and parses a file. Throws std::runtime_error if it cannot be read.
InstanceFile load_instance(const std::string& path);

/// Throws std::runtime_error if the file cannot be written.
void save_instance(const InstanceFile& file, const std::string& path);

/// Shortest decimal text that parses back to exactly `value`.
std::string format_number(double value);

struct BenchRecord {
  Index n = 1;
  std::uint64_t seed = 0;
  double gen_millis = 0.0;
  double solve_millis = 0.0;
  int iterations = 0;
  double gap = 0.0;
  bool certified = false;
};

inline constexpr std::string_view kBenchCsvHeader =
    "n,seed,gen_ms,solve_ms,iters,gap,certified";

/// Header plus one line per record, in input order.
std::string write_bench_csv(const std::vector<BenchRecord>& records);

}  // namespace bqp
