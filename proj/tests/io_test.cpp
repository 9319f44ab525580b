#include "bqp/io.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "bqp/errors.hpp"
#include "reference_instances.hpp"

namespace bqp {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string Fixture(int k) {
  return std::string(BQP_TEST_DATA_DIR) + "/example" + std::to_string(k) +
         ".bqp";
}

int ParseErrorLine(const std::string& text) {
  try {
    parse_instance(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

TEST(Fixtures, MatchPrintedData) {
  const testing::ReferenceInstance examples[] = {
      testing::Example1(), testing::Example2(), testing::Example3()};
  for (int k = 1; k <= 3; ++k) {
    const auto& ex = examples[k - 1];
    const InstanceFile f = load_instance(Fixture(k));
    EXPECT_EQ(f.instance.q().matrix(), ex.q) << "example " << k;
    EXPECT_EQ(f.instance.c(), ex.c) << "example " << k;
    ASSERT_TRUE(f.certificate.has_value());
    EXPECT_EQ(f.certificate->x.entries(), ex.x_reported);
    EXPECT_EQ(f.certificate->lambda.values(),
              SymMatrix<double>(ex.q).matrix().cwiseAbs().rowwise().sum());
  }
}

TEST(Fixtures, Example1SerializesToCheckedInBytes) {
  const auto ex = testing::Example1();
  InstanceFile f{kFormatVersion, ex.instance(),
                 Certificate<double>{SignVector(ex.x_reported),
                                     Multipliers<double>(VectorXd{
                                         {22.0, 49.0, 39.0, 28.0, 22.0}})},
                 {{"source", "example1"}}};
  EXPECT_EQ(serialize_instance(f), ReadFile(Fixture(1)));
  for (int k = 1; k <= 3; ++k) {
    const std::string text = ReadFile(Fixture(k));
    EXPECT_EQ(serialize_instance(parse_instance(text)), text);
  }
}

TEST(Serialize, MinimalInstance) {
  const InstanceFile f{kFormatVersion,
                       BqpInstance<double>(
                           SymMatrix<double>(MatrixXd::Constant(1, 1, 2.5)),
                           VectorXd::Constant(1, -1.0)),
                       std::nullopt,
                       {}};
  EXPECT_EQ(serialize_instance(f), "bqp 1\nn 1\nQ\n2.5\nc\n-1\n");
  EXPECT_EQ(parse_instance(serialize_instance(f)), f);
}

TEST(Serialize, ShortestRoundTripNumbers) {
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(22.0), "22");
  EXPECT_EQ(format_number(-1e-300), "-1e-300");
  const double third = 1.0 / 3.0;
  EXPECT_EQ(std::stod(format_number(third)), third);
}

TEST(Parse, CommentsAndBlankLines) {
  const std::string text =
      "# header comment\n"
      "bqp 1   # version\n"
      "\n"
      "n 2\n"
      "Q\n"
      "  1   0.5\n"
      "0.5 -3\n"
      "c\n"
      "1 2\n"
      "meta note two words\n";
  const InstanceFile f = parse_instance(text);
  EXPECT_EQ(f.instance.q()(1, 1), -3.0);
  ASSERT_EQ(f.metadata.size(), 1U);
  EXPECT_EQ(f.metadata[0].second, "two words");
  EXPECT_FALSE(f.certificate.has_value());
}

TEST(Parse, Errors) {
  const std::string head = "bqp 1\nn 3\nQ\n1 0 0\n0 1 0\n0 0 1\nc\n";
  EXPECT_EQ(ParseErrorLine(head + "1 2\n"), 8);
  EXPECT_EQ(ParseErrorLine("bqp 1\nn 2\nQ\n1 2\n3 1\nc\n1 1\n"), 5);
  try {
    parse_instance("bqp 1\nn 2\nQ\n1 2\n3 1\nc\n1 1\n");
  } catch (const ParseError& e) {
    EXPECT_NE(e.reason().find("asymmetric"), std::string::npos);
  }
  EXPECT_EQ(ParseErrorLine(head + "1 1 1\nx\n1 0 1\nlambda\n1 1 1\n"), 10);
  EXPECT_EQ(ParseErrorLine(head + "1 1 1\nlambda\n1 1 1\n"), 9);
  EXPECT_EQ(ParseErrorLine(head + "1 1 1\nx\n1 1 1\n"), 11);
  EXPECT_EQ(ParseErrorLine(head + "1 1 1\nbogus\n"), 9);
  EXPECT_EQ(ParseErrorLine(head + "1 1 abc\n"), 8);
  EXPECT_EQ(ParseErrorLine(head + "1 1 nan\n"), 8);
  EXPECT_EQ(ParseErrorLine("bqp 2\n"), 1);
  EXPECT_EQ(ParseErrorLine("bqp 1\nn 0\n"), 2);
  EXPECT_EQ(ParseErrorLine("bqp 1\nn 2\nQ\n1 0\n"), 5);
  EXPECT_EQ(ParseErrorLine(""), 1);
  EXPECT_EQ(ParseErrorLine(head + "1 1 1\nmeta key\n"), 9);
}

TEST(Serialize, RandomRoundTrips) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> normal(0.0, 100.0);
  std::bernoulli_distribution coin;
  for (int trial = 0; trial < 100; ++trial) {
    GenConfig cfg;
    cfg.n = 1 + trial % 25;
    cfg.seed = rng();
    const auto gen = generate_instance(cfg);
    InstanceFile f{kFormatVersion, gen.instance, std::nullopt,
                   {{"seed", std::to_string(cfg.seed)}}};
    if (coin(rng)) f.certificate = gen.certificate;
    if (trial % 4 == 0) {
      // Non-integral data exercises the shortest round-trip formatting.
      MatrixXd q = gen.instance.q().matrix();
      for (Index i = 0; i < q.rows(); ++i) q(i, i) = normal(rng);
      VectorXd c(cfg.n);
      for (Index i = 0; i < cfg.n; ++i) c(i) = normal(rng) / 7.0;
      f.instance = BqpInstance<double>(SymMatrix<double>(q), c);
    }
    const std::string text = serialize_instance(f);
    const InstanceFile back = parse_instance(text);
    EXPECT_EQ(back, f);
    EXPECT_EQ(serialize_instance(back), text);
  }
}

TEST(BenchCsv, Format) {
  EXPECT_EQ(write_bench_csv({}), "n,seed,gen_ms,solve_ms,iters,gap,certified\n");
  const std::vector<BenchRecord> rows{{5, 2, 0.5, 1.25, 6, 0.0, true},
                                      {5, 1, 0.125, 3.0, 7, 1e-12, false}};
  EXPECT_EQ(write_bench_csv(rows),
            "n,seed,gen_ms,solve_ms,iters,gap,certified\n"
            "5,2,0.500,1.250,6,0,true\n"
            "5,1,0.125,3.000,7,1e-12,false\n");
}

TEST(Load, MissingFile) {
  EXPECT_THROW(load_instance("/nonexistent/path.bqp"), std::runtime_error);
}

}  // namespace
}  // namespace bqp
