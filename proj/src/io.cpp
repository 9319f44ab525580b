#include "bqp/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "bqp/errors.hpp"

namespace bqp {

std::string format_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

namespace {

std::string FormatFixed(double value, int precision) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value,
                                 std::chars_format::fixed, precision);
  return std::string(buf, res.ptr);
}

template <typename Derived>
void WriteRow(std::ostringstream& out, const Eigen::DenseBase<Derived>& row) {
  for (Index j = 0; j < row.size(); ++j) {
    if (j > 0) out << ' ';
    out << format_number(static_cast<double>(row(j)));
  }
  out << '\n';
}

struct Line {
  int number = 0;
  std::vector<std::string_view> tokens;
};

std::vector<Line> Tokenize(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    pos = end + 1;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) {
      raw = raw.substr(0, hash);
    }
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i])))
        ++i;
      std::size_t j = i;
      while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j])))
        ++j;
      if (j > i) line.tokens.push_back(raw.substr(i, j - i));
      i = j;
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
  }
  return lines;
}

double ParseNumber(std::string_view token, int line) {
  double value = 0.0;
  const auto res =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size()) {
    throw ParseError(line, "bad number '" + std::string(token) + "'");
  }
  if (!std::isfinite(value)) {
    throw ParseError(line, "non-finite number '" + std::string(token) + "'");
  }
  return value;
}

class Reader {
 public:
  explicit Reader(std::vector<Line> lines) : lines_(std::move(lines)) {}

  bool done() const { return next_ >= lines_.size(); }
  const Line& peek() const { return lines_[next_]; }
  int last_line() const {
    return lines_.empty() ? 0 : lines_.back().number;
  }
  int next_line_number() const {
    return done() ? last_line() + 1 : lines_[next_].number;
  }

  const Line& take(std::string_view what) {
    if (done()) {
      throw ParseError(last_line() + 1,
                       "unexpected end of input, expected " + std::string(what));
    }
    return lines_[next_++];
  }

  void expect_keyword(std::string_view keyword) {
    const Line& line = take(keyword);
    if (line.tokens.size() != 1 || line.tokens[0] != keyword) {
      throw ParseError(line.number, "expected section '" +
                                        std::string(keyword) + "'");
    }
  }

  Vector<double> row(Index n, std::string_view what) {
    const Line& line = take(what);
    if (static_cast<Index>(line.tokens.size()) != n) {
      throw ParseError(line.number,
                       "dimension mismatch: " + std::string(what) + " has " +
                           std::to_string(line.tokens.size()) +
                           " entries, expected " + std::to_string(n));
    }
    Vector<double> v(n);
    for (Index j = 0; j < n; ++j) v(j) = ParseNumber(line.tokens[j], line.number);
    return v;
  }

 private:
  std::vector<Line> lines_;
  std::size_t next_ = 0;
};

}  // namespace

std::string serialize_instance(const InstanceFile& file) {
  const BqpInstance<double>& inst = file.instance;
  std::ostringstream out;
  out << "bqp " << file.version << '\n';
  out << "n " << inst.n() << '\n';
  out << "Q\n";
  for (Index i = 0; i < inst.n(); ++i) WriteRow(out, inst.q().matrix().row(i));
  out << "c\n";
  WriteRow(out, inst.c());
  if (file.certificate) {
    out << "x\n";
    WriteRow(out, file.certificate->x.entries());
    out << "lambda\n";
    WriteRow(out, file.certificate->lambda.values());
  }
  for (const auto& [key, value] : file.metadata) {
    out << "meta " << key << ' ' << value << '\n';
  }
  return out.str();
}

InstanceFile parse_instance(std::string_view text) {
  Reader reader(Tokenize(text));

  const Line& header = reader.take("header");
  if (header.tokens.size() != 2 || header.tokens[0] != "bqp") {
    throw ParseError(header.number, "expected header 'bqp <version>'");
  }
  if (header.tokens[1] != std::to_string(kFormatVersion)) {
    throw ParseError(header.number, "unsupported version '" +
                                        std::string(header.tokens[1]) + "'");
  }

  const Line& size = reader.take("size");
  Index n = 0;
  {
    if (size.tokens.size() != 2 || size.tokens[0] != "n") {
      throw ParseError(size.number, "expected 'n <int>'");
    }
    const auto tok = size.tokens[1];
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), n);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size() || n < 1) {
      throw ParseError(size.number, "bad dimension '" + std::string(tok) + "'");
    }
  }

  reader.expect_keyword("Q");
  Matrix<double> q(n, n);
  std::vector<int> row_lines(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    row_lines[static_cast<std::size_t>(i)] = reader.next_line_number();
    q.row(i) = reader.row(n, "Q row").transpose();
  }
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < i; ++j) {
      if (q(i, j) != q(j, i)) {
        throw ParseError(row_lines[static_cast<std::size_t>(i)],
                         "asymmetric Q at (" + std::to_string(i) + "," +
                             std::to_string(j) + ")");
      }
    }
  }

  reader.expect_keyword("c");
  Vector<double> c = reader.row(n, "c row");

  InstanceFile file{kFormatVersion,
                    BqpInstance<double>(SymMatrix<double>(std::move(q)),
                                        std::move(c)),
                    std::nullopt,
                    {}};

  if (!reader.done() && reader.peek().tokens.size() == 1 &&
      reader.peek().tokens[0] == "x") {
    reader.expect_keyword("x");
    const int x_line = reader.next_line_number();
    const Vector<double> xv = reader.row(n, "x row");
    Eigen::VectorXi signs(n);
    for (Index i = 0; i < n; ++i) {
      if (xv(i) != 1.0 && xv(i) != -1.0) {
        throw ParseError(x_line, "certificate entry " + std::to_string(i) +
                                     " is not -1 or 1");
      }
      signs(i) = xv(i) > 0 ? 1 : -1;
    }
    reader.expect_keyword("lambda");
    Vector<double> lam = reader.row(n, "lambda row");
    file.certificate = Certificate<double>{SignVector(std::move(signs)),
                                           Multipliers<double>(std::move(lam))};
  }

  while (!reader.done()) {
    const Line& line = reader.take("meta");
    if (line.tokens[0] != "meta") {
      throw ParseError(line.number, "unknown or misplaced section '" +
                                        std::string(line.tokens[0]) + "'");
    }
    if (line.tokens.size() < 3) {
      throw ParseError(line.number, "expected 'meta <key> <value>'");
    }
    std::string value(line.tokens[2]);
    for (std::size_t k = 3; k < line.tokens.size(); ++k) {
      value += ' ';
      value += line.tokens[k];
    }
    file.metadata.emplace_back(std::string(line.tokens[1]), std::move(value));
  }
  return file;
}

InstanceFile load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

void save_instance(const InstanceFile& file, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << serialize_instance(file);
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

std::string write_bench_csv(const std::vector<BenchRecord>& records) {
  std::string out(kBenchCsvHeader);
  out += '\n';
  for (const BenchRecord& r : records) {
    out += std::to_string(r.n);
    out += ',';
    out += std::to_string(r.seed);
    out += ',';
    out += FormatFixed(r.gen_millis, 3);
    out += ',';
    out += FormatFixed(r.solve_millis, 3);
    out += ',';
    out += std::to_string(r.iterations);
    out += ',';
    out += format_number(r.gap);
    out += ',';
    out += r.certified ? "true" : "false";
    out += '\n';
  }
  return out;
}

}  // namespace bqp
