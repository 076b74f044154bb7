#include "swiftnav/sdpa.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "swiftnav/errors.hpp"

namespace swiftnav {
namespace {

struct Token {
  std::string text;
  std::size_t line;
};

bool is_comment(std::string_view line) {
  const auto pos = line.find_first_not_of(" \t\r");
  return pos != std::string_view::npos && (line[pos] == '"' || line[pos] == '*');
}

// Splits one line into tokens, treating the punctuation that some writers put
// around the block-size list as whitespace.
std::vector<std::string> split_line(std::string_view line) {
  std::string cleaned(line);
  for (char& c : cleaned)
    if (c == '{' || c == '}' || c == '(' || c == ')' || c == ',' || c == '\r' || c == '\t')
      c = ' ';
  std::vector<std::string> out;
  std::istringstream in(cleaned);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

bool parse_double(const std::string& s, double& out) {
  // from_chars rejects a leading '+', which some writers emit.
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

bool parse_int(const std::string& s, int& out) {
  double d = 0.0;
  if (!parse_double(s, d) || d != std::floor(d) || std::fabs(d) > 1e9) return false;
  out = static_cast<int>(d);
  return true;
}

// Reads the file as a sequence of logical sections: the first token of the
// mDIM and nBLOCK lines (trailing labels ignored), then counted numeric
// tokens for block sizes and costs, then one entry per line.
class Reader {
 public:
  explicit Reader(std::string_view text) {
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      const auto end = text.find('\n', start);
      const auto line = text.substr(start, end == std::string_view::npos ? text.size() - start
                                                                         : end - start);
      ++line_no;
      if (!is_comment(line)) {
        auto toks = split_line(line);
        if (!toks.empty()) lines_.push_back({std::move(toks), line_no});
      }
      if (end == std::string_view::npos) break;
      start = end + 1;
    }
    last_line_ = line_no;
  }

  int header_int(const char* what) {
    if (cursor_ >= lines_.size()) throw ParseError(last_line_, std::string("missing ") + what);
    const auto& l = lines_[cursor_++];
    int v = 0;
    if (!parse_int(l.tokens.front(), v))
      throw ParseError(l.line, std::string("non-numeric ") + what + " '" + l.tokens.front() + "'");
    return v;
  }

  // Collects `count` numbers that may span several lines; the rest of the
  // final line is ignored.
  template <typename T, typename Parse>
  std::vector<T> counted(std::size_t count, const char* what, Parse parse) {
    std::vector<T> out;
    while (out.size() < count) {
      if (cursor_ >= lines_.size())
        throw ParseError(last_line_, std::string("truncated ") + what);
      const auto& l = lines_[cursor_++];
      for (const auto& tok : l.tokens) {
        if (out.size() == count) break;
        T v{};
        if (!parse(tok, v))
          throw ParseError(l.line, std::string("non-numeric ") + what + " '" + tok + "'");
        out.push_back(v);
      }
    }
    return out;
  }

  bool done() const { return cursor_ >= lines_.size(); }

  const std::vector<std::string>& next(std::size_t& line) {
    const auto& l = lines_[cursor_++];
    line = l.line;
    return l.tokens;
  }

 private:
  struct Line {
    std::vector<std::string> tokens;
    std::size_t line;
  };
  std::vector<Line> lines_;
  std::size_t cursor_ = 0;
  std::size_t last_line_ = 0;
};

}  // namespace

std::size_t SdpProblem::order() const noexcept {
  std::size_t n = 0;
  for (int b : block_sizes) n += static_cast<std::size_t>(std::abs(b));
  return n;
}

SdpProblem parse_sdpa_sparse(std::string_view text) {
  Reader reader(text);
  SdpProblem p;
  p.m = reader.header_int("mDIM");
  if (p.m < 1) throw ParseError(0, "mDIM must be positive");
  const int nblock = reader.header_int("nBLOCK");
  if (nblock < 1) throw ParseError(0, "nBLOCK must be positive");
  p.block_sizes = reader.counted<int>(static_cast<std::size_t>(nblock), "block size", parse_int);
  for (int b : p.block_sizes)
    if (b == 0) throw ParseError(0, "block size 0");
  p.cost = reader.counted<double>(static_cast<std::size_t>(p.m), "cost vector", parse_double);

  while (!reader.done()) {
    std::size_t line = 0;
    const auto& toks = reader.next(line);
    if (toks.size() < 5) throw ParseError(line, "entry needs 'matno blkno i j value'");
    SdpEntry e;
    if (!parse_int(toks[0], e.matrix) || !parse_int(toks[1], e.block) ||
        !parse_int(toks[2], e.row) || !parse_int(toks[3], e.col))
      throw ParseError(line, "non-integer index in entry");
    if (!parse_double(toks[4], e.value)) throw ParseError(line, "non-numeric entry value '" + toks[4] + "'");
    if (e.matrix < 0 || e.matrix > p.m)
      throw ParseError(line, "matrix number " + std::to_string(e.matrix) + " out of range");
    if (e.block < 1 || e.block > nblock)
      throw ParseError(line, "block number " + std::to_string(e.block) + " out of range");
    const int size = std::abs(p.block_sizes[static_cast<std::size_t>(e.block - 1)]);
    if (e.row < 1 || e.row > size || e.col < 1 || e.col > size)
      throw ParseError(line, "index outside block of size " + std::to_string(size));
    if (p.block_sizes[static_cast<std::size_t>(e.block - 1)] < 0 && e.row != e.col)
      throw ParseError(line, "off-diagonal entry in a diagonal block");
    if (e.row > e.col) std::swap(e.row, e.col);
    p.entries.push_back(e);
  }
  return p;
}

SdpProblem load_sdpa_sparse(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open SDPA file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_sdpa_sparse(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path.string() + ": " + e.what());
  }
}

std::string serialize_sdpa_sparse(const SdpProblem& p) {
  std::string out;
  char buf[64];
  out += std::to_string(p.m) + " =mDIM\n";
  out += std::to_string(p.block_sizes.size()) + " =nBLOCK\n";
  for (std::size_t b = 0; b < p.block_sizes.size(); ++b)
    out += (b ? " " : "") + std::to_string(p.block_sizes[b]);
  out += '\n';
  for (std::size_t i = 0; i < p.cost.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%s%.17g", i ? " " : "", p.cost[i]);
    out += buf;
  }
  out += '\n';
  for (const auto& e : p.entries) {
    std::snprintf(buf, sizeof buf, "%d %d %d %d %.17g\n", e.matrix, e.block, e.row, e.col,
                  e.value);
    out += buf;
  }
  return out;
}

double SymMatrix::frobenius() const noexcept {
  double s = 0.0;
  for (double v : a_) s += v * v;
  return std::sqrt(s);
}

AssembledProblem AssembledProblem::from(const SdpProblem& problem) {
  AssembledProblem a;
  a.block_sizes = problem.block_sizes;
  a.terms.resize(problem.block_sizes.size());
  for (std::size_t b = 0; b < problem.block_sizes.size(); ++b) {
    const auto n = static_cast<std::size_t>(std::abs(problem.block_sizes[b]));
    a.terms[b].assign(static_cast<std::size_t>(problem.m) + 1, SymMatrix(n));
  }
  for (const auto& e : problem.entries) {
    auto& m = a.terms[static_cast<std::size_t>(e.block - 1)][static_cast<std::size_t>(e.matrix)];
    const auto i = static_cast<std::size_t>(e.row - 1);
    const auto j = static_cast<std::size_t>(e.col - 1);
    // Repeated entries accumulate, as SDPA readers do.
    m(i, j) += e.value;
    if (i != j) m(j, i) += e.value;
  }
  return a;
}

std::vector<DenseBlock> assemble(const AssembledProblem& problem, std::span<const double> x) {
  const std::size_t m = problem.terms.empty() ? 0 : problem.terms.front().size() - 1;
  if (x.size() != m)
    throw InvalidArgument("assemble: expected " + std::to_string(m) + " variables, got " +
                          std::to_string(x.size()));
  std::vector<DenseBlock> blocks(problem.block_sizes.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto& terms = problem.terms[b];
    const std::size_t n = terms[0].size();
    DenseBlock& out = blocks[b];
    out.diagonal = problem.block_sizes[b] < 0;
    out.matrix = SymMatrix(n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        double v = -terms[0](r, c);
        for (std::size_t i = 0; i < m; ++i) v += x[i] * terms[i + 1](r, c);
        out.matrix(r, c) = v;
      }
  }
  return blocks;
}

std::vector<DenseBlock> assemble(const SdpProblem& problem, std::span<const double> x) {
  return assemble(AssembledProblem::from(problem), x);
}

EigenDecomposition jacobi_eigen(const SymMatrix& input, double tol) {
  const std::size_t n = input.size();
  const double norm = input.frobenius();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::fabs(input(i, j) - input(j, i)) > 1e-12 * std::max(1.0, norm))
        throw InvalidArgument("jacobi_eigen: matrix is not symmetric");

  SymMatrix a = input;
  SymMatrix v(n);
  for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;

  auto off_mass = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  const double threshold = tol * norm;
  for (int sweep = 0; sweep < 100 && off_mass() > threshold; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Rotation angle that zeroes a(p, q) (Golub & Van Loan, sym.schur2).
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  EigenDecomposition out;
  out.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.values[i] = a(i, i);
  out.vectors = std::move(v);
  return out;
}

double min_eigenvalue(const SymMatrix& a, double tol) {
  if (a.size() == 0) throw InvalidArgument("min_eigenvalue: empty matrix");
  if (a.size() == 1) return a(0, 0);
  const auto eig = jacobi_eigen(a, tol);
  return *std::min_element(eig.values.begin(), eig.values.end());
}

double min_eigenvalue(std::span<const DenseBlock> blocks, double tol) {
  double lo = HUGE_VAL;
  for (const auto& b : blocks) {
    if (b.diagonal) {
      for (std::size_t i = 0; i < b.matrix.size(); ++i) lo = std::min(lo, b.matrix(i, i));
    } else {
      lo = std::min(lo, min_eigenvalue(b.matrix, tol));
    }
  }
  return lo;
}

}  // namespace swiftnav
