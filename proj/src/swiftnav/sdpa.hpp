#ifndef SWIFTNAV_SDPA_HPP_
#define SWIFTNAV_SDPA_HPP_

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace swiftnav {

// One upper-triangle entry of F_matrix in a block. Indices are 1-based as in
// the file; row <= col always holds after parsing.
struct SdpEntry {
  int matrix = 0;  // 0 is F_0
  int block = 1;
  int row = 1;
  int col = 1;
  double value = 0.0;

  friend bool operator==(const SdpEntry&, const SdpEntry&) = default;
};

// SDPA problem: blocks with positive size are dense symmetric, negative size
// diagonal.
struct SdpProblem {
  int m = 0;
  std::vector<int> block_sizes;
  std::vector<double> cost;
  std::vector<SdpEntry> entries;

  std::size_t order() const noexcept;

  friend bool operator==(const SdpProblem&, const SdpProblem&) = default;
};

SdpProblem parse_sdpa_sparse(std::string_view text);
SdpProblem load_sdpa_sparse(const std::filesystem::path& path);
std::string serialize_sdpa_sparse(const SdpProblem& problem);

// Dense symmetric matrix, row-major.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

  std::size_t size() const noexcept { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  double frobenius() const noexcept;

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

struct DenseBlock {
  bool diagonal = false;
  SymMatrix matrix;
};

// Per-block dense copies of F_0..F_m so that repeated assembly is a few
// axpys.
struct AssembledProblem {
  std::vector<int> block_sizes;
  // terms[b][i] is F_i restricted to block b.
  std::vector<std::vector<SymMatrix>> terms;

  static AssembledProblem from(const SdpProblem& problem);
};

// X = sum_i x_i F_i - F_0, block by block.
std::vector<DenseBlock> assemble(const SdpProblem& problem, std::span<const double> x);
std::vector<DenseBlock> assemble(const AssembledProblem& problem, std::span<const double> x);

struct EigenDecomposition {
  std::vector<double> values;
  SymMatrix vectors;  // column j pairs with values[j]
};

// Cyclic Jacobi rotations until the off-diagonal Frobenius mass drops below
// tol * ||A||_F. Throws InvalidArgument for a non-symmetric input.
EigenDecomposition jacobi_eigen(const SymMatrix& a, double tol = 1e-12);

double min_eigenvalue(const SymMatrix& a, double tol = 1e-12);
// Minimum over blocks; diagonal blocks read their diagonal directly.
double min_eigenvalue(std::span<const DenseBlock> blocks, double tol = 1e-12);

}  // namespace swiftnav

#endif  // SWIFTNAV_SDPA_HPP_
