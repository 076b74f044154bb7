#ifndef SWIFTNAV_GRID_HPP_
#define SWIFTNAV_GRID_HPP_

#include <cstddef>
#include <random>
#include <span>
#include <vector>

namespace swiftnav {

using Point = std::vector<double>;

// Box domain discretized with a uniform base step. The exploration
// parameter k gives windows of 2k-1 candidates per dimension.
struct DomainSpec {
  std::vector<double> lower;
  std::vector<double> upper;
  double base_step = 0.2;
  int exploration = 1;

  std::size_t dims() const noexcept { return lower.size(); }

  // Same [lo, hi] on every dimension.
  static DomainSpec uniform(std::size_t dims, double lo, double hi, double base_step,
                            int exploration);

  // Throws InvalidArgument on a violated invariant.
  void validate() const;

  bool contains(std::span<const double> x) const noexcept;
};

// 2k-1 ascending candidates centred on the current coordinate. Indices are
// 0-based; the center sits at k-1.
struct Window {
  std::vector<double> values;
  int k = 1;

  std::size_t size() const noexcept { return values.size(); }
  std::size_t center_index() const noexcept { return static_cast<std::size_t>(k - 1); }
};

Window neighbor_window(double center, double step, int k);

bool in_bounds(double x, std::size_t dim, const DomainSpec& domain) noexcept;

// Uniform draw over the base-step grid {lb, lb+h, ...} clipped to the box,
// independently per dimension.
Point sample_initial(const DomainSpec& domain, std::mt19937_64& rng);

// Number of base-grid points in [lo, hi].
std::size_t grid_point_count(double lo, double hi, double step) noexcept;

}  // namespace swiftnav

#endif  // SWIFTNAV_GRID_HPP_
