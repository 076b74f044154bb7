#include "swiftnav/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "swiftnav/errors.hpp"

namespace swiftnav {

DomainSpec DomainSpec::uniform(std::size_t dims, double lo, double hi, double base_step,
                               int exploration) {
  DomainSpec d;
  d.lower.assign(dims, lo);
  d.upper.assign(dims, hi);
  d.base_step = base_step;
  d.exploration = exploration;
  return d;
}

void DomainSpec::validate() const {
  if (lower.empty()) throw InvalidArgument("domain has no dimensions");
  if (lower.size() != upper.size())
    throw InvalidArgument("domain bound vectors differ in length");
  double min_width = HUGE_VAL;
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (!(lower[i] < upper[i]))
      throw InvalidArgument("domain dimension " + std::to_string(i) +
                            " needs lower < upper");
    min_width = std::min(min_width, upper[i] - lower[i]);
  }
  if (!(base_step > 0.0)) throw InvalidArgument("base step must be positive");
  if (base_step > min_width)
    throw InvalidArgument("base step exceeds the narrowest domain width");
  if (exploration < 1) throw InvalidArgument("exploration parameter k must be >= 1");
}

bool DomainSpec::contains(std::span<const double> x) const noexcept {
  if (x.size() != lower.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!(lower[i] <= x[i] && x[i] <= upper[i])) return false;
  return true;
}

Window neighbor_window(double center, double step, int k) {
  if (!(step > 0.0)) throw InvalidArgument("window step must be positive");
  if (k < 1) throw InvalidArgument("exploration parameter k must be >= 1");
  Window w;
  w.k = k;
  w.values.resize(static_cast<std::size_t>(2 * k - 1));
  // Offsets are integer multiples of the step, never accumulated sums.
  for (int j = 0; j < 2 * k - 1; ++j) {
    const int offset = j - (k - 1);
    w.values[static_cast<std::size_t>(j)] =
        offset == 0 ? center : center + static_cast<double>(offset) * step;
  }
  return w;
}

bool in_bounds(double x, std::size_t dim, const DomainSpec& domain) noexcept {
  return domain.lower[dim] <= x && x <= domain.upper[dim];
}

std::size_t grid_point_count(double lo, double hi, double step) noexcept {
  if (!(hi > lo)) return 1;
  // Tolerate rounding in (hi - lo) / step when the box is an exact multiple.
  const double cells = std::floor((hi - lo) / step + 1e-9);
  return static_cast<std::size_t>(cells) + 1;
}

Point sample_initial(const DomainSpec& domain, std::mt19937_64& rng) {
  Point x(domain.dims());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lo = domain.lower[i];
    const double hi = domain.upper[i];
    const std::size_t count = grid_point_count(lo, hi, domain.base_step);
    std::uniform_int_distribution<std::size_t> pick(0, count - 1);
    const std::size_t j = pick(rng);
    x[i] = std::min(hi, lo + static_cast<double>(j) * domain.base_step);
  }
  return x;
}

}  // namespace swiftnav
