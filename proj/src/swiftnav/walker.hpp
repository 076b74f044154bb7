#ifndef SWIFTNAV_WALKER_HPP_
#define SWIFTNAV_WALKER_HPP_

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace swiftnav {

// exp(-(f - shift) / T). +inf and NaN objective values map to 0.
double stationary_weight(double f_value, double temperature, double shift);

// Cached stationary weights over one window of 2k-1 candidates (the
// pi-table). Slots are filled lazily from a source that returns the
// objective value at a window index (+inf for an infeasible or
// out-of-bounds candidate). Weights are held relative to `shift` so that
// exp never sees the raw objective scale; the kernel below is invariant to
// that common factor.
//
// Window indices are 0-based. Candidates past either end of the table are
// treated as zero-weight states, which is what lets the kernel be evaluated
// from any source index s, not only the center.
class WeightTable {
 public:
  using Source = std::function<double(std::size_t)>;

  WeightTable(int k, double temperature, double shift, Source source);

  // Fully evaluated table from explicit nonnegative weights (odd length).
  static WeightTable from_weights(std::span<const double> weights);

  int k() const noexcept { return k_; }
  std::size_t size() const noexcept { return slots_.size(); }
  double shift() const noexcept { return shift_; }
  double temperature() const noexcept { return temperature_; }

  bool evaluated(std::size_t j) const { return slots_.at(j).evaluated; }
  // Number of slots pulled from the source so far.
  std::size_t source_calls() const noexcept { return source_calls_; }

  double weight(std::size_t j);
  // log weight; -inf for a zero-weight slot.
  double log_weight(std::size_t j);
  // Objective value the slot was built from (+inf when infeasible).
  double objective_value(std::size_t j);
  bool positive(std::size_t j);

  // 1 / sum of weights in the inner window ending at ell, split into a
  // direct reciprocal (fast) or a log-sum (when weights would overflow or
  // underflow). ell may run past the table end.
  struct WindowSum {
    bool ready = false;
    bool fast = false;
    double inverse = 0.0;
    double log_sum = 0.0;
  };
  const WindowSum& window_sum(std::size_t ell);

 private:
  struct Slot {
    bool evaluated = false;
    double objective = 0.0;
    double log_weight = 0.0;
    double weight = 0.0;
  };

  WeightTable() = default;
  void ensure(std::size_t j);

  int k_ = 1;
  double temperature_ = 1.0;
  double shift_ = 0.0;
  Source source_;
  std::vector<Slot> slots_;
  std::vector<WindowSum> windows_;
  std::size_t source_calls_ = 0;
};

// Walker slice transition probability p(r | s) over window indices:
//   p(r|s) = pi(r)/k * sum_{l=max(s,r)}^{min(s,r)+k-1} 1 / sum_{j=l-k+1}^{l} pi(j).
// Returns 0 outside the support (|r - s| >= k) and when pi(r) = 0, before
// touching any inner sum. Throws ContractViolation if pi(s) = 0.
double transition_prob(std::size_t r, std::size_t s, WeightTable& weights);

// All 2k-1 components of p(. | s). Throws NumericError when the mass is off
// one by more than 1e-9.
std::vector<double> window_distribution(std::size_t s, WeightTable& weights);

// Smallest index whose cumulative mass reaches zeta (0 < zeta < 1). Slots are
// evaluated only as far as the scan needs. Falls back to s if rounding leaves
// the total below zeta.
std::size_t sample_window(std::size_t s, WeightTable& weights, double zeta);

}  // namespace swiftnav

#endif  // SWIFTNAV_WALKER_HPP_
