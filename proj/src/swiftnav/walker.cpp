#include "swiftnav/walker.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "swiftnav/errors.hpp"

namespace swiftnav {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
// exp stays finite and normal for log weights inside this band, and a sum of
// a few hundred such terms cannot overflow.
constexpr double kFastLogLimit = 700.0;

}  // namespace

double stationary_weight(double f_value, double temperature, double shift) {
  if (!(temperature > 0.0)) throw InvalidArgument("temperature must be positive");
  if (std::isnan(f_value) || f_value == HUGE_VAL) return 0.0;
  return std::exp(-(f_value - shift) / temperature);
}

WeightTable::WeightTable(int k, double temperature, double shift, Source source)
    : k_(k), temperature_(temperature), shift_(shift), source_(std::move(source)) {
  if (k < 1) throw InvalidArgument("exploration parameter k must be >= 1");
  if (!(temperature > 0.0)) throw InvalidArgument("temperature must be positive");
  slots_.resize(static_cast<std::size_t>(2 * k - 1));
  windows_.resize(static_cast<std::size_t>(3 * k - 2));
}

WeightTable WeightTable::from_weights(std::span<const double> weights) {
  if (weights.empty() || weights.size() % 2 == 0)
    throw InvalidArgument("weight table length must be odd (2k-1)");
  WeightTable t;
  t.k_ = static_cast<int>((weights.size() + 1) / 2);
  t.slots_.resize(weights.size());
  t.windows_.resize(static_cast<std::size_t>(3 * t.k_ - 2));
  for (std::size_t j = 0; j < weights.size(); ++j) {
    const double w = weights[j];
    if (!(w >= 0.0) || std::isinf(w)) throw InvalidArgument("weights must be finite and >= 0");
    Slot& slot = t.slots_[j];
    slot.evaluated = true;
    slot.weight = w;
    slot.log_weight = w > 0.0 ? std::log(w) : kNegInf;
    slot.objective = w > 0.0 ? -slot.log_weight : HUGE_VAL;
  }
  return t;
}

void WeightTable::ensure(std::size_t j) {
  Slot& slot = slots_.at(j);
  if (slot.evaluated) return;
  if (!source_) throw ContractViolation("weight slot has no source");
  const double f = source_(j);
  ++source_calls_;
  slot.evaluated = true;
  if (std::isnan(f) || f == HUGE_VAL) {
    slot.objective = HUGE_VAL;
    slot.log_weight = kNegInf;
    slot.weight = 0.0;
    return;
  }
  slot.objective = f;
  slot.log_weight = -(f - shift_) / temperature_;
  slot.weight = slot.log_weight > kFastLogLimit ? HUGE_VAL
                                                : stationary_weight(f, temperature_, shift_);
}

double WeightTable::weight(std::size_t j) {
  ensure(j);
  return slots_[j].weight;
}

double WeightTable::log_weight(std::size_t j) {
  ensure(j);
  return slots_[j].log_weight;
}

double WeightTable::objective_value(std::size_t j) {
  ensure(j);
  return slots_[j].objective;
}

bool WeightTable::positive(std::size_t j) { return log_weight(j) > kNegInf; }

const WeightTable::WindowSum& WeightTable::window_sum(std::size_t ell) {
  WindowSum& ws = windows_.at(ell);
  if (ws.ready) return ws;
  const std::size_t k = static_cast<std::size_t>(k_);
  const std::size_t first = ell + 1 >= k ? ell + 1 - k : 0;
  const std::size_t last = std::min(ell, slots_.size() - 1);

  double top = kNegInf;
  for (std::size_t j = first; j <= last; ++j) top = std::max(top, log_weight(j));

  ws.ready = true;
  if (top == kNegInf) {
    ws.fast = true;
    ws.inverse = HUGE_VAL;
    ws.log_sum = kNegInf;
  } else if (top >= -kFastLogLimit && top <= kFastLogLimit) {
    double sum = 0.0;
    for (std::size_t j = first; j <= last; ++j) sum += slots_[j].weight;
    ws.fast = true;
    ws.inverse = 1.0 / sum;
    ws.log_sum = std::log(sum);
  } else {
    double scaled = 0.0;
    for (std::size_t j = first; j <= last; ++j) scaled += std::exp(slots_[j].log_weight - top);
    ws.fast = false;
    ws.log_sum = top + std::log(scaled);
    ws.inverse = std::exp(-ws.log_sum);
  }
  return ws;
}

double transition_prob(std::size_t r, std::size_t s, WeightTable& weights) {
  const std::size_t n = weights.size();
  if (r >= n || s >= n) throw InvalidArgument("window index out of range");
  const std::size_t k = static_cast<std::size_t>(weights.k());
  const std::size_t gap = r > s ? r - s : s - r;
  if (gap >= k) return 0.0;
  if (!weights.positive(s))
    throw ContractViolation("transition from zero-weight state " + std::to_string(s));
  if (!weights.positive(r)) return 0.0;

  const std::size_t lo = std::max(s, r);
  const std::size_t hi = std::min(s, r) + k - 1;
  double fast_inverse = 0.0;
  double slow_terms = 0.0;
  const double log_r = weights.log_weight(r);
  for (std::size_t ell = lo; ell <= hi; ++ell) {
    const auto& ws = weights.window_sum(ell);
    if (ws.fast)
      fast_inverse += ws.inverse;
    else
      slow_terms += std::exp(log_r - ws.log_sum);
  }
  const double kd = static_cast<double>(k);
  double p = slow_terms / kd;
  if (fast_inverse > 0.0) p += weights.weight(r) / kd * fast_inverse;
  return p;
}

std::vector<double> window_distribution(std::size_t s, WeightTable& weights) {
  std::vector<double> dist(weights.size());
  double total = 0.0;
  for (std::size_t r = 0; r < dist.size(); ++r) {
    dist[r] = transition_prob(r, s, weights);
    total += dist[r];
  }
  if (!(std::fabs(total - 1.0) <= 1e-9))
    throw NumericError("window distribution mass " + std::to_string(total) + " != 1");
  return dist;
}

std::size_t sample_window(std::size_t s, WeightTable& weights, double zeta) {
  if (!(zeta > 0.0 && zeta < 1.0)) throw InvalidArgument("zeta must lie in (0, 1)");
  double cumulative = 0.0;
  for (std::size_t r = 0; r < weights.size(); ++r) {
    cumulative += transition_prob(r, s, weights);
    if (cumulative >= zeta) return r;
  }
  return s;
}

}  // namespace swiftnav
