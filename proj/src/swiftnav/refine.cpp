#include "swiftnav/refine.hpp"

#include <algorithm>
#include <cmath>

#include "swiftnav/errors.hpp"

namespace swiftnav {

void RefineParams::validate() const {
  if (p < 1) throw InvalidArgument("refinement p must be >= 1");
  if (q < 1) throw InvalidArgument("refinement q must be >= 1");
  if (!(mesh_factor > 1.0)) throw InvalidArgument("mesh factor must be > 1");
  if (!(band_floor >= 0.0)) throw InvalidArgument("band floor must be >= 0");
}

RefineState RefineState::start(double base_step, double initial_value,
                               const RefineParams& params) {
  params.validate();
  if (!(base_step > 0.0)) throw InvalidArgument("base step must be positive");
  RefineState s;
  s.params = params;
  s.base_step = base_step;
  s.best_value = initial_value;
  s.old_benchmark = initial_value;
  return s;
}

double RefineState::step() const noexcept {
  return base_step / std::pow(params.mesh_factor, level);
}

bool in_band(double value, double best_value, double band_floor) noexcept {
  const double half = std::max(0.1 * std::fabs(best_value), band_floor);
  return best_value - half <= value && value <= best_value + half;
}

RefineState adapt_refine(RefineState s, double current_value) {
  if (current_value < s.best_value) {
    s.old_benchmark = s.best_value;
    s.iteration_count = 0;
    s.best_value = current_value;
    if (s.reduced) s.reduced_iteration_count = 0;
  } else if (s.reduced) {
    ++s.reduced_iteration_count;
  } else {
    ++s.iteration_count;
  }

  const double floor = s.params.band_floor;
  if (!s.reduced && s.iteration_count >= s.params.p &&
      in_band(current_value, s.best_value, floor)) {
    ++s.level;
    s.reduced = true;
    s.reduced_iteration_count = 0;
  }

  if (s.reduced && s.reduced_iteration_count >= s.params.q) {
    if (in_band(s.old_benchmark, s.best_value, floor)) {
      s.level = 0;
      s.reduced = false;
    } else {
      ++s.level;
    }
    s.reduced_iteration_count = 0;
  }
  return s;
}

}  // namespace swiftnav
