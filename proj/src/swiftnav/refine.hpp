#ifndef SWIFTNAV_REFINE_HPP_
#define SWIFTNAV_REFINE_HPP_

namespace swiftnav {

struct RefineParams {
  int p = 50;                // stagnant iterations before the first reduction
  int q = 30;                // iterations spent at a reduced step before deciding
  double mesh_factor = 2.0;  // mu > 1
  double band_floor = 1e-3;  // minimum half-width of the acceptance band

  void validate() const;
};

// Adaptive-refinement state machine. The step is always base_step / mu^level,
// so a restoration lands exactly on base_step.
struct RefineState {
  RefineParams params;
  double base_step = 0.0;
  int level = 0;
  bool reduced = false;
  int iteration_count = 0;
  int reduced_iteration_count = 0;
  double best_value = 0.0;
  double old_benchmark = 0.0;

  static RefineState start(double base_step, double initial_value, const RefineParams& params);

  double step() const noexcept;
};

// [best - w, best + w] with w = max(0.1 |best|, band_floor).
bool in_band(double value, double best_value, double band_floor) noexcept;

// One AdapRef update after observing the objective at the new state.
//  (a) improvement: old_benchmark <- best, best <- value, iteration_count <- 0,
//      reduced_iteration_count <- 0 when reduced;
//  (b) otherwise bump reduced_iteration_count when reduced, else iteration_count;
//  (c) not reduced, iteration_count >= p and value in band: one level down,
//      enter reduced mode;
//  (d) reduced and reduced_iteration_count >= q: restore base_step if
//      old_benchmark is in band, else one more level down; counter resets.
RefineState adapt_refine(RefineState state, double current_value);

}  // namespace swiftnav

#endif  // SWIFTNAV_REFINE_HPP_
