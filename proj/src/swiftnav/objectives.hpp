#ifndef SWIFTNAV_OBJECTIVES_HPP_
#define SWIFTNAV_OBJECTIVES_HPP_

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "swiftnav/sdpa.hpp"

namespace swiftnav {

struct Box {
  std::vector<double> lower;
  std::vector<double> upper;

  static Box uniform(std::size_t dims, double lo, double hi);
  std::size_t dims() const noexcept { return lower.size(); }
};

// Objective restricted to one coordinate around a frozen base point. `at`
// must be safe to call concurrently; `set` moves the base point and is only
// called between batches of `at` calls.
class CoordinateProbe {
 public:
  virtual ~CoordinateProbe() = default;
  virtual double at(std::size_t dim, double value) const = 0;
  virtual void set(std::size_t dim, double value) = 0;
};

// Deterministic, pure objective over a box. May return +inf for hard
// infeasibility.
class Objective {
 public:
  virtual ~Objective() = default;

  virtual std::string name() const = 0;
  virtual const Box& box() const = 0;
  virtual double evaluate(std::span<const double> x) const = 0;
  virtual std::optional<double> known_optimum() const { return std::nullopt; }

  // Default copies the base point and re-evaluates in full on every call.
  // Separable objectives override this with O(1) updates.
  virtual std::unique_ptr<CoordinateProbe> probe(std::span<const double> base) const;

  std::size_t arity() const { return box().dims(); }
  double operator()(std::span<const double> x) const { return evaluate(x); }
};

using ObjectivePtr = std::shared_ptr<const Objective>;

// Wraps a plain callable; used by the C API and by tests.
class FunctionObjective final : public Objective {
 public:
  using Fn = std::function<double(std::span<const double>)>;

  FunctionObjective(std::string name, Box box, Fn fn,
                    std::optional<double> known_optimum = std::nullopt);

  std::string name() const override { return name_; }
  const Box& box() const override { return box_; }
  double evaluate(std::span<const double> x) const override { return fn_(x); }
  std::optional<double> known_optimum() const override { return optimum_; }

 private:
  std::string name_;
  Box box_;
  Fn fn_;
  std::optional<double> optimum_;
};

// ---------------------------------------------------------------------------
// Unconstrained benchmarks.

inline constexpr double kAckleyA = 20.0;
inline constexpr double kAckleyB = 0.2;

double ackley(std::span<const double> x);
double levy(std::span<const double> x);

class AckleyObjective final : public Objective {
 public:
  AckleyObjective(std::size_t dims, double lo = -10.0, double hi = 10.0);
  std::string name() const override { return "ackley"; }
  const Box& box() const override { return box_; }
  double evaluate(std::span<const double> x) const override { return ackley(x); }
  std::optional<double> known_optimum() const override { return 0.0; }
  std::unique_ptr<CoordinateProbe> probe(std::span<const double> base) const override;

 private:
  Box box_;
};

class LevyObjective final : public Objective {
 public:
  LevyObjective(std::size_t dims, double lo = -10.0, double hi = 10.0);
  std::string name() const override { return "levy"; }
  const Box& box() const override { return box_; }
  double evaluate(std::span<const double> x) const override { return levy(x); }
  std::optional<double> known_optimum() const override { return 0.0; }
  std::unique_ptr<CoordinateProbe> probe(std::span<const double> base) const override;

 private:
  Box box_;
};

// ---------------------------------------------------------------------------
// Quadratic penalties. A residual g is satisfied when g(x) <= 0.

inline constexpr double kDefaultPenalty = 1e4;

struct PenaltySpec {
  std::vector<std::function<double(std::span<const double>)>> residuals;
  double rho = kDefaultPenalty;
};

// raw + rho * sum_j max(0, g_j)^2; exactly raw on the feasible set.
double penalize(double raw, std::span<const double> residual_values, double rho);

class PenalizedObjective final : public Objective {
 public:
  PenalizedObjective(std::string name, Box box, FunctionObjective::Fn raw, PenaltySpec spec,
                     std::optional<double> known_optimum = std::nullopt);

  std::string name() const override { return name_; }
  const Box& box() const override { return box_; }
  double evaluate(std::span<const double> x) const override;
  std::optional<double> known_optimum() const override { return optimum_; }

  double raw(std::span<const double> x) const { return raw_(x); }
  // Largest positive residual; 0 when feasible.
  double max_violation(std::span<const double> x) const;

 private:
  std::string name_;
  Box box_;
  FunctionObjective::Fn raw_;
  PenaltySpec spec_;
  std::optional<double> optimum_;
};

// Process-synthesis MINLP over z = (y1..y4, x1..x3). The y's live on the same
// grid as x in [0, 1] with a binary-deviation penalty rho_b * (y (1 - y))^2.
namespace minlp {
inline constexpr std::size_t kDims = 7;
Box box();
double raw(std::span<const double> z);
std::vector<double> residuals(std::span<const double> z);
double objective(std::span<const double> z, double rho = kDefaultPenalty,
                 double binary_rho = kDefaultPenalty);

struct Audit {
  std::vector<double> point;  // y rounded to {0, 1}
  double value = 0.0;         // raw objective at the rounded point
  double max_violation = 0.0;
};
Audit audit(std::span<const double> z);
}  // namespace minlp

class MinlpObjective final : public Objective {
 public:
  explicit MinlpObjective(double rho = kDefaultPenalty, double binary_rho = kDefaultPenalty);
  std::string name() const override { return "minlp"; }
  const Box& box() const override { return box_; }
  double evaluate(std::span<const double> z) const override {
    return minlp::objective(z, rho_, binary_rho_);
  }

 private:
  Box box_;
  double rho_;
  double binary_rho_;
};

// Quartic objective with two quadratic constraints on [-8, 10]^2.
namespace quartic {
Box box();
double raw(std::span<const double> x);
std::vector<double> residuals(std::span<const double> x);
double objective(std::span<const double> x, double rho = kDefaultPenalty);
}  // namespace quartic

class QuarticObjective final : public Objective {
 public:
  explicit QuarticObjective(double rho = kDefaultPenalty);
  std::string name() const override { return "quartic"; }
  const Box& box() const override { return box_; }
  double evaluate(std::span<const double> x) const override {
    return quartic::objective(x, rho_);
  }
  // The raw minimum over the box is feasible, so it is also the penalized one.
  std::optional<double> known_optimum() const override { return -181.0; }

 private:
  Box box_;
  double rho_;
};

// ---------------------------------------------------------------------------
// Chebyshev center of the pinched set
//   K = {y in [0,1]^2 : |y| >= 1/3, |y - (1,0)| >= 2/3}.

bool cheb_member(double y1, double y2) noexcept;

class ChebyshevObjective final : public Objective {
 public:
  // resolution x resolution grid on [0,1]^2, endpoints included.
  explicit ChebyshevObjective(std::size_t resolution = 2000);

  std::string name() const override { return "chebyshev"; }
  const Box& box() const override { return box_; }
  // max over the K-grid of |x - y|.
  double evaluate(std::span<const double> x) const override;

  std::size_t resolution() const noexcept { return resolution_; }
  std::size_t member_count() const noexcept { return member_count_; }
  // Convex-hull vertices of the K-grid; the farthest grid point from any x
  // is one of them.
  const std::vector<std::array<double, 2>>& hull() const noexcept { return hull_; }

 private:
  Box box_;
  std::size_t resolution_;
  std::size_t member_count_ = 0;
  std::vector<std::array<double, 2>> hull_;
};

// ---------------------------------------------------------------------------
// SDP in SDPA dual form: min c.x + rho * max(0, -lambda_min(sum x_i F_i - F_0))^2.

class SdpObjective final : public Objective {
 public:
  SdpObjective(SdpProblem problem, double rho = kDefaultPenalty, double lo = -4.0,
               double hi = 4.0);

  std::string name() const override { return "sdp"; }
  const Box& box() const override { return box_; }
  double evaluate(std::span<const double> x) const override;

  const SdpProblem& problem() const noexcept { return problem_; }
  double linear_cost(std::span<const double> x) const;
  double min_eigenvalue(std::span<const double> x) const;

 private:
  SdpProblem problem_;
  AssembledProblem assembled_;
  double rho_;
  Box box_;
};

// ---------------------------------------------------------------------------
// Registry: "ackley", "levy", "minlp", "quartic", "chebyshev", "sdp:<path>".

struct ObjectiveOptions {
  std::size_t dims = 2;               // ackley / levy only
  std::optional<double> lower;        // overrides the default box when set
  std::optional<double> upper;
  double rho = kDefaultPenalty;
  double binary_rho = kDefaultPenalty;
  std::size_t resolution = 2000;      // chebyshev K-grid
};

bool is_known_problem(const std::string& name);
ObjectivePtr make_objective(const std::string& name, const ObjectiveOptions& options);

}  // namespace swiftnav

#endif  // SWIFTNAV_OBJECTIVES_HPP_
