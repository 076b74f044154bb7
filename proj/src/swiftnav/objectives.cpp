#include "swiftnav/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "swiftnav/errors.hpp"

namespace swiftnav {
namespace {

constexpr double kPi = std::numbers::pi;

// Generic probe: one private copy of the point per calling thread.
class CopyProbe final : public CoordinateProbe {
 public:
  CopyProbe(const Objective& objective, std::span<const double> base)
      : objective_(objective), base_(base.begin(), base.end()) {}

  double at(std::size_t dim, double value) const override {
    thread_local std::vector<double> scratch;
    scratch.assign(base_.begin(), base_.end());
    scratch[dim] = value;
    return objective_.evaluate(scratch);
  }

  void set(std::size_t dim, double value) override { base_[dim] = value; }

 private:
  const Objective& objective_;
  std::vector<double> base_;
};

double ackley_from_sums(double sum_sq, double sum_cos, double n) {
  // The running sum of squares can dip a hair below zero after updates.
  const double rms = std::sqrt(std::max(0.0, sum_sq) / n);
  return -kAckleyA * std::exp(-kAckleyB * rms) - std::exp(sum_cos / n) + kAckleyA +
         std::numbers::e;
}

class AckleyProbe final : public CoordinateProbe {
 public:
  explicit AckleyProbe(std::span<const double> base) : base_(base.begin(), base.end()) {
    for (double v : base_) {
      sum_sq_ += v * v;
      sum_cos_ += std::cos(2.0 * kPi * v);
    }
  }

  double at(std::size_t dim, double value) const override {
    const double old = base_[dim];
    const double sq = sum_sq_ - old * old + value * value;
    const double cs = sum_cos_ - std::cos(2.0 * kPi * old) + std::cos(2.0 * kPi * value);
    return ackley_from_sums(sq, cs, static_cast<double>(base_.size()));
  }

  void set(std::size_t dim, double value) override {
    const double old = base_[dim];
    sum_sq_ += value * value - old * old;
    sum_cos_ += std::cos(2.0 * kPi * value) - std::cos(2.0 * kPi * old);
    base_[dim] = value;
  }

 private:
  std::vector<double> base_;
  double sum_sq_ = 0.0;
  double sum_cos_ = 0.0;
};

double sq(double v) { return v * v; }

// Contribution of coordinate i (0-based) to the Levy sum; the function is a
// sum of per-coordinate terms.
double levy_term(std::size_t i, std::size_t n, double x) {
  const double w = 1.0 + (x - 1.0) / 4.0;
  double t = 0.0;
  if (i == 0) t += sq(std::sin(kPi * w));
  if (i + 1 < n) t += sq(w - 1.0) * (1.0 + 10.0 * sq(std::sin(kPi * w + 1.0)));
  if (i + 1 == n) t += sq(w - 1.0) * (1.0 + sq(std::sin(2.0 * kPi * w)));
  return t;
}

class LevyProbe final : public CoordinateProbe {
 public:
  explicit LevyProbe(std::span<const double> base) : base_(base.begin(), base.end()) {
    total_ = levy(base_);
  }

  double at(std::size_t dim, double value) const override {
    const std::size_t n = base_.size();
    return total_ - levy_term(dim, n, base_[dim]) + levy_term(dim, n, value);
  }

  void set(std::size_t dim, double value) override {
    const std::size_t n = base_.size();
    total_ += levy_term(dim, n, value) - levy_term(dim, n, base_[dim]);
    base_[dim] = value;
  }

 private:
  std::vector<double> base_;
  double total_ = 0.0;
};

void check_nonempty(std::size_t dims) {
  if (dims == 0) throw InvalidArgument("objective needs at least one dimension");
}

}  // namespace

Box Box::uniform(std::size_t dims, double lo, double hi) {
  return Box{std::vector<double>(dims, lo), std::vector<double>(dims, hi)};
}

std::unique_ptr<CoordinateProbe> Objective::probe(std::span<const double> base) const {
  return std::make_unique<CopyProbe>(*this, base);
}

FunctionObjective::FunctionObjective(std::string name, Box box, Fn fn,
                                     std::optional<double> known_optimum)
    : name_(std::move(name)), box_(std::move(box)), fn_(std::move(fn)), optimum_(known_optimum) {
  if (!fn_) throw InvalidArgument("objective function is empty");
}

// ---------------------------------------------------------------------------

double ackley(std::span<const double> x) {
  check_nonempty(x.size());
  double sum_sq = 0.0;
  double sum_cos = 0.0;
  for (double v : x) {
    sum_sq += v * v;
    sum_cos += std::cos(2.0 * kPi * v);
  }
  return ackley_from_sums(sum_sq, sum_cos, static_cast<double>(x.size()));
}

double levy(std::span<const double> x) {
  check_nonempty(x.size());
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) total += levy_term(i, x.size(), x[i]);
  return total;
}

AckleyObjective::AckleyObjective(std::size_t dims, double lo, double hi)
    : box_(Box::uniform(dims, lo, hi)) {
  check_nonempty(dims);
}

std::unique_ptr<CoordinateProbe> AckleyObjective::probe(std::span<const double> base) const {
  return std::make_unique<AckleyProbe>(base);
}

LevyObjective::LevyObjective(std::size_t dims, double lo, double hi)
    : box_(Box::uniform(dims, lo, hi)) {
  check_nonempty(dims);
}

std::unique_ptr<CoordinateProbe> LevyObjective::probe(std::span<const double> base) const {
  return std::make_unique<LevyProbe>(base);
}

// ---------------------------------------------------------------------------

double penalize(double raw, std::span<const double> residual_values, double rho) {
  double violation = 0.0;
  for (double g : residual_values)
    if (g > 0.0) violation += g * g;
  return violation == 0.0 ? raw : raw + rho * violation;
}

PenalizedObjective::PenalizedObjective(std::string name, Box box, FunctionObjective::Fn raw,
                                       PenaltySpec spec, std::optional<double> known_optimum)
    : name_(std::move(name)),
      box_(std::move(box)),
      raw_(std::move(raw)),
      spec_(std::move(spec)),
      optimum_(known_optimum) {
  if (!(spec_.rho > 0.0)) throw InvalidArgument("penalty weight must be positive");
}

double PenalizedObjective::evaluate(std::span<const double> x) const {
  std::vector<double> g;
  g.reserve(spec_.residuals.size());
  for (const auto& r : spec_.residuals) g.push_back(r(x));
  return penalize(raw_(x), g, spec_.rho);
}

double PenalizedObjective::max_violation(std::span<const double> x) const {
  double worst = 0.0;
  for (const auto& r : spec_.residuals) worst = std::max(worst, r(x));
  return worst;
}

// ---------------------------------------------------------------------------

namespace minlp {

Box box() {
  return Box{{0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0}, {1.0, 1.0, 1.0, 1.0, 1.2, 1.8, 2.5}};
}

double raw(std::span<const double> z) {
  if (z.size() != kDims) throw InvalidArgument("minlp expects 7 variables");
  const double y1 = z[0], y2 = z[1], y3 = z[2], y4 = z[3];
  const double x1 = z[4], x2 = z[5], x3 = z[6];
  if (y4 < 0.0) return HUGE_VAL;
  return sq(y1 - 1.0) + sq(y2 - 2.0) + sq(y3 - 1.0) - std::log(y4 + 1.0) + sq(x1 - 1.0) +
         sq(x2 - 2.0) + sq(x3 - 3.0);
}

std::vector<double> residuals(std::span<const double> z) {
  if (z.size() != kDims) throw InvalidArgument("minlp expects 7 variables");
  const double y1 = z[0], y2 = z[1], y3 = z[2], y4 = z[3];
  const double x1 = z[4], x2 = z[5], x3 = z[6];
  return {
      y1 + y2 + y3 + x1 + x2 + x3 - 5.0,
      sq(y2) + sq(x1) + sq(x2) + sq(x3) - 5.5,
      y1 + x1 - 1.2,
      y2 + x2 - 1.8,
      y3 + x3 - 2.5,
      y4 + x1 - 1.2,
      sq(y2) + sq(x2) - 1.64,
      sq(y3) + sq(x3) - 4.25,
      sq(y2) + sq(x3) - 4.64,
  };
}

double objective(std::span<const double> z, double rho, double binary_rho) {
  const double base = raw(z);
  if (base == HUGE_VAL) return HUGE_VAL;
  double binary = 0.0;
  for (std::size_t i = 0; i < 4; ++i) binary += sq(z[i] * (1.0 - z[i]));
  return penalize(base, residuals(z), rho) + binary_rho * binary;
}

Audit audit(std::span<const double> z) {
  Audit a;
  a.point.assign(z.begin(), z.end());
  for (std::size_t i = 0; i < 4; ++i) a.point[i] = a.point[i] < 0.5 ? 0.0 : 1.0;
  a.value = raw(a.point);
  for (double g : residuals(a.point)) a.max_violation = std::max(a.max_violation, g);
  const Box b = box();
  for (std::size_t i = 4; i < kDims; ++i) {
    a.max_violation = std::max(a.max_violation, b.lower[i] - a.point[i]);
    a.max_violation = std::max(a.max_violation, a.point[i] - b.upper[i]);
  }
  return a;
}

}  // namespace minlp

MinlpObjective::MinlpObjective(double rho, double binary_rho)
    : box_(minlp::box()), rho_(rho), binary_rho_(binary_rho) {
  if (!(rho > 0.0) || !(binary_rho > 0.0)) throw InvalidArgument("penalty weight must be positive");
}

namespace quartic {

Box box() { return Box::uniform(2, -8.0, 10.0); }

double raw(std::span<const double> x) {
  if (x.size() != 2) throw InvalidArgument("quartic expects 2 variables");
  const double x1 = x[0], x2 = x[1];
  return sq(sq(x1)) - 14.0 * sq(x1) + 24.0 * x1 - sq(x2);
}

std::vector<double> residuals(std::span<const double> x) {
  if (x.size() != 2) throw InvalidArgument("quartic expects 2 variables");
  const double x1 = x[0], x2 = x[1];
  return {-x1 + x2 - 8.0, x2 - sq(x1) - 2.0 * x1 + 2.0};
}

double objective(std::span<const double> x, double rho) {
  return penalize(raw(x), residuals(x), rho);
}

}  // namespace quartic

QuarticObjective::QuarticObjective(double rho) : box_(quartic::box()), rho_(rho) {
  if (!(rho > 0.0)) throw InvalidArgument("penalty weight must be positive");
}

// ---------------------------------------------------------------------------

bool cheb_member(double y1, double y2) noexcept {
  if (!(y1 >= 0.0 && y1 <= 1.0 && y2 >= 0.0 && y2 <= 1.0)) return false;
  return std::sqrt(y1 * y1 + y2 * y2) >= 1.0 / 3.0 &&
         std::sqrt((y1 - 1.0) * (y1 - 1.0) + y2 * y2) >= 2.0 / 3.0;
}

namespace {

using P2 = std::array<double, 2>;

double cross(const P2& o, const P2& a, const P2& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Andrew's monotone chain; input sorted by (x, y), collinear points dropped.
std::vector<P2> convex_hull(std::vector<P2> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<P2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

}  // namespace

ChebyshevObjective::ChebyshevObjective(std::size_t resolution)
    : box_(Box::uniform(2, 0.0, 1.0)), resolution_(resolution) {
  if (resolution < 2) throw ConfigError("resolution", "Chebyshev K-grid needs resolution >= 2");
  const double denom = static_cast<double>(resolution - 1);
  // Only the lowest and highest member of each column can be hull vertices.
  std::vector<P2> extremes;
  for (std::size_t a = 0; a < resolution; ++a) {
    const double y1 = static_cast<double>(a) / denom;
    bool found = false;
    P2 lo{}, hi{};
    for (std::size_t b = 0; b < resolution; ++b) {
      const double y2 = static_cast<double>(b) / denom;
      if (!cheb_member(y1, y2)) continue;
      ++member_count_;
      if (!found) lo = {y1, y2};
      hi = {y1, y2};
      found = true;
    }
    if (found) {
      extremes.push_back(lo);
      extremes.push_back(hi);
    }
  }
  if (member_count_ == 0) throw ConfigError("resolution", "Chebyshev K-grid is empty");
  hull_ = convex_hull(std::move(extremes));
}

double ChebyshevObjective::evaluate(std::span<const double> x) const {
  if (x.size() != 2) throw InvalidArgument("chebyshev expects 2 variables");
  double far = 0.0;
  for (const auto& y : hull_) far = std::max(far, sq(x[0] - y[0]) + sq(x[1] - y[1]));
  return std::sqrt(far);
}

// ---------------------------------------------------------------------------

SdpObjective::SdpObjective(SdpProblem problem, double rho, double lo, double hi)
    : problem_(std::move(problem)),
      assembled_(AssembledProblem::from(problem_)),
      rho_(rho),
      box_(Box::uniform(static_cast<std::size_t>(problem_.m), lo, hi)) {
  if (problem_.cost.size() != static_cast<std::size_t>(problem_.m))
    throw ConfigError("sdp", "cost vector length differs from mDIM");
  if (!(rho > 0.0)) throw InvalidArgument("penalty weight must be positive");
}

double SdpObjective::linear_cost(std::span<const double> x) const {
  if (x.size() != problem_.cost.size())
    throw ConfigError("sdp", "expected " + std::to_string(problem_.cost.size()) + " variables");
  double c = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) c += problem_.cost[i] * x[i];
  return c;
}

double SdpObjective::min_eigenvalue(std::span<const double> x) const {
  const auto blocks = assemble(assembled_, x);
  return swiftnav::min_eigenvalue(blocks);
}

double SdpObjective::evaluate(std::span<const double> x) const {
  const double cost = linear_cost(x);
  const double lambda = min_eigenvalue(x);
  return lambda >= 0.0 ? cost : cost + rho_ * lambda * lambda;
}

// ---------------------------------------------------------------------------

bool is_known_problem(const std::string& name) {
  return name == "ackley" || name == "levy" || name == "minlp" || name == "quartic" ||
         name == "chebyshev" || name.rfind("sdp:", 0) == 0;
}

ObjectivePtr make_objective(const std::string& name, const ObjectiveOptions& o) {
  const bool custom_box = o.lower.has_value() || o.upper.has_value();
  auto bounds = [&](double lo, double hi) {
    const double l = o.lower.value_or(lo);
    const double u = o.upper.value_or(hi);
    if (!(l < u)) throw ConfigError("domain", "lower bound must be below upper bound");
    return std::pair{l, u};
  };
  if (name == "ackley" || name == "levy") {
    if (o.dims == 0) throw ConfigError("dims", "must be >= 1");
    const auto [l, u] = bounds(-10.0, 10.0);
    if (name == "ackley") return std::make_shared<AckleyObjective>(o.dims, l, u);
    return std::make_shared<LevyObjective>(o.dims, l, u);
  }
  if (name == "minlp") {
    if (custom_box) throw ConfigError("domain", "minlp has fixed per-variable bounds");
    return std::make_shared<MinlpObjective>(o.rho, o.binary_rho);
  }
  if (name == "quartic") {
    if (custom_box) throw ConfigError("domain", "quartic has a fixed box");
    return std::make_shared<QuarticObjective>(o.rho);
  }
  if (name == "chebyshev") {
    if (custom_box) throw ConfigError("domain", "chebyshev centers live in [0,1]^2");
    return std::make_shared<ChebyshevObjective>(o.resolution);
  }
  if (name.rfind("sdp:", 0) == 0) {
    const auto [l, u] = bounds(-4.0, 4.0);
    return std::make_shared<SdpObjective>(load_sdpa_sparse(name.substr(4)), o.rho, l, u);
  }
  throw ConfigError("problem", "unknown problem '" + name + "'");
}

}  // namespace swiftnav
