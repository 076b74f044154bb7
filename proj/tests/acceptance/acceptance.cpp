// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.
//
// SWIFTNAV_ACCEPTANCE=reduced swaps the n = 1000 Ackley and Levy runs for
// n = 100, 300 iterations. SWIFTNAV_WORKERS sets the thread count (default:
// all hardware threads); results do not depend on it.
#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "swiftnav/anneal.hpp"
#include "swiftnav/config.hpp"
#include "swiftnav/errors.hpp"
#include "swiftnav/experiment.hpp"
#include "swiftnav/objectives.hpp"
#include "swiftnav/refine.hpp"
#include "swiftnav/report.hpp"
#include "swiftnav/sdpa.hpp"
#include "swiftnav/walker.hpp"

using namespace swiftnav;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!o.pass) ++failures;
  std::printf("[%s] %2d %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(),
              secs);
  std::fflush(stdout);
}

int workers() {
  if (const char* env = std::getenv(kWorkersEnv)) return std::max(1, std::atoi(env));
  return std::max(1u, std::thread::hardware_concurrency());
}

ExperimentConfig load(const char* name) {
  ExperimentConfig c = load_config(fs::path(SWIFTNAV_CONFIG_DIR) / name);
  c.workers = workers();
  return c;
}

bool reduced_scale() {
  const char* env = std::getenv("SWIFTNAV_ACCEPTANCE");
  return env && std::string(env) == "reduced";
}

std::vector<double> final_bests(const ExperimentResult& r, const std::string& algorithm) {
  std::vector<double> out;
  for (const auto& t : r.traces)
    if (t.algorithm == algorithm) out.push_back(t.best_value);
  return out;
}

const RunTrace& best_trace(const ExperimentResult& r) {
  return *std::min_element(r.traces.begin(), r.traces.end(),
                           [](const RunTrace& a, const RunTrace& b) {
                             return a.best_value < b.best_value;
                           });
}

// ---------------------------------------------------------------------------
// Kernel oracle: the transition double sum evaluated term by term in long
// double, 1-based, zero weight outside the table.

long double kernel_oracle(const std::vector<double>& w, int k, int r1, int s1) {
  const int size = static_cast<int>(w.size());
  auto weight = [&](int j) { return (j >= 1 && j <= size) ? static_cast<long double>(w[j - 1]) : 0.0L; };
  if (std::abs(r1 - s1) >= k || weight(r1) == 0.0L) return 0.0L;
  long double outer = 0.0L;
  for (int l = std::max(s1, r1); l <= std::min(s1, r1) + k - 1; ++l) {
    long double inner = 0.0L;
    for (int j = l - k + 1; j <= l; ++j) inner += weight(j);
    outer += 1.0L / inner;
  }
  return weight(r1) / k * outer;
}

Outcome kernel_properties() {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<int> pick_k(1, 8);
  std::uniform_real_distribution<double> value(0.0, 10.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  const int tables = 10000;
  double worst_sum = 0.0, worst_balance = 0.0, worst_oracle = 0.0;
  int with_boundary_zeros = 0;
  for (int t = 0; t < tables; ++t) {
    const int k = pick_k(rng);
    std::vector<double> w(2 * k - 1);
    for (auto& x : w) x = value(rng);
    if (k > 1 && coin(rng) < 0.4) {
      const int cut = 1 + static_cast<int>(coin(rng) * (k - 1));
      if (coin(rng) < 0.5)
        std::fill(w.begin(), w.begin() + cut, 0.0);
      else
        std::fill(w.end() - cut, w.end(), 0.0);
      ++with_boundary_zeros;
    }
    if (w[k - 1] == 0.0) w[k - 1] = 0.1 + value(rng);

    auto table = WeightTable::from_weights(w);
    std::vector<std::vector<double>> p(w.size());
    for (std::size_t s = 0; s < w.size(); ++s) {
      if (w[s] == 0.0) continue;
      p[s] = window_distribution(s, table);
      double sum = 0.0;
      for (double v : p[s]) sum += v;
      worst_sum = std::max(worst_sum, std::fabs(sum - 1.0));
      for (std::size_t r = 0; r < w.size(); ++r) {
        const double o = static_cast<double>(kernel_oracle(w, k, r + 1, s + 1));
        worst_oracle = std::max(worst_oracle, std::fabs(p[s][r] - o));
      }
    }
    for (std::size_t s = 0; s < w.size(); ++s)
      for (std::size_t r = 0; r < w.size(); ++r) {
        if (w[s] == 0.0 || w[r] == 0.0) continue;
        const double lhs = p[s][r] * w[s], rhs = p[r][s] * w[r];
        const double scale = std::max(std::fabs(lhs), std::fabs(rhs));
        if (scale > 0.0) worst_balance = std::max(worst_balance, std::fabs(lhs - rhs) / scale);
      }
  }

  // Uniform weights against (k - |d|) / k^2, within 4 ulp.
  double worst_ulps = 0.0;
  for (int k = 1; k <= 8; ++k) {
    auto table = WeightTable::from_weights(std::vector<double>(2 * k - 1, 1.0));
    const auto d = window_distribution(k - 1, table);
    for (int r = 0; r < 2 * k - 1; ++r) {
      const double exact = static_cast<double>(k - std::abs(r - (k - 1))) / (k * k);
      const double ulp = std::nextafter(exact, 2.0) - exact;
      worst_ulps = std::max(worst_ulps, std::fabs(d[r] - exact) / ulp);
    }
  }

  const bool pass = worst_sum <= 1e-12 && worst_balance <= 1e-12 && worst_oracle <= 1e-12 &&
                    worst_ulps <= 4.0;
  std::ostringstream os;
  os << tables << " tables (" << with_boundary_zeros << " with boundary zeros), max |sum-1| "
     << worst_sum << ", max balance rel " << worst_balance << ", max |p-oracle| " << worst_oracle
     << ", triangular max " << worst_ulps << " ulp (tol 1e-12, 1e-12, 1e-12, 4 ulp)";
  return {pass, os.str()};
}

Outcome hand_instance() {
  const std::vector<double> w{1.0, 2.0, 1.0};
  auto table = WeightTable::from_weights(w);
  const auto d = window_distribution(1, table);
  const double expect[3] = {1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0};
  double worst = 0.0;
  for (int r = 0; r < 3; ++r) {
    worst = std::max(worst, std::fabs(d[r] - expect[r]));
    worst = std::max(worst, std::fabs(d[r] - static_cast<double>(kernel_oracle(w, 2, r + 1, 2))));
  }
  std::ostringstream os;
  os.precision(17);
  os << "p = [" << d[0] << ", " << d[1] << ", " << d[2] << "], max error " << worst
     << " (tol 1e-15)";
  return {worst <= 1e-15, os.str()};
}

// ---------------------------------------------------------------------------
// Refinement script, hand simulated with p = 50, q = 30, mu = 2, h0 = 0.2,
// start value 100.

struct RefineExpect {
  double value, step;
  bool reduced;
  int count, reduced_count;
};

std::vector<RefineExpect> refine_script() {
  std::vector<RefineExpect> e;
  for (int i = 0; i < 10; ++i) e.push_back({99.0 - i, 0.2, false, 0, 0});
  for (int c = 1; c <= 49; ++c) e.push_back({95.0, 0.2, false, c, 0});
  e.push_back({200.0, 0.2, false, 50, 0});
  e.push_back({95.0, 0.1, true, 51, 0});
  for (int r = 1; r <= 29; ++r) e.push_back({95.0, 0.1, true, 51, r});
  e.push_back({95.0, 0.2, false, 51, 0});
  e.push_back({95.0, 0.1, true, 52, 0});
  e.push_back({50.0, 0.1, true, 0, 0});
  for (int r = 1; r <= 29; ++r) e.push_back({52.0, 0.1, true, 0, r});
  e.push_back({52.0, 0.05, true, 0, 0});
  for (int r = 1; r <= 29; ++r) e.push_back({52.0, 0.05, true, 0, r});
  e.push_back({52.0, 0.025, true, 0, 0});
  e.push_back({49.0, 0.025, true, 0, 0});
  for (int r = 1; r <= 29; ++r) e.push_back({52.0, 0.025, true, 0, r});
  e.push_back({52.0, 0.2, false, 0, 0});
  for (int c = 1; c <= 16; ++c) e.push_back({52.0, 0.2, false, c, 0});
  return e;
}

Outcome refine_trace() {
  const auto script = refine_script();
  auto s = RefineState::start(0.2, 100.0, RefineParams{});
  int improvements = 0, reductions = 0, restores = 0, deeper = 0;
  for (std::size_t t = 0; t < script.size(); ++t) {
    const auto before = s;
    s = adapt_refine(s, script[t].value);
    const auto& x = script[t];
    if (s.step() != x.step || s.reduced != x.reduced || s.iteration_count != x.count ||
        s.reduced_iteration_count != x.reduced_count)
      return {false, "diverges at step " + std::to_string(t + 1)};
    if (s.best_value < before.best_value) ++improvements;
    if (!before.reduced && s.reduced) ++reductions;
    if (before.reduced && !s.reduced) ++restores;
    if (before.reduced && s.reduced && s.step() < before.step()) ++deeper;
  }
  std::ostringstream os;
  os << script.size() << " steps match; improvements " << improvements << ", reductions "
     << reductions << ", restorations to h0 " << restores << ", further reductions " << deeper;
  return {script.size() == 200 && improvements && reductions && restores && deeper, os.str()};
}

Outcome regret_pairs() {
  const double a = log_regret(1.25856, 0.0), b = log_regret(0.61258, 0.0);
  const double ea = std::fabs(a - 0.22997), eb = std::fabs(b - (-0.490062));
  std::ostringstream os;
  os << "ln(1.25856) = " << a << ", ln(0.61258) = " << b << " (tol 1e-4)";
  return {ea <= 1e-4 && eb <= 1e-4, os.str()};
}

// ---------------------------------------------------------------------------

Outcome median_at_most(const ExperimentResult& r, double bar) {
  const double m = median(final_bests(r, "swiftnav"));
  std::ostringstream os;
  os << r.traces.size() << " seeds, median final best " << m << " (need <= " << bar
     << "), best " << best_trace(r).best_value;
  return {m <= bar, os.str()};
}

Outcome ackley_scale() {
  ExperimentConfig c = load("ackley_1000.cfg");
  if (reduced_scale()) {
    c.dims = 100;
    c.iterations = 300;
  }
  auto r = run_experiment(c);
  auto o = median_at_most(r, 1.0);
  o.detail = "n=" + std::to_string(c.dims) + ", " + o.detail;
  return o;
}

Outcome levy_scale() {
  ExperimentConfig c = load("levy_1000.cfg");
  if (reduced_scale()) {
    c.dims = 100;
    c.iterations = 300;
  }
  auto r = run_experiment(c);
  auto o = median_at_most(r, 3.0);
  o.detail = "n=" + std::to_string(c.dims) + ", " + o.detail;
  return o;
}

Outcome baseline_dominance() {
  std::ostringstream os;
  bool pass = true;
  for (const char* name : {"ackley_100.cfg", "levy_100.cfg"}) {
    const ExperimentConfig c = load(name);
    const auto r = run_experiment(c);
    const double sn = median(final_bests(r, "swiftnav"));
    const double mh = median(final_bests(r, "mh"));
    pass = pass && sn < mh;
    os << c.problem << ": swiftnav " << sn << " vs mh " << mh << "; ";
  }
  os << "n=100, 300 iterations, 10 seeds each";
  return {pass, os.str()};
}

Outcome minlp_run() {
  const auto r = run_experiment(load("minlp.cfg"));
  const auto& t = best_trace(r);
  const auto a = minlp::audit(t.best_point);
  std::ostringstream os;
  os << "best penalized " << t.best_value << ", rounded objective " << a.value
     << ", max violation " << a.max_violation << " at y = (";
  for (std::size_t i = 0; i < a.point.size(); ++i) os << (i ? ", " : "") << a.point[i];
  os << ") (need <= 5.0, violation <= 1e-6)";
  return {a.value <= 5.0 && a.max_violation <= 1e-6, os.str()};
}

Outcome quartic_run() {
  const auto r = run_experiment(load("quartic.cfg"));
  const auto& t = best_trace(r);
  double worst = 0.0;
  for (double g : quartic::residuals(t.best_point)) worst = std::max(worst, g);
  const double raw = quartic::raw(t.best_point);
  std::ostringstream os;
  os << "best " << t.best_value << " (raw " << raw << ") at (" << t.best_point[0] << ", "
     << t.best_point[1] << "), max violation " << worst << " (need <= -117.5, feasible)";
  return {raw <= -117.5 && t.best_value <= -117.5 && worst <= 1e-6, os.str()};
}

// Radius by brute force over the full K-grid, no hull.
double chebyshev_radius(double x1, double x2, std::size_t resolution) {
  double far = 0.0;
  const double step = 1.0 / static_cast<double>(resolution - 1);
  for (std::size_t i = 0; i < resolution; ++i)
    for (std::size_t j = 0; j < resolution; ++j) {
      const double y1 = i * step, y2 = j * step;
      if (y1 * y1 + y2 * y2 < 1.0 / 9.0) continue;
      if ((y1 - 1.0) * (y1 - 1.0) + y2 * y2 < 4.0 / 9.0) continue;
      far = std::max(far, std::hypot(x1 - y1, x2 - y2));
    }
  return far;
}

Outcome chebyshev_run() {
  const ExperimentConfig c = load("chebyshev.cfg");
  const auto r = run_experiment(c);
  const auto& t = best_trace(r);
  const double oracle = chebyshev_radius(t.best_point[0], t.best_point[1], c.resolution);
  const double dist = std::hypot(t.best_point[0] - 0.5, t.best_point[1] - 0.6111);
  std::ostringstream os;
  os << "radius " << t.best_value << " (brute force " << oracle << ") at (" << t.best_point[0]
     << ", " << t.best_point[1] << "), |r-0.6334| " << std::fabs(t.best_value - 0.6334)
     << ", center distance " << dist << " (tol 0.01, 0.02)";
  return {std::fabs(t.best_value - 0.6334) <= 0.01 && dist <= 0.02 &&
              std::fabs(oracle - t.best_value) <= 1e-12,
          os.str()};
}

// lambda_min of sum x_i F_i - F_0 assembled densely and handed to Eigen.
double eigen_lambda_min(const SdpProblem& p, const std::vector<double>& x) {
  const int order = static_cast<int>(p.order());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(order, order);
  std::vector<int> offset(p.block_sizes.size(), 0);
  for (std::size_t b = 1; b < p.block_sizes.size(); ++b)
    offset[b] = offset[b - 1] + std::abs(p.block_sizes[b - 1]);
  for (const auto& e : p.entries) {
    const double coef = e.matrix == 0 ? -1.0 : x[e.matrix - 1];
    const int i = offset[e.block - 1] + e.row - 1, j = offset[e.block - 1] + e.col - 1;
    m(i, j) += coef * e.value;
    if (i != j) m(j, i) += coef * e.value;
  }
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m).eigenvalues().minCoeff();
}

Outcome sdp_run() {
  const ExperimentConfig c = load("truss1.cfg");
  const auto r = run_experiment(c);
  const auto& t = best_trace(r);
  const auto problem = load_sdpa_sparse(c.problem.substr(4));
  const double lmin = eigen_lambda_min(problem, t.best_point);
  double cost = 0.0;
  for (int i = 0; i < problem.m; ++i) cost += problem.cost[i] * t.best_point[i];
  std::ostringstream os;
  os << "m=" << problem.m << ", best penalized " << t.best_value << " (c.x " << cost
     << "), lambda_min " << lmin << ", median " << median(final_bests(r, "swiftnav"))
     << " (need <= -8.5, lambda_min >= -1e-6)";
  return {t.best_value <= -8.5 && lmin >= -1e-6, os.str()};
}

// CSV text with the timing columns dropped, compared byte for byte.
std::string untimed(const fs::path& path) {
  std::ifstream f(path);
  std::string line, out;
  std::vector<bool> keep;
  while (std::getline(f, line)) {
    if (!line.empty() && line[0] == '#') {
      out += line + '\n';
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (keep.empty())
      for (const auto& h : cells) keep.push_back(h != "elapsed_s" && !h.ends_with("wall_s"));
    for (std::size_t i = 0; i < cells.size(); ++i)
      if (i < keep.size() && keep[i]) out += cells[i] + ',';
    out += '\n';
  }
  return out;
}

Outcome determinism() {
  const fs::path root = fs::temp_directory_path() / "swiftnav_acceptance_determinism";
  fs::remove_all(root);
  std::ostringstream os;
  std::size_t compared = 0;
  for (const char* text :
       {"problem=levy, dims=60, k=12, iterations=80, seeds=4, algorithm=both",
        "problem=minlp, k=5, iterations=150, seeds=3, algorithm=both"}) {
    ExperimentConfig c = parse_config(text);
    std::vector<fs::path> dirs;
    for (int w : {1, 4, 1}) {
      c.workers = w;
      dirs.push_back(root / (c.problem + "_w" + std::to_string(w) + "_" + std::to_string(dirs.size())));
      write_experiment(run_experiment(c), c, dirs.back());
    }
    for (const auto& entry : fs::directory_iterator(dirs[0])) {
      const auto name = entry.path().filename();
      const std::string base = untimed(dirs[0] / name);
      for (std::size_t d = 1; d < dirs.size(); ++d)
        if (!fs::exists(dirs[d] / name) || untimed(dirs[d] / name) != base)
          return {false, name.string() + " differs between runs"};
      ++compared;
    }
  }
  fs::remove_all(root);
  os << compared << " CSV files identical across workers 1, 4 and a rerun (timing columns excluded)";
  return {compared > 0, os.str()};
}

class FlatObjective final : public Objective {
 public:
  explicit FlatObjective(std::size_t n) : box_(Box::uniform(n, -1e3, 1e3)) {}
  std::string name() const override { return "flat"; }
  const Box& box() const override { return box_; }
  double evaluate(std::span<const double>) const override {
    ++calls;
    return 1.0;
  }
  mutable std::atomic<std::uint64_t> calls{0};

 private:
  Box box_;
};

Outcome evaluation_economy() {
  std::ostringstream os;
  bool pass = true;
  for (int k : {2, 10, 30, 40}) {
    const std::size_t n = 100;
    FlatObjective f(n);
    const auto d = DomainSpec::uniform(n, -1e3, 1e3, 0.5, k);
    const auto refine = RefineState::start(0.5, 1.0, RefineParams{});
    AnnealState s;
    s.current = Point(n, 0.0);
    s.current_value = 1.0;
    s.best_point = s.current;
    s.best_value = 1.0;
    s.temperature = 1.0;
    std::uint64_t worst = 0;
    for (std::size_t t = 0; t < 50; ++t) {
      s.iteration = t;
      f.calls = 0;
      const auto out = gibbs_sweep(s, f, d, refine, 99, SweepMode::kSynchronous, workers());
      worst = std::max<std::uint64_t>(worst, f.calls.load());
      s.current = out.next;
    }
    const std::uint64_t bound = n * (2 * k - 1);
    pass = pass && worst <= bound;
    os << "k=" << k << ": " << worst << " <= " << bound << "; ";
  }
  os << "n=100, 50 sweeps each";
  return {pass, os.str()};
}

}  // namespace

int main() {
  std::printf("swiftnav acceptance, %d worker(s)%s\n", workers(),
              reduced_scale() ? ", reduced scale" : "");
  criterion(1, "walker kernel properties", kernel_properties);
  criterion(2, "hand kernel instance", hand_instance);
  criterion(3, "refinement trace", refine_trace);
  criterion(4, "log-regret cross-check", regret_pairs);
  criterion(5, "Ackley", ackley_scale);
  criterion(6, "Levy", levy_scale);
  criterion(7, "baseline dominance", baseline_dominance);
  criterion(8, "MINLP", minlp_run);
  criterion(9, "quartic", quartic_run);
  criterion(10, "Chebyshev center", chebyshev_run);
  criterion(11, "SDP truss", sdp_run);
  criterion(12, "determinism", determinism);
  criterion(13, "evaluation economy", evaluation_economy);
  std::printf("%d of 13 criteria failed\n", failures);
  return failures ? 1 : 0;
}
