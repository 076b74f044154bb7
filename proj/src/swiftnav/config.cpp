#include "swiftnav/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "swiftnav/errors.hpp"

namespace swiftnav {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

double to_double(std::string_view field, std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || end != text.data() + text.size())
    throw ConfigError(std::string(field), "malformed number '" + std::string(text) + "'");
  return v;
}

template <typename Int>
Int to_int(std::string_view field, std::string_view text) {
  text = trim(text);
  Int v = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || end != text.data() + text.size())
    throw ConfigError(std::string(field), "malformed integer '" + std::string(text) + "'");
  return v;
}

std::size_t to_count(std::string_view field, std::string_view text) {
  const auto v = to_int<long long>(field, text);
  if (v < 0) throw ConfigError(std::string(field), "must be non-negative");
  return static_cast<std::size_t>(v);
}

std::string_view strip_brackets(std::string_view field, std::string_view text) {
  text = trim(text);
  if (text.size() < 2 || text.front() != '[' || text.back() != ']')
    throw ConfigError(std::string(field), "expected [a, b]");
  return text.substr(1, text.size() - 2);
}

std::vector<std::string_view> split_outside_brackets(std::string_view text, bool comma) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    const char c = i < text.size() ? text[i] : '\n';
    if (c == '[') ++depth;
    if (c == ']') --depth;
    if (c == '\n' || (comma && c == ',' && depth <= 0)) {
      out.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

std::string strip_comments(std::string_view text) {
  std::string out;
  bool comment = false;
  for (char c : text) {
    if (c == '\n') comment = false;
    else if (c == '#') comment = true;
    if (!comment) out += c;
  }
  return out;
}

std::string canonical_problem(std::string_view name) {
  name = trim(name);
  if (lower(name.substr(0, 4)) == "sdp:") return "sdp:" + std::string(trim(name.substr(4)));
  std::string n = lower(name);
  if (!is_known_problem(n)) throw ConfigError("problem", "unknown problem '" + n + "'");
  return n;
}

std::string fmt(double v) { return format_number(v); }

}  // namespace

std::string to_string(AlgorithmChoice a) {
  switch (a) {
    case AlgorithmChoice::kSwiftNav: return "swiftnav";
    case AlgorithmChoice::kMetropolis: return "mh";
    case AlgorithmChoice::kBoth: return "both";
  }
  return "swiftnav";
}

std::string to_string(SweepMode m) {
  return m == SweepMode::kSequential ? "sequential" : "synchronous";
}

std::vector<std::uint64_t> parse_seeds(std::string_view text) {
  text = trim(text);
  std::vector<std::uint64_t> seeds;
  if (!text.empty() && text.front() == '[') {
    for (auto part : split_outside_brackets(strip_brackets("seeds", text), true))
      if (!trim(part).empty()) seeds.push_back(to_int<std::uint64_t>("seeds", part));
  } else if (const auto dots = text.find(".."); dots != std::string_view::npos) {
    const auto a = to_int<std::uint64_t>("seeds", text.substr(0, dots));
    const auto b = to_int<std::uint64_t>("seeds", text.substr(dots + 2));
    if (b < a) throw ConfigError("seeds", "empty range");
    for (auto s = a; s <= b; ++s) seeds.push_back(s);
  } else {
    const auto n = to_int<std::uint64_t>("seeds", text);
    for (std::uint64_t s = 0; s < n; ++s) seeds.push_back(s);
  }
  if (seeds.empty()) throw ConfigError("seeds", "no seeds given");
  return seeds;
}

void set_field(ExperimentConfig& c, std::string_view key_in, std::string_view value_in) {
  const std::string key = lower(trim(key_in));
  const std::string_view value = trim(value_in);
  if (key == "problem" || key == "name") {
    c.problem = canonical_problem(value);
  } else if (key == "dims" || key == "n" || key == "dimensions") {
    c.dims = to_count("dims", value);
  } else if (key == "k") {
    c.k = to_int<int>("k", value);
    if (c.k < 1) throw ConfigError("k", "must be >= 1");
  } else if (key == "h" || key == "step") {
    c.h = to_double("h", value);
  } else if (key == "domain") {
    const auto parts = split_outside_brackets(strip_brackets("domain", value), true);
    if (parts.size() != 2) throw ConfigError("domain", "expected [lo, hi]");
    c.lower = to_double("domain", parts[0]);
    c.upper = to_double("domain", parts[1]);
  } else if (key == "p") {
    c.p = to_int<int>("p", value);
  } else if (key == "q") {
    c.q = to_int<int>("q", value);
  } else if (key == "mesh" || key == "f" || key == "mu") {
    c.mesh = to_double("mesh", value);
  } else if (key == "t0") {
    c.t0 = to_double("T0", value);
  } else if (key == "decay") {
    c.decay = to_double("decay", value);
  } else if (key == "iterations" || key == "iters") {
    c.iterations = to_count("iterations", value);
  } else if (key == "burn_in" || key == "burn-in") {
    c.burn_in = to_count("burn_in", value);
  } else if (key == "seeds") {
    c.seeds = parse_seeds(value);
  } else if (key == "seed") {
    c.seeds = {to_int<std::uint64_t>("seed", value)};
  } else if (key == "algorithm" || key == "algo") {
    const auto a = lower(value);
    if (a == "swiftnav") c.algorithm = AlgorithmChoice::kSwiftNav;
    else if (a == "mh" || a == "mh-baseline") c.algorithm = AlgorithmChoice::kMetropolis;
    else if (a == "both") c.algorithm = AlgorithmChoice::kBoth;
    else throw ConfigError("algorithm", "expected swiftnav, mh or both");
  } else if (key == "workers") {
    c.workers = to_int<int>("workers", value);
  } else if (key == "out") {
    if (value.empty()) throw ConfigError("out", "empty path");
    c.out = std::string(value);
  } else if (key == "rho") {
    c.rho = to_double("rho", value);
  } else if (key == "binary_rho") {
    c.binary_rho = to_double("binary_rho", value);
  } else if (key == "resolution") {
    c.resolution = to_count("resolution", value);
  } else if (key == "sweep") {
    const auto m = lower(value);
    if (m == "synchronous") c.sweep = SweepMode::kSynchronous;
    else if (m == "sequential") c.sweep = SweepMode::kSequential;
    else throw ConfigError("sweep", "expected synchronous or sequential");
  } else {
    throw ConfigError(key, "unknown key");
  }
}

void ExperimentConfig::validate() const {
  canonical_problem(problem);
  if (dims < 1) throw ConfigError("dims", "must be >= 1");
  if (k < 1) throw ConfigError("k", "must be >= 1");
  if (!(h > 0.0)) throw ConfigError("h", "must be positive");
  if (lower.has_value() != upper.has_value()) throw ConfigError("domain", "needs both bounds");
  if (lower && !(*lower < *upper)) throw ConfigError("domain", "lower must be below upper");
  if (p < 1) throw ConfigError("p", "must be >= 1");
  if (q < 1) throw ConfigError("q", "must be >= 1");
  if (!(mesh > 1.0)) throw ConfigError("mesh", "must be > 1");
  if (!(t0 > 0.0)) throw ConfigError("T0", "must be positive");
  if (!(decay > 0.0 && decay < 1.0)) throw ConfigError("decay", "must lie in (0, 1)");
  if (iterations < 1) throw ConfigError("iterations", "must be >= 1");
  if (seeds.empty()) throw ConfigError("seeds", "no seeds given");
  if (workers < 1) throw ConfigError("workers", "must be >= 1");
  if (out.empty()) throw ConfigError("out", "empty path");
  if (!(rho > 0.0)) throw ConfigError("rho", "must be positive");
  if (!(binary_rho > 0.0)) throw ConfigError("binary_rho", "must be positive");
  if (resolution < 2) throw ConfigError("resolution", "must be >= 2");
}

ObjectiveOptions ExperimentConfig::objective_options() const {
  ObjectiveOptions o;
  o.dims = dims;
  o.lower = lower;
  o.upper = upper;
  o.rho = rho;
  o.binary_rho = binary_rho;
  o.resolution = resolution;
  return o;
}

AnnealConfig ExperimentConfig::anneal_config() const {
  AnnealConfig a;
  a.k = k;
  a.base_step = h;
  a.refine.p = p;
  a.refine.q = q;
  a.refine.mesh_factor = mesh;
  a.t0 = t0;
  a.decay = decay;
  a.iterations = iterations;
  a.sweep = sweep;
  a.workers = workers;
  return a;
}

ExperimentConfig default_config() {
  ExperimentConfig c;
  if (const char* env = std::getenv(kWorkersEnv); env && *env) {
    c.workers = to_int<int>(kWorkersEnv, env);
    if (c.workers < 1) throw ConfigError(kWorkersEnv, "must be >= 1");
  }
  return c;
}

ExperimentConfig parse_config(std::string_view text) { return parse_config(text, default_config()); }

ExperimentConfig parse_config(std::string_view text, ExperimentConfig base) {
  const std::string clean = strip_comments(text);
  for (auto entry : split_outside_brackets(clean, true)) {
    entry = trim(entry);
    if (entry.empty()) continue;
    const auto eq = entry.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(std::string(entry), "expected key = value");
    set_field(base, entry.substr(0, eq), entry.substr(eq + 1));
  }
  return base;
}

ExperimentConfig parse_positional_row(std::string_view row) {
  // Pull the bracketed domain out first; the rest is whitespace separated.
  const auto open = row.find('[');
  const auto close = row.find(']');
  if (open == std::string_view::npos || close == std::string_view::npos || close < open)
    throw ConfigError("domain", "positional row needs [lo, hi]");
  std::vector<std::string> before, after;
  std::istringstream a{std::string(row.substr(0, open))};
  std::istringstream b{std::string(row.substr(close + 1))};
  for (std::string t; a >> t;) before.push_back(t);
  for (std::string t; b >> t;) after.push_back(t);
  if (before.size() != 4 || after.size() != 3)
    throw ConfigError("row", "expected: name n k h [lo, hi] p f q");

  ExperimentConfig c = default_config();
  set_field(c, "problem", before[0]);
  set_field(c, "dims", before[1]);
  set_field(c, "k", before[2]);
  set_field(c, "h", before[3]);
  set_field(c, "domain", row.substr(open, close - open + 1));
  set_field(c, "p", after[0]);
  set_field(c, "mesh", after[1]);
  set_field(c, "q", after[2]);
  return c;
}

ExperimentConfig parse_config_any(std::string_view text) {
  const std::string clean = strip_comments(text);
  for (auto line : split_outside_brackets(clean, false)) {
    line = trim(line);
    if (line.empty()) continue;
    if (line.find('=') == std::string_view::npos) return parse_positional_row(line);
    break;
  }
  return parse_config(text);
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open config " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  ExperimentConfig c = parse_config_any(ss.str());
  // A relative instance path is relative to the config file.
  if (c.problem.rfind("sdp:", 0) == 0) {
    const std::filesystem::path instance = c.problem.substr(4);
    if (instance.is_relative()) c.problem = "sdp:" + (path.parent_path() / instance).string();
  }
  return c;
}

std::string serialize(const ExperimentConfig& c) {
  std::string s;
  auto put = [&](std::string_view key, const std::string& value) {
    s.append(key).append(" = ").append(value).append("\n");
  };
  put("problem", c.problem);
  put("dims", std::to_string(c.dims));
  put("k", std::to_string(c.k));
  put("h", fmt(c.h));
  if (c.lower && c.upper) put("domain", "[" + fmt(*c.lower) + ", " + fmt(*c.upper) + "]");
  put("p", std::to_string(c.p));
  put("q", std::to_string(c.q));
  put("mesh", fmt(c.mesh));
  put("T0", fmt(c.t0));
  put("decay", fmt(c.decay));
  put("iterations", std::to_string(c.iterations));
  put("burn_in", std::to_string(c.burn_in));
  std::string seeds = "[";
  for (std::size_t i = 0; i < c.seeds.size(); ++i)
    seeds += (i ? ", " : "") + std::to_string(c.seeds[i]);
  put("seeds", seeds + "]");
  put("algorithm", to_string(c.algorithm));
  put("workers", std::to_string(c.workers));
  put("out", c.out);
  put("rho", fmt(c.rho));
  put("binary_rho", fmt(c.binary_rho));
  put("resolution", std::to_string(c.resolution));
  put("sweep", to_string(c.sweep));
  return s;
}

}  // namespace swiftnav
