#ifndef SWIFTNAV_CONFIG_HPP_
#define SWIFTNAV_CONFIG_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "swiftnav/anneal.hpp"
#include "swiftnav/objectives.hpp"
#include "swiftnav/report.hpp"

namespace swiftnav {

enum class AlgorithmChoice { kSwiftNav, kMetropolis, kBoth };

std::string to_string(AlgorithmChoice a);
std::string to_string(SweepMode m);

// Environment variable read for the default worker count.
inline constexpr const char* kWorkersEnv = "SWIFTNAV_WORKERS";

struct ExperimentConfig {
  std::string problem = "ackley";
  std::size_t dims = 2;
  int k = 30;
  double h = 0.2;
  std::optional<double> lower;  // domain applied to every dimension
  std::optional<double> upper;
  int p = 50;
  int q = 30;
  double mesh = 2.0;
  double t0 = 100.0;
  double decay = 0.95;
  std::size_t iterations = 1000;
  std::size_t burn_in = kDefaultBurnIn;
  std::vector<std::uint64_t> seeds{0};
  AlgorithmChoice algorithm = AlgorithmChoice::kSwiftNav;
  int workers = 1;
  std::string out = "out";
  double rho = kDefaultPenalty;
  double binary_rho = kDefaultPenalty;
  std::size_t resolution = 2000;
  SweepMode sweep = SweepMode::kSynchronous;

  // Throws ConfigError naming the offending field.
  void validate() const;

  ObjectiveOptions objective_options() const;
  AnnealConfig anneal_config() const;

  bool operator==(const ExperimentConfig&) const = default;
};

// Defaults with the worker count taken from SWIFTNAV_WORKERS when set.
ExperimentConfig default_config();

// key = value entries separated by newlines or commas (commas inside [...]
// belong to the value). '#' starts a comment. Unset fields keep defaults.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig parse_config(std::string_view text, ExperimentConfig base);

// Applies one key = value pair; used by parse_config and by CLI overrides.
void set_field(ExperimentConfig& config, std::string_view key, std::string_view value);

// Positional row "Name n k h [lo, hi] p f q", as in a published input table.
ExperimentConfig parse_positional_row(std::string_view row);

// Accepts either format; a first entry without '=' selects the positional reader.
ExperimentConfig parse_config_any(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

std::string serialize(const ExperimentConfig& config);

// "3" -> {0,1,2}; "[1, 5, 9]" -> list; "4..7" -> {4,5,6,7}.
std::vector<std::uint64_t> parse_seeds(std::string_view text);

}  // namespace swiftnav

#endif  // SWIFTNAV_CONFIG_HPP_
