#ifndef SWIFTNAV_REPORT_HPP_
#define SWIFTNAV_REPORT_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "swiftnav/anneal.hpp"

namespace swiftnav {

inline constexpr double kRegretFloor = 1e-12;
inline constexpr double kRegretSlack = 1e-9;
inline constexpr std::size_t kDefaultBurnIn = 20;

// ln(max(f - f*, 1e-12)). Throws ContractViolation when f < f* - 1e-9.
double log_regret(double f_value, double f_star);

enum class Metric { kBestValue, kLogRegret };

struct AggregateRow {
  std::size_t iteration = 0;
  double mean = 0.0;
  double stderr_ = 0.0;  // sample sd / sqrt(runs); 0 for a single run
};

// Per-iteration mean and standard error of the chosen column across runs.
// kLogRegret needs f_star. Traces must all have the same length.
std::vector<AggregateRow> aggregate(std::span<const RunTrace> traces, Metric metric,
                                    std::optional<double> f_star = std::nullopt);

struct CsvOptions {
  std::size_t burn_in = 0;     // rows with iteration < burn_in are not emitted
  bool timing = true;          // false writes elapsed_s as 0 for byte comparisons
};

// log_regret is written as "nan" when f_star is unknown.
std::string format_trace_csv(const RunTrace& trace, std::optional<double> f_star,
                             const CsvOptions& options = {});
std::string format_aggregate_csv(std::span<const AggregateRow> rows,
                                 const CsvOptions& options = {});

void write_trace_csv(const RunTrace& trace, const std::filesystem::path& path,
                     std::optional<double> f_star, const CsvOptions& options = {});
void write_aggregate_csv(std::span<const AggregateRow> rows, const std::filesystem::path& path,
                         const CsvOptions& options = {});

// Writes text to path; IoError carries the path on failure.
void write_text(const std::filesystem::path& path, std::string_view text);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;      // NaN in text columns
  std::vector<std::vector<std::string>> text;  // every cell as written

  std::size_t column(std::string_view name) const;  // throws InvalidArgument if absent
};

// CSV with a header row; '#' lines are comments. Cells must be numeric except
// in the columns named in text_columns.
CsvTable parse_csv(std::string_view text, std::span<const std::string> text_columns = {});
CsvTable read_csv(const std::filesystem::path& path,
                  std::span<const std::string> text_columns = {});

std::string format_number(double v);

}  // namespace swiftnav

#endif  // SWIFTNAV_REPORT_HPP_
