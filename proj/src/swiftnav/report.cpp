#include "swiftnav/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include "swiftnav/errors.hpp"

namespace swiftnav {
namespace {

constexpr const char* kRegretNote =
    "# log_regret = ln(max(f - f*, 1e-12)); the floor keeps exact hits finite\n";

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

}  // namespace

double log_regret(double f_value, double f_star) {
  if (std::isnan(f_value) || std::isnan(f_star))
    throw InvalidArgument("log_regret of NaN");
  if (f_value < f_star - kRegretSlack)
    throw ContractViolation("value " + format_number(f_value) + " is below the optimum " +
                            format_number(f_star));
  return std::log(std::max(f_value - f_star, kRegretFloor));
}

std::vector<AggregateRow> aggregate(std::span<const RunTrace> traces, Metric metric,
                                    std::optional<double> f_star) {
  if (traces.empty()) throw InvalidArgument("aggregate needs at least one trace");
  if (metric == Metric::kLogRegret && !f_star)
    throw InvalidArgument("log-regret aggregate needs a known optimum");
  const std::size_t len = traces.front().records.size();
  for (const auto& t : traces)
    if (t.records.size() != len) throw InvalidArgument("traces have different lengths");

  const double runs = static_cast<double>(traces.size());
  std::vector<AggregateRow> rows(len);
  std::vector<double> column(traces.size());
  for (std::size_t i = 0; i < len; ++i) {
    for (std::size_t r = 0; r < traces.size(); ++r) {
      const double b = traces[r].records[i].best_value;
      column[r] = metric == Metric::kBestValue ? b : log_regret(b, *f_star);
    }
    double mean = 0.0;
    for (double v : column) mean += v;
    mean /= runs;
    double se = 0.0;
    if (traces.size() > 1) {
      double ss = 0.0;
      for (double v : column) ss += (v - mean) * (v - mean);
      se = std::sqrt(ss / (runs - 1.0)) / std::sqrt(runs);
    }
    rows[i] = {traces.front().records[i].iteration, mean, se};
  }
  return rows;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_trace_csv(const RunTrace& trace, std::optional<double> f_star,
                             const CsvOptions& options) {
  std::string out = kRegretNote;
  out += "iteration,value,best_value,log_regret,step_size,temperature,elapsed_s\n";
  for (const auto& r : trace.records) {
    if (r.iteration < options.burn_in) continue;
    const double regret =
        f_star ? log_regret(r.best_value, *f_star) : std::numeric_limits<double>::quiet_NaN();
    out += std::to_string(r.iteration);
    for (double v : {r.value, r.best_value, regret, r.step, r.temperature,
                     options.timing ? r.elapsed_s : 0.0}) {
      out += ',';
      out += format_number(v);
    }
    out += '\n';
  }
  return out;
}

std::string format_aggregate_csv(std::span<const AggregateRow> rows, const CsvOptions& options) {
  std::string out = "iteration,mean,stderr\n";
  for (const auto& r : rows) {
    if (r.iteration < options.burn_in) continue;
    out += std::to_string(r.iteration) + ',' + format_number(r.mean) + ',' +
           format_number(r.stderr_) + '\n';
  }
  return out;
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  f.close();
  if (!f) throw IoError("write failed for " + path.string());
}

void write_trace_csv(const RunTrace& trace, const std::filesystem::path& path,
                     std::optional<double> f_star, const CsvOptions& options) {
  write_text(path, format_trace_csv(trace, f_star, options));
}

void write_aggregate_csv(std::span<const AggregateRow> rows, const std::filesystem::path& path,
                         const CsvOptions& options) {
  write_text(path, format_aggregate_csv(rows, options));
}

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw InvalidArgument("no column named " + std::string(name));
}

CsvTable parse_csv(std::string_view text, std::span<const std::string> text_columns) {
  CsvTable table;
  std::vector<bool> is_text;
  std::size_t lineno = 0;
  bool have_header = false;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const auto line = trim(text.substr(start, end - start));
    start = end + 1;
    ++lineno;
    if (line.empty() || line.front() == '#') continue;
    const auto cells = split(line, ',');
    if (!have_header) {
      for (auto c : cells) {
        table.header.emplace_back(trim(c));
        is_text.push_back(std::find(text_columns.begin(), text_columns.end(),
                                    table.header.back()) != text_columns.end());
      }
      have_header = true;
      continue;
    }
    if (cells.size() != table.header.size())
      throw ParseError(lineno, "expected " + std::to_string(table.header.size()) + " cells");
    std::vector<double> row;
    std::vector<std::string> raw;
    row.reserve(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const std::string cell(trim(cells[i]));
      raw.push_back(cell);
      if (is_text[i]) {
        row.push_back(std::numeric_limits<double>::quiet_NaN());
        continue;
      }
      char* stop = nullptr;
      const double v = std::strtod(cell.c_str(), &stop);
      if (cell.empty() || *stop != '\0') throw ParseError(lineno, "not a number: " + cell);
      row.push_back(v);
    }
    table.rows.push_back(std::move(row));
    table.text.push_back(std::move(raw));
  }
  return table;
}

CsvTable read_csv(const std::filesystem::path& path, std::span<const std::string> text_columns) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_csv(ss.str(), text_columns);
}

}  // namespace swiftnav
