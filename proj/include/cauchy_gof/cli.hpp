#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cauchy_gof/alternatives.hpp"
#include "cauchy_gof/montecarlo.hpp"
#include "cauchy_gof/reports.hpp"
#include "cauchy_gof/statistics.hpp"

namespace cauchy_gof {

enum class OutputFormat { human, structured };

std::string_view to_string(OutputFormat format);
OutputFormat parse_output_format(std::string_view text);

/// Settings shared by all subcommands. Every field has a usable default.
struct RunConfig {
  std::optional<std::string> input_path;
  /// Observations given directly (takes precedence over input_path).
  std::vector<double> inline_values;
  std::vector<TestId> tests{all_tests.begin(), all_tests.end()};
  double alpha = 0.05;
  WindowOverrides windows;
  /// Null replications behind critical values and p-values.
  std::size_t replications = 50000;
  /// Replications per power cell (power subcommand only).
  std::size_t power_replications = 10000;
  std::uint64_t seed = SeedSpec{}.master_seed;
  unsigned workers = 0;
  StatisticOptions options;
  std::optional<std::string> table_path;
  /// Directory holding one cached table per fingerprint.
  std::optional<std::string> table_dir;
  OutputFormat format = OutputFormat::human;
  bool p_values = false;
  std::vector<std::size_t> sizes{10, 20, 30, 50};
  std::vector<AlternativeSpec> alternatives = studied_alternatives();
  std::optional<std::string> output_path;
  std::optional<std::string> qq_path;
  std::optional<std::string> histogram_path;

  SimulationSettings simulation() const;
  SimulationSettings power_simulation() const;
};

/// key=value lines; parse_run_config(to_text(c)) reproduces c.
std::string to_text(const RunConfig& config);
RunConfig parse_run_config(std::string_view text);

/// "d1:8,d4:15" -> overrides. Windows are validated later against n.
WindowOverrides parse_window_overrides(std::string_view text);
std::string format_window_overrides(const WindowOverrides& overrides);

/// One number per line, '#' comments, blank lines ignored; a non-numeric
/// first data line is taken as a CSV header.
std::vector<double> parse_numeric_input(std::istream& in);
std::vector<double> read_numeric_file(const std::string& path);

struct TestResult {
  TestId test;
  std::optional<int> m;
  double statistic = 0.0;
  double critical_value = 0.0;
  /// "table" (cached) or "simulated".
  std::string critical_value_source;
  bool reject = false;
  std::optional<double> p_value;
};

struct TestReport {
  std::size_t n = 0;
  double mu = 0.0;
  double sigma = 0.0;
  double alpha = 0.05;
  std::size_t replications = 0;
  std::uint64_t seed = 0;
  std::vector<TestResult> results;
};

/// Statistics, critical values (cache first, then simulation) and decisions
/// for the configured tests on `sample`.
TestReport run_tests(const RunConfig& config, const Sample& sample);

std::string format_report(const TestReport& report, OutputFormat format);

/// (empirical order statistic, fitted Cauchy quantile at (i - 0.5)/n).
std::vector<std::pair<double, double>> qq_pairs(const Sample& sample, const CauchyParams& fit);
void write_qq(std::ostream& out, const Sample& sample, const CauchyParams& fit);
/// Equal-width histogram over the data range with the
/// fitted density at each bin midpoint.
void write_histogram(std::ostream& out, const Sample& sample, const CauchyParams& fit,
                     std::size_t bins = 20);

/// File name of the cached table for a fingerprint inside table_dir.
std::string cached_table_name(const TableMetadata& metadata);

// Subcommands. Each returns the process exit code and writes user-facing
// output to `out`, diagnostics to `err`.
int cmd_test(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_tables(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_power(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_window_search(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_demo_dax(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace cauchy_gof
