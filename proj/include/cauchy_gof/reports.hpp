#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cauchy_gof/statistics.hpp"

namespace cauchy_gof {

/// Below this many replications a table is flagged low-precision.
inline constexpr std::size_t low_precision_threshold = 20000;

/// Everything besides (test, n, alpha, m) that determines a simulated
/// critical value.
struct TableMetadata {
  std::size_t replications = 0;
  std::uint64_t master_seed = 0;
  QuantileConvention convention = QuantileConvention::linear_n_minus_1;
  double clamp_epsilon = 1e-12;
  double lambda = 5.0;
  double ebrahimi_k = 5.0;
  SupportPolicy ebrahimi_support = SupportPolicy::literal;
  AlizadehReading alizadeh = AlizadehReading::average;
  std::size_t regenerated = 0;

  bool low_precision() const { return replications < low_precision_threshold; }

  /// True when the table was produced under the same statistic options,
  /// replication count and seed. The regeneration count is not compared.
  bool same_fingerprint(const TableMetadata& other) const;

  static TableMetadata describe(const StatisticOptions& options, std::size_t replications,
                                std::uint64_t master_seed);
  StatisticOptions statistic_options() const;
};

struct CriticalValueKey {
  TestId test;
  std::size_t n;
  double alpha;
  std::optional<int> m;

  auto operator<=>(const CriticalValueKey&) const = default;
};

class CriticalValueTable {
 public:
  CriticalValueTable() = default;
  explicit CriticalValueTable(TableMetadata metadata) : metadata_(metadata) {}

  const TableMetadata& metadata() const noexcept { return metadata_; }
  TableMetadata& metadata() noexcept { return metadata_; }

  void insert(const CriticalValueKey& key, double value);
  std::optional<double> find(const CriticalValueKey& key) const;
  /// Throws configuration when the entry is absent.
  double at(const CriticalValueKey& key) const;
  const std::map<CriticalValueKey, double>& entries() const noexcept { return entries_; }

  /// Line-oriented text; equal tables serialise to identical bytes.
  void write(std::ostream& out) const;
  std::string to_text() const;
  static CriticalValueTable read(std::istream& in);
  static CriticalValueTable parse(const std::string& text);

  void save(const std::string& path) const;
  static CriticalValueTable load(const std::string& path);

 private:
  TableMetadata metadata_{};
  std::map<CriticalValueKey, double> entries_;
};

struct PowerKey {
  TestId test;
  std::string alternative;
  std::size_t n;
  double alpha;

  auto operator<=>(const PowerKey&) const = default;
};

struct PowerEstimate {
  double rate = 0.0;
  double standard_error = 0.0;
  std::size_t rejections = 0;
  std::size_t replications = 0;
};

struct PowerReport {
  std::uint64_t master_seed = 0;
  std::size_t critical_value_replications = 0;
  std::map<PowerKey, PowerEstimate> entries;

  void write(std::ostream& out) const;
  std::string to_text() const;
  static PowerReport parse(const std::string& text);
};

/// Best KL rate minus best EDF-type rate per (alternative, n, alpha).
struct PowerGapKey {
  std::string alternative;
  std::size_t n;
  double alpha;

  auto operator<=>(const PowerGapKey&) const = default;
};
using PowerGapTable = std::map<PowerGapKey, double>;

/// Throws configuration when the (alternative, n, alpha) grids differ.
PowerGapTable power_gap(const PowerReport& kl_report, const PowerReport& other_report);

struct WindowSearchResult {
  TestId test;
  std::size_t n;
  double alpha;
  std::vector<int> windows;
  std::vector<double> critical_values;
  std::vector<double> standard_errors;
  int chosen_window = 0;

  double chosen_critical_value() const;
  /// Smallest critical value on the curve.
  double minimum() const;
};

void write_window_search(std::ostream& out, const std::vector<WindowSearchResult>& results,
                         std::size_t replications, std::uint64_t master_seed);

}  // namespace cauchy_gof
