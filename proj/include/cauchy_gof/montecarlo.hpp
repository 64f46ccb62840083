#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "cauchy_gof/alternatives.hpp"
#include "cauchy_gof/random.hpp"
#include "cauchy_gof/reports.hpp"
#include "cauchy_gof/statistics.hpp"

namespace cauchy_gof {

struct SimulationSettings {
  std::size_t replications = 50000;
  SeedSpec seed{};
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned workers = 0;
  /// Regeneration attempts per replication before giving up.
  unsigned max_attempts = 100;
};

/// Calls task(r) for every r in [0, count) on `workers` threads. Tasks must
/// only write to per-replication slots; the first exception is rethrown.
void parallel_replications(std::size_t count, unsigned workers,
                           const std::function<void(std::size_t)>& task);

/// Statistics of every requested test on each simulated sample.
struct SimulatedStatistics {
  /// values[k][r]: test k on replication r.
  std::vector<std::vector<double>> values;
  /// Replications that had to be redrawn after an estimator error.
  std::size_t regenerated = 0;
};

/// Draws `replications` samples of size n from `dist` and evaluates all tests
/// on each. A replication whose sample makes any statistic undefined (ties,
/// degenerate scale, ...) is redrawn from its next attempt stream.
SimulatedStatistics simulate_statistics(const AlternativeSpec& dist, std::span<const TestId> tests,
                                        std::span<const std::optional<int>> windows,
                                        std::size_t n, const StatisticOptions& options,
                                        const SimulationSettings& settings);

/// Empirical p-quantile under the given convention (values need not be sorted).
double empirical_quantile(std::vector<double> values, double p,
                          QuantileConvention convention = QuantileConvention::linear_n_minus_1);

/// Standard error of the empirical p-quantile from the order statistics
/// bracketing p -/+ sqrt(p(1-p)/R).
double quantile_standard_error(std::vector<double> values, double p,
                               QuantileConvention convention = QuantileConvention::linear_n_minus_1);

/// Share of values strictly above the threshold.
double rejection_rate(std::span<const double> values, double threshold);

struct CriticalValue {
  double value = 0.0;
  double standard_error = 0.0;
  std::size_t regenerated = 0;
};

/// (1 - alpha) quantile of the statistic over simulated C(0,1) samples.
CriticalValue critical_value(TestId test, std::size_t n, double alpha, std::optional<int> m,
                             const StatisticOptions& options, const SimulationSettings& settings);

/// Critical values for every (test, n, alpha) cell; each n uses one set of
/// null samples shared by all tests.
CriticalValueTable build_critical_value_table(std::span<const TestId> tests,
                                              std::span<const std::size_t> sizes,
                                              std::span<const double> alphas,
                                              const WindowOverrides& overrides,
                                              const StatisticOptions& options,
                                              const SimulationSettings& settings);

/// Critical value curve over the admissible windows (common random numbers
/// across m) and its argmin, ties to the smallest m.
WindowSearchResult optimal_window(TestId test, std::size_t n, double alpha,
                                  const StatisticOptions& options,
                                  const SimulationSettings& settings);

/// optimal_window for several tests on one shared set of null samples.
std::vector<WindowSearchResult> optimal_windows(std::span<const TestId> tests, std::size_t n,
                                                double alpha, const StatisticOptions& options,
                                                const SimulationSettings& settings);

/// Rejection rate against `alt` using the critical value stored in `table`
/// for (test, n, alpha, window). Throws configuration if the entry is missing.
PowerEstimate power(TestId test, const AlternativeSpec& alt, std::size_t n, double alpha,
                    std::optional<int> m, const CriticalValueTable& table,
                    const SimulationSettings& settings);

/// Full grid of rejection rates; each (alternative, n) uses one set of
/// samples shared by all tests.
PowerReport power_study(std::span<const TestId> tests, std::span<const AlternativeSpec> alts,
                        std::span<const std::size_t> sizes, double alpha,
                        const WindowOverrides& overrides, const CriticalValueTable& table,
                        const SimulationSettings& settings);

/// (1 + #{null statistics >= observed}) / (R + 1).
double p_value(TestId test, double observed, std::size_t n, std::optional<int> m,
               const StatisticOptions& options, const SimulationSettings& settings);

/// Same, against already simulated null statistics.
double p_value_from_null(std::span<const double> null_values, double observed);

}  // namespace cauchy_gof
