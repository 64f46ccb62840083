#include "cauchy_gof/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include <fmt/format.h>

#include "cauchy_gof/error.hpp"

namespace cauchy_gof {

void parallel_replications(std::size_t count, unsigned workers,
                           const std::function<void(std::size_t)>& task) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));
  if (workers <= 1) {
    for (std::size_t r = 0; r < count; ++r) task(r);
    return;
  }
  constexpr std::size_t chunk = 64;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    while (!failed.load(std::memory_order_relaxed)) {
      const std::size_t begin = next.fetch_add(chunk);
      if (begin >= count) return;
      const std::size_t end = std::min(count, begin + chunk);
      try {
        for (std::size_t r = begin; r < end; ++r) task(r);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

namespace {

bool is_recoverable(ErrorCode code) {
  switch (code) {
    case ErrorCode::tied_data:
    case ErrorCode::degenerate_scale:
    case ErrorCode::zero_bandwidth:
    case ErrorCode::support_extension:
    case ErrorCode::invalid_estimator_argument:
    case ErrorCode::non_finite_input:
      return true;
    default:
      return false;
  }
}

// Runs `evaluate(sample)` on replication r, redrawing the sample from later
// attempt streams while the evaluation reports a recoverable estimator error.
// Returns the number of redraws.
template <class Evaluate>
std::size_t run_replication(const AlternativeSpec& dist, std::size_t n,
                            const SimulationSettings& settings, std::size_t r,
                            Evaluate&& evaluate) {
  for (unsigned attempt = 0; attempt < settings.max_attempts; ++attempt) {
    try {
      const Sample s = sample_from(dist, n, settings.seed, r, attempt);
      evaluate(s);
      return attempt;
    } catch (const GofError& e) {
      if (!is_recoverable(e.code())) throw;
    }
  }
  throw GofError(ErrorCode::simulation_failed,
                 fmt::format("replication {} failed {} times in a row; the statistic is "
                             "undefined on almost every simulated sample",
                             r, settings.max_attempts));
}

void check_level(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw GofError(ErrorCode::configuration, fmt::format("alpha {} outside (0, 1)", alpha));
  }
}

void check_size(std::size_t n) {
  if (n < min_test_size) {
    throw GofError(ErrorCode::input_too_small,
                   fmt::format("sample size {} below the minimum {}", n, min_test_size));
  }
}

const AlternativeSpec standard_cauchy_spec = Cauchy{0.0, 1.0};

// Samples for a power cell come from a seed derived from the alternative's
// label and n, so they never coincide with the null samples behind a table
// built from the same master seed.
SeedSpec power_cell_seed(const SeedSpec& seed, const AlternativeSpec& alt, std::size_t n) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char c : to_string(alt)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return seed.derive(h ^ mix64(n));
}

PowerEstimate count_rejections(std::span<const double> values, double cv) {
  PowerEstimate est;
  est.replications = values.size();
  est.rejections = static_cast<std::size_t>(
      std::count_if(values.begin(), values.end(), [&](double v) { return v > cv; }));
  est.rate = static_cast<double>(est.rejections) / static_cast<double>(est.replications);
  est.standard_error =
      std::sqrt(est.rate * (1.0 - est.rate) / static_cast<double>(est.replications));
  return est;
}

}  // namespace

SimulatedStatistics simulate_statistics(const AlternativeSpec& dist, std::span<const TestId> tests,
                                        std::span<const std::optional<int>> windows,
                                        std::size_t n, const StatisticOptions& options,
                                        const SimulationSettings& settings) {
  check_size(n);
  validate(dist);
  const std::size_t reps = settings.replications;
  SimulatedStatistics out;
  out.values.assign(tests.size(), std::vector<double>(reps));
  std::vector<std::size_t> redraws(reps, 0);
  parallel_replications(reps, settings.workers, [&](std::size_t r) {
    redraws[r] = run_replication(dist, n, settings, r, [&](const Sample& s) {
      const auto stats = compute_statistics(tests, s, windows, options);
      for (std::size_t k = 0; k < tests.size(); ++k) out.values[k][r] = stats[k];
    });
  });
  for (std::size_t r = 0; r < reps; ++r) out.regenerated += redraws[r] > 0 ? 1 : 0;
  return out;
}

double empirical_quantile(std::vector<double> values, double p, QuantileConvention convention) {
  std::sort(values.begin(), values.end());
  return sample_quantile(values, p, convention);
}

double quantile_standard_error(std::vector<double> values, double p,
                               QuantileConvention convention) {
  std::sort(values.begin(), values.end());
  const double delta = std::sqrt(p * (1.0 - p) / static_cast<double>(values.size()));
  const double lo = std::max(p - delta, 1e-12);
  const double hi = std::min(p + delta, 1.0 - 1e-12);
  return 0.5 * (sample_quantile(values, hi, convention) - sample_quantile(values, lo, convention));
}

double rejection_rate(std::span<const double> values, double threshold) {
  const auto count = std::count_if(values.begin(), values.end(),
                                   [&](double v) { return v > threshold; });
  return static_cast<double>(count) / static_cast<double>(values.size());
}

CriticalValue critical_value(TestId test, std::size_t n, double alpha, std::optional<int> m,
                             const StatisticOptions& options, const SimulationSettings& settings) {
  check_level(alpha);
  if (settings.replications < 1000) {
    throw GofError(ErrorCode::configuration,
                   "critical values need at least 1000 replications");
  }
  const TestId tests[] = {test};
  const std::optional<int> windows[] = {m ? m : resolve_window(test, n)};
  auto sim = simulate_statistics(standard_cauchy_spec, tests, windows, n, options, settings);
  CriticalValue cv;
  cv.value = empirical_quantile(sim.values[0], 1.0 - alpha, options.convention);
  cv.standard_error = quantile_standard_error(sim.values[0], 1.0 - alpha, options.convention);
  cv.regenerated = sim.regenerated;
  return cv;
}

CriticalValueTable build_critical_value_table(std::span<const TestId> tests,
                                              std::span<const std::size_t> sizes,
                                              std::span<const double> alphas,
                                              const WindowOverrides& overrides,
                                              const StatisticOptions& options,
                                              const SimulationSettings& settings) {
  for (double a : alphas) check_level(a);
  CriticalValueTable table(
      TableMetadata::describe(options, settings.replications, settings.seed.master_seed));
  for (std::size_t n : sizes) {
    std::vector<std::optional<int>> windows;
    for (TestId t : tests) windows.push_back(resolve_window(t, n, overrides));
    auto sim = simulate_statistics(standard_cauchy_spec, tests, windows, n, options, settings);
    table.metadata().regenerated += sim.regenerated;
    for (std::size_t k = 0; k < tests.size(); ++k) {
      std::vector<double> sorted = sim.values[k];
      std::sort(sorted.begin(), sorted.end());
      for (double a : alphas) {
        table.insert({tests[k], n, a, windows[k]},
                     sample_quantile(sorted, 1.0 - a, options.convention));
      }
    }
  }
  return table;
}

std::vector<WindowSearchResult> optimal_windows(std::span<const TestId> tests, std::size_t n,
                                                double alpha, const StatisticOptions& options,
                                                const SimulationSettings& settings) {
  check_level(alpha);
  check_size(n);
  const std::size_t reps = settings.replications;
  std::vector<WindowSearchResult> results;
  for (TestId t : tests) {
    if (!is_window_based(t)) {
      throw GofError(ErrorCode::configuration,
                     fmt::format("{} has no window to optimise", display_name(t)));
    }
    WindowSearchResult res{t, n, alpha, {}, {}, {}, 0};
    for (int m = 1; m <= max_window(entropy_of(t), n); ++m) res.windows.push_back(m);
    results.push_back(std::move(res));
  }
  // curves[k][w][r]
  std::vector<std::vector<std::vector<double>>> curves(results.size());
  for (std::size_t k = 0; k < results.size(); ++k) {
    curves[k].assign(results[k].windows.size(), std::vector<double>(reps));
  }
  const KlOptions kl = options.kl();
  parallel_replications(reps, settings.workers, [&](std::size_t r) {
    run_replication(standard_cauchy_spec, n, settings, r, [&](const Sample& s) {
      for (std::size_t k = 0; k < results.size(); ++k) {
        const auto stats =
            kl_statistics_over_windows(entropy_of(results[k].test), s, results[k].windows, kl);
        for (std::size_t w = 0; w < stats.size(); ++w) curves[k][w][r] = stats[w];
      }
    });
  });
  for (std::size_t k = 0; k < results.size(); ++k) {
    auto& res = results[k];
    for (std::size_t w = 0; w < res.windows.size(); ++w) {
      std::vector<double>& v = curves[k][w];
      std::sort(v.begin(), v.end());
      res.critical_values.push_back(sample_quantile(v, 1.0 - alpha, options.convention));
      res.standard_errors.push_back(quantile_standard_error(v, 1.0 - alpha, options.convention));
    }
    const auto best = std::min_element(res.critical_values.begin(), res.critical_values.end());
    res.chosen_window = res.windows[static_cast<std::size_t>(best - res.critical_values.begin())];
  }
  return results;
}

WindowSearchResult optimal_window(TestId test, std::size_t n, double alpha,
                                  const StatisticOptions& options,
                                  const SimulationSettings& settings) {
  const TestId tests[] = {test};
  return optimal_windows(tests, n, alpha, options, settings).front();
}

PowerEstimate power(TestId test, const AlternativeSpec& alt, std::size_t n, double alpha,
                    std::optional<int> m, const CriticalValueTable& table,
                    const SimulationSettings& settings) {
  const std::optional<int> window = m ? m : resolve_window(test, n);
  const double cv = table.at({test, n, alpha, window});
  const TestId tests[] = {test};
  const std::optional<int> windows[] = {window};
  SimulationSettings cell = settings;
  cell.seed = power_cell_seed(settings.seed, alt, n);
  auto sim =
      simulate_statistics(alt, tests, windows, n, table.metadata().statistic_options(), cell);
  return count_rejections(sim.values[0], cv);
}

PowerReport power_study(std::span<const TestId> tests, std::span<const AlternativeSpec> alts,
                        std::span<const std::size_t> sizes, double alpha,
                        const WindowOverrides& overrides, const CriticalValueTable& table,
                        const SimulationSettings& settings) {
  check_level(alpha);
  PowerReport report;
  report.master_seed = settings.seed.master_seed;
  report.critical_value_replications = table.metadata().replications;
  const StatisticOptions options = table.metadata().statistic_options();
  for (std::size_t n : sizes) {
    std::vector<std::optional<int>> windows;
    std::vector<double> cvs;
    for (TestId t : tests) {
      windows.push_back(resolve_window(t, n, overrides));
      cvs.push_back(table.at({t, n, alpha, windows.back()}));
    }
    for (std::size_t a = 0; a < alts.size(); ++a) {
      SimulationSettings cell = settings;
      cell.seed = power_cell_seed(settings.seed, alts[a], n);
      auto sim = simulate_statistics(alts[a], tests, windows, n, options, cell);
      for (std::size_t k = 0; k < tests.size(); ++k) {
        report.entries[{tests[k], to_string(alts[a]), n, alpha}] =
            count_rejections(sim.values[k], cvs[k]);
      }
    }
  }
  return report;
}

double p_value_from_null(std::span<const double> null_values, double observed) {
  const auto at_least = std::count_if(null_values.begin(), null_values.end(),
                                      [&](double v) { return v >= observed; });
  return (1.0 + static_cast<double>(at_least)) / (static_cast<double>(null_values.size()) + 1.0);
}

double p_value(TestId test, double observed, std::size_t n, std::optional<int> m,
               const StatisticOptions& options, const SimulationSettings& settings) {
  if (!std::isfinite(observed)) {
    throw GofError(ErrorCode::domain, "observed statistic must be finite");
  }
  const TestId tests[] = {test};
  const std::optional<int> windows[] = {m ? m : resolve_window(test, n)};
  auto sim = simulate_statistics(standard_cauchy_spec, tests, windows, n, options, settings);
  return p_value_from_null(sim.values[0], observed);
}

}  // namespace cauchy_gof
