#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cauchy_gof/cauchy_model.hpp"
#include "cauchy_gof/entropy.hpp"

namespace cauchy_gof {

/// One of the seven KL statistics: the entropy estimator it plugs in and,
/// for window-based estimators, the window size.
struct KlTestId {
  EntropyId estimator;
  std::optional<int> m;
};

/// Display name D1..D7 for the estimator's KL test.
std::string kl_test_name(EntropyId id);

struct KlOptions {
  EntropyOptions entropy{};
  QuantileConvention convention = QuantileConvention::linear_n_minus_1;
};

/// Optimal windows tabulated for n = 10, 20, 30, 50. For other n the value
/// of the nearest tabulated size is scaled by n / n_tab, rounded, and clamped
/// to the admissible range. Returns 0 for Bowman.
int default_window(EntropyId id, std::size_t n);

/// Mean log Cauchy density of the sample under `p`.
double log_likelihood_term(const Sample& s, const CauchyParams& p);

/// exp(-H_n - log_likelihood_term) with parameters re-estimated from `s`.
/// A missing window falls back to default_window.
double kl_statistic(const KlTestId& id, const Sample& s, const KlOptions& options = {});

/// The same statistic for several windows on one sample, sharing the
/// likelihood term and the kernel density evaluations.
std::vector<double> kl_statistics_over_windows(EntropyId id, const Sample& s,
                                               std::span<const int> windows,
                                               const KlOptions& options = {});

}  // namespace cauchy_gof
