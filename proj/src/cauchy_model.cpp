#include "cauchy_gof/cauchy_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include <fmt/format.h>

#include "cauchy_gof/error.hpp"

namespace cauchy_gof {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::input_too_small: return "input_too_small";
    case ErrorCode::non_finite_input: return "non_finite_input";
    case ErrorCode::degenerate_scale: return "degenerate_scale";
    case ErrorCode::tied_data: return "tied_data";
    case ErrorCode::zero_bandwidth: return "zero_bandwidth";
    case ErrorCode::invalid_window: return "invalid_window";
    case ErrorCode::invalid_estimator_argument: return "invalid_estimator_argument";
    case ErrorCode::support_extension: return "support_extension";
    case ErrorCode::domain: return "domain";
    case ErrorCode::configuration: return "configuration";
    case ErrorCode::parse: return "parse";
    case ErrorCode::io: return "io";
    case ErrorCode::simulation_failed: return "simulation_failed";
  }
  return "unknown";
}

CauchyParams::CauchyParams(double mu, double sigma) : mu_(mu), sigma_(sigma) {
  if (!std::isfinite(mu) || !std::isfinite(sigma)) {
    throw GofError(ErrorCode::non_finite_input, "Cauchy parameters must be finite");
  }
  if (!(sigma > 0.0)) {
    throw GofError(ErrorCode::degenerate_scale,
                   fmt::format("Cauchy scale must be positive, got {}", sigma));
  }
}

std::string_view to_string(QuantileConvention convention) {
  switch (convention) {
    case QuantileConvention::linear_n_minus_1: return "linear-n-1";
    case QuantileConvention::linear_n_plus_1: return "linear-n+1";
    case QuantileConvention::nearest_rank: return "nearest-rank";
  }
  return "unknown";
}

QuantileConvention parse_quantile_convention(std::string_view text) {
  for (auto c : {QuantileConvention::linear_n_minus_1, QuantileConvention::linear_n_plus_1,
                 QuantileConvention::nearest_rank}) {
    if (text == to_string(c)) return c;
  }
  throw GofError(ErrorCode::parse,
                 fmt::format("unknown quantile convention '{}' (expected linear-n-1, "
                             "linear-n+1 or nearest-rank)",
                             text));
}

namespace {

void check_finite(const std::vector<double>& values) {
  if (values.empty()) {
    throw GofError(ErrorCode::input_too_small, "sample is empty");
  }
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw GofError(ErrorCode::non_finite_input, "sample contains NaN or infinite values");
    }
  }
}

}  // namespace

Sample::Sample(std::vector<double> values) : values_(std::move(values)) {
  check_finite(values_);
  std::sort(values_.begin(), values_.end());
}

Sample::Sample(sorted_tag, std::vector<double> sorted) : values_(std::move(sorted)) {}

Sample Sample::with_original_order(std::vector<double> values) {
  Sample s(values);
  s.original_ = std::move(values);
  return s;
}

Sample Sample::from_sorted(std::vector<double> sorted) {
  check_finite(sorted);
  if (!std::is_sorted(sorted.begin(), sorted.end())) {
    throw GofError(ErrorCode::configuration, "Sample::from_sorted given unsorted values");
  }
  return Sample(sorted_tag{}, std::move(sorted));
}

double Sample::clamped(long long rank) const noexcept {
  const auto n = static_cast<long long>(values_.size());
  return values_[static_cast<std::size_t>(std::clamp(rank, 1LL, n) - 1)];
}

double Sample::mean() const noexcept {
  return std::accumulate(values_.begin(), values_.end(), 0.0) /
         static_cast<double>(values_.size());
}

double Sample::standard_deviation() const noexcept {
  const std::size_t n = values_.size();
  if (n < 2) return 0.0;
  const double m = mean();
  double ss = 0.0;
  for (double v : values_) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(n - 1));
}

double cauchy_pdf(double x, const CauchyParams& p) {
  const double z = (x - p.mu()) / p.sigma();
  return 1.0 / (std::numbers::pi * p.sigma() * (1.0 + z * z));
}

double cauchy_log_pdf(double x, const CauchyParams& p) {
  const double z = (x - p.mu()) / p.sigma();
  return -std::log(std::numbers::pi * p.sigma()) - std::log1p(z * z);
}

double cauchy_cdf(double x, const CauchyParams& p) {
  const double z = (x - p.mu()) / p.sigma();
  // lower tail via atan(1/|z|) to avoid cancellation against 1/2
  if (z < 0.0) return std::atan(-1.0 / z) / std::numbers::pi;
  return 0.5 + std::atan(z) / std::numbers::pi;
}

double cauchy_survival(double x, const CauchyParams& p) {
  const double z = (x - p.mu()) / p.sigma();
  if (z > 0.0) return std::atan(1.0 / z) / std::numbers::pi;
  return 0.5 - std::atan(z) / std::numbers::pi;
}

double cauchy_quantile(double q, const CauchyParams& p) {
  if (!(q > 0.0 && q < 1.0)) {
    throw GofError(ErrorCode::domain, fmt::format("quantile level {} outside (0, 1)", q));
  }
  double z;
  if (q < 0.5) {
    z = -1.0 / std::tan(std::numbers::pi * q);
  } else if (q > 0.5) {
    z = 1.0 / std::tan(std::numbers::pi * (1.0 - q));
  } else {
    z = 0.0;
  }
  return p.mu() + p.sigma() * z;
}

double sample_quantile(std::span<const double> sorted, double q, QuantileConvention convention) {
  if (sorted.empty()) {
    throw GofError(ErrorCode::input_too_small, "quantile of an empty sample");
  }
  if (!(q > 0.0 && q < 1.0)) {
    throw GofError(ErrorCode::domain, fmt::format("quantile level {} outside (0, 1)", q));
  }
  const auto n = static_cast<double>(sorted.size());
  auto at_rank = [&](double h) {
    h = std::clamp(h, 1.0, n);
    const double lo = std::floor(h);
    const double frac = h - lo;
    const auto i = static_cast<std::size_t>(lo) - 1;
    if (frac == 0.0 || i + 1 >= sorted.size()) return sorted[i];
    return sorted[i] + frac * (sorted[i + 1] - sorted[i]);
  };
  switch (convention) {
    case QuantileConvention::linear_n_minus_1: return at_rank((n - 1.0) * q + 1.0);
    case QuantileConvention::linear_n_plus_1: return at_rank((n + 1.0) * q);
    case QuantileConvention::nearest_rank: return at_rank(std::ceil(n * q));
  }
  return at_rank((n - 1.0) * q + 1.0);
}

double sample_quantile(const Sample& s, double q, QuantileConvention convention) {
  return sample_quantile(s.values(), q, convention);
}

double sample_median(const Sample& s) {
  const std::size_t n = s.size();
  if (n % 2 == 0) return 0.5 * (s[n / 2 - 1] + s[n / 2]);
  return s[(n - 1) / 2];
}

CauchyParams estimate_params(const Sample& s, QuantileConvention convention) {
  if (s.size() < min_test_size) {
    throw GofError(ErrorCode::input_too_small,
                   fmt::format("need at least {} observations, got {}", min_test_size, s.size()));
  }
  const double mu = sample_median(s);
  const double sigma =
      0.5 * (sample_quantile(s, 0.75, convention) - sample_quantile(s, 0.25, convention));
  if (!(sigma > 0.0)) {
    throw GofError(ErrorCode::degenerate_scale,
                   "half-interquartile range is zero; the central observations are identical");
  }
  return CauchyParams(mu, sigma);
}

Sample standardize(const Sample& s, const CauchyParams& p) {
  std::vector<double> y(s.values().begin(), s.values().end());
  for (double& v : y) v = (v - p.mu()) / p.sigma();
  return Sample::from_sorted(std::move(y));
}

}  // namespace cauchy_gof
