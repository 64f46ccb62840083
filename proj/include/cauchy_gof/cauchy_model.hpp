#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace cauchy_gof {

/// Location/scale of a Cauchy law. Construction enforces sigma > 0.
class CauchyParams {
 public:
  CauchyParams(double mu, double sigma);

  double mu() const noexcept { return mu_; }
  double sigma() const noexcept { return sigma_; }

 private:
  double mu_;
  double sigma_;
};

/// Rule used to turn order statistics into a sample p-th quantile.
enum class QuantileConvention {
  linear_n_minus_1,  // rank h = (n-1)p + 1, linear between neighbours
  linear_n_plus_1,   // rank h = (n+1)p, clamped to [1, n]
  nearest_rank,      // rank ceil(np), clamped to [1, n]
};

std::string_view to_string(QuantileConvention convention);
QuantileConvention parse_quantile_convention(std::string_view text);

/// The minimum sample size accepted by parameter estimation and every test.
inline constexpr std::size_t min_test_size = 4;

/// Finite observations held as ascending order statistics.
class Sample {
 public:
  /// Sorts `values`; throws on NaN/infinity or an empty input.
  explicit Sample(std::vector<double> values);

  /// Same as the constructor but also keeps a copy of the input order.
  static Sample with_original_order(std::vector<double> values);

  /// Wraps values already in ascending order (checked).
  static Sample from_sorted(std::vector<double> sorted);

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

  /// Order statistic X_(i) for a 1-based rank, with ranks outside 1..n
  /// clamped to the extremes.
  double clamped(long long rank) const noexcept;

  double mean() const noexcept;
  /// Standard deviation with the n-1 divisor.
  double standard_deviation() const noexcept;

  const std::optional<std::vector<double>>& original_order() const noexcept {
    return original_;
  }

 private:
  struct sorted_tag {};
  Sample(sorted_tag, std::vector<double> sorted);

  std::vector<double> values_;
  std::optional<std::vector<double>> original_;
};

double cauchy_pdf(double x, const CauchyParams& p);
double cauchy_log_pdf(double x, const CauchyParams& p);
double cauchy_cdf(double x, const CauchyParams& p);
/// 1 - cauchy_cdf, without cancellation in the upper tail.
double cauchy_survival(double x, const CauchyParams& p);
/// Inverse CDF; throws a domain error unless 0 < q < 1.
double cauchy_quantile(double q, const CauchyParams& p);

/// Sample quantile of ascending data under the given convention.
double sample_quantile(std::span<const double> sorted, double q,
                       QuantileConvention convention = QuantileConvention::linear_n_minus_1);
double sample_quantile(const Sample& s, double q,
                       QuantileConvention convention = QuantileConvention::linear_n_minus_1);

double sample_median(const Sample& s);

/// Median and half-interquartile range. Throws for n < 4 or a zero
/// interquartile range.
CauchyParams estimate_params(const Sample& s,
                             QuantileConvention convention = QuantileConvention::linear_n_minus_1);

/// (X - mu) / sigma, order preserved.
Sample standardize(const Sample& s, const CauchyParams& p);

}  // namespace cauchy_gof
