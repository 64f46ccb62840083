#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "cauchy_gof/cauchy_model.hpp"

namespace cauchy_gof {

/// Nonparametric estimators of Shannon differential entropy (nats).
enum class EntropyId {
  vasicek,
  bowman,
  van_es,
  ebrahimi,
  correa,
  yousefzadeh_arghami,
  alizadeh,
};

std::string_view to_string(EntropyId id);

bool is_window_based(EntropyId id);

/// Largest admissible window for a sample of size n: n-1 for Van Es,
/// floor(n/2) for the other spacing estimators, 0 for Bowman.
int max_window(EntropyId id, std::size_t n);

/// Throws invalid_window unless 1 <= m <= max_window(id, n).
void check_window(EntropyId id, std::size_t n, int m);

/// How the support extension [a, b] = mean -/+ k*s is handled when it fails
/// to cover the sample.
enum class SupportPolicy {
  literal,  // use a, b as computed; only nonpositive spacings are an error
  widen,    // push a, b just outside the extremes by 1% of the half-IQR
};

std::string_view to_string(SupportPolicy policy);
SupportPolicy parse_support_policy(std::string_view text);

struct EbrahimiConfig {
  double k = 5.0;
  SupportPolicy policy = SupportPolicy::literal;
};

/// Reading of the bracket in the Alizadeh Noughabi estimator.
enum class AlizadehReading {
  average,     // [f(X_(i+m)) + f(X_(i-m))] / 2
  difference,  // [f(X_(i+m)) - f(X_(i-m))] / 2, as printed
};

std::string_view to_string(AlizadehReading reading);
AlizadehReading parse_alizadeh_reading(std::string_view text);

/// Normal-reference bandwidth 1.06 * s * n^(-1/5). Throws zero_bandwidth
/// for constant samples.
double kernel_bandwidth(const Sample& s);

/// Gaussian kernel density estimate built on `s`, evaluated at x.
double kernel_density(const Sample& s, double bandwidth, double x);

/// Kernel density estimate at every order statistic, in ascending order.
/// Shared by the Bowman and Alizadeh estimators.
std::vector<double> kernel_density_at_order_statistics(const Sample& s);

double entropy_vasicek(const Sample& s, int m);
double entropy_bowman(const Sample& s);
double entropy_bowman(const Sample& s, std::span<const double> density_at_points);
double entropy_van_es(const Sample& s, int m);
double entropy_ebrahimi(const Sample& s, int m, const EbrahimiConfig& cfg = {});
double entropy_correa(const Sample& s, int m);
double entropy_yousefzadeh_arghami(const Sample& s, int m);
double entropy_alizadeh(const Sample& s, int m,
                        AlizadehReading reading = AlizadehReading::average);
double entropy_alizadeh(const Sample& s, int m, AlizadehReading reading,
                        std::span<const double> density_at_points);

/// True when mean -/+ k*s fails to strictly enclose the sample.
bool ebrahimi_support_violated(const Sample& s, double k);

/// The CDF estimate used by the Yousefzadeh-Arghami estimator at each order
/// statistic (index 0 holds X_(1)).
std::vector<double> yousefzadeh_arghami_cdf(const Sample& s);

struct EntropyOptions {
  EbrahimiConfig ebrahimi{};
  AlizadehReading alizadeh = AlizadehReading::average;
};

/// Dispatches to the estimator named by `id`; `m` is ignored for Bowman.
double estimate_entropy(EntropyId id, const Sample& s, int m, const EntropyOptions& options = {});

}  // namespace cauchy_gof
