#include "cauchy_gof/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "cauchy_gof/error.hpp"

namespace cauchy_gof {

std::string_view to_string(EntropyId id) {
  switch (id) {
    case EntropyId::vasicek: return "vasicek";
    case EntropyId::bowman: return "bowman";
    case EntropyId::van_es: return "van-es";
    case EntropyId::ebrahimi: return "ebrahimi";
    case EntropyId::correa: return "correa";
    case EntropyId::yousefzadeh_arghami: return "yousefzadeh-arghami";
    case EntropyId::alizadeh: return "alizadeh";
  }
  return "unknown";
}

bool is_window_based(EntropyId id) { return id != EntropyId::bowman; }

int max_window(EntropyId id, std::size_t n) {
  if (id == EntropyId::bowman) return 0;
  if (id == EntropyId::van_es) return n == 0 ? 0 : static_cast<int>(n - 1);
  return static_cast<int>(n / 2);
}

void check_window(EntropyId id, std::size_t n, int m) {
  const int hi = max_window(id, n);
  if (m < 1 || m > hi) {
    throw GofError(ErrorCode::invalid_window,
                   fmt::format("window m={} outside 1..{} for {} with n={}", m, hi,
                               to_string(id), n));
  }
}

std::string_view to_string(SupportPolicy policy) {
  return policy == SupportPolicy::literal ? "literal" : "widen";
}

SupportPolicy parse_support_policy(std::string_view text) {
  if (text == "literal") return SupportPolicy::literal;
  if (text == "widen") return SupportPolicy::widen;
  throw GofError(ErrorCode::parse, fmt::format("unknown support policy '{}'", text));
}

std::string_view to_string(AlizadehReading reading) {
  return reading == AlizadehReading::average ? "average" : "difference";
}

AlizadehReading parse_alizadeh_reading(std::string_view text) {
  if (text == "average") return AlizadehReading::average;
  if (text == "difference" || text == "literal") return AlizadehReading::difference;
  throw GofError(ErrorCode::parse, fmt::format("unknown Alizadeh reading '{}'", text));
}

namespace {

[[noreturn]] void throw_tied(std::string_view estimator) {
  throw GofError(ErrorCode::tied_data,
                 fmt::format("{} entropy estimate undefined: zero spacing between order "
                             "statistics (tied data)",
                             estimator));
}

// Kernel terms beyond this many bandwidths are below 1e-21 of the peak.
constexpr double kernel_cutoff = 10.0;

}  // namespace

double kernel_bandwidth(const Sample& s) {
  const double sd = s.standard_deviation();
  if (!(sd > 0.0)) {
    throw GofError(ErrorCode::zero_bandwidth,
                   "kernel bandwidth is zero: the sample has no spread");
  }
  return 1.06 * sd * std::pow(static_cast<double>(s.size()), -0.2);
}

double kernel_density(const Sample& s, double bandwidth, double x) {
  double sum = 0.0;
  for (double xj : s.values()) {
    const double z = (x - xj) / bandwidth;
    sum += std::exp(-0.5 * z * z);
  }
  return sum / (static_cast<double>(s.size()) * bandwidth * std::sqrt(2.0 * std::numbers::pi));
}

std::vector<double> kernel_density_at_order_statistics(const Sample& s) {
  const double h = kernel_bandwidth(s);
  const std::size_t n = s.size();
  std::vector<double> f(n, 1.0);  // self term exp(0)
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double z = (s[j] - s[i]) / h;
      if (z > kernel_cutoff) break;
      const double k = std::exp(-0.5 * z * z);
      f[i] += k;
      f[j] += k;
    }
  }
  const double norm = static_cast<double>(n) * h * std::sqrt(2.0 * std::numbers::pi);
  for (double& v : f) v /= norm;
  return f;
}

double entropy_vasicek(const Sample& s, int m) {
  check_window(EntropyId::vasicek, s.size(), m);
  const auto n = static_cast<long long>(s.size());
  const double scale = static_cast<double>(n) / (2.0 * m);
  double sum = 0.0;
  for (long long i = 1; i <= n; ++i) {
    const double spacing = s.clamped(i + m) - s.clamped(i - m);
    if (!(spacing > 0.0)) throw_tied("Vasicek");
    sum += std::log(scale * spacing);
  }
  return sum / static_cast<double>(n);
}

double entropy_bowman(const Sample&, std::span<const double> density_at_points) {
  double sum = 0.0;
  for (double f : density_at_points) sum += std::log(f);
  return -sum / static_cast<double>(density_at_points.size());
}

double entropy_bowman(const Sample& s) {
  if (s.size() < 2) {
    throw GofError(ErrorCode::input_too_small, "Bowman estimator needs at least 2 points");
  }
  const auto f = kernel_density_at_order_statistics(s);
  return entropy_bowman(s, f);
}

double entropy_van_es(const Sample& s, int m) {
  check_window(EntropyId::van_es, s.size(), m);
  const auto n = static_cast<long long>(s.size());
  const double scale = static_cast<double>(n + 1) / m;
  double sum = 0.0;
  for (long long i = 1; i <= n - m; ++i) {
    const double spacing = s.clamped(i + m) - s.clamped(i);
    if (!(spacing > 0.0)) throw_tied("Van Es");
    sum += std::log(scale * spacing);
  }
  double harmonic = 0.0;
  for (long long i = m; i <= n; ++i) harmonic += 1.0 / static_cast<double>(i);
  return sum / static_cast<double>(n - m) + harmonic - std::log(scale);
}

bool ebrahimi_support_violated(const Sample& s, double k) {
  const double mean = s.mean();
  const double sd = s.standard_deviation();
  return mean - k * sd >= s[0] || mean + k * sd <= s[s.size() - 1];
}

double entropy_ebrahimi(const Sample& s, int m, const EbrahimiConfig& cfg) {
  check_window(EntropyId::ebrahimi, s.size(), m);
  if (!(cfg.k > 0.0)) {
    throw GofError(ErrorCode::configuration,
                   fmt::format("Ebrahimi support multiplier k must be positive, got {}", cfg.k));
  }
  const auto n = static_cast<long long>(s.size());
  const double mean = s.mean();
  const double sd = s.standard_deviation();
  double a = mean - cfg.k * sd;
  double b = mean + cfg.k * sd;
  const double x_first = s[0];
  const double x_last = s[s.size() - 1];
  const bool violated = a >= x_first || b <= x_last;
  if (violated && cfg.policy == SupportPolicy::widen) {
    double spread = 0.5 * (sample_quantile(s, 0.75) - sample_quantile(s, 0.25));
    if (!(spread > 0.0)) spread = sd;
    a = std::min(a, x_first - 0.01 * spread);
    b = std::max(b, x_last + 0.01 * spread);
  }

  // augmented points Y_(1-m) .. Y_(n+m), stored at offset m-1
  std::vector<double> y(static_cast<std::size_t>(n + 2 * m));
  auto at = [&](long long rank) -> double& { return y[static_cast<std::size_t>(rank + m - 1)]; };
  for (long long i = 1; i <= n; ++i) at(i) = s[static_cast<std::size_t>(i - 1)];
  for (long long i = 1; i <= m; ++i) {
    at(i - m) = a + static_cast<double>(i - 1) / m * (x_first - a);
  }
  for (long long i = n - m + 1; i <= n; ++i) {
    at(i + m) = b - static_cast<double>(n - i) / m * (b - x_last);
  }

  const double md = m;
  double sum = 0.0;
  for (long long i = 1; i <= n; ++i) {
    double d;
    if (i <= m) {
      d = 1.0 + static_cast<double>(i + 1) / md - static_cast<double>(i) / (md * md);
    } else if (i <= n - m) {
      d = 2.0;
    } else {
      d = 1.0 + static_cast<double>(n - i) / (md + 1.0);
    }
    const double spacing = at(i + m) - at(i - m);
    if (!(spacing > 0.0)) {
      if (violated) {
        throw GofError(ErrorCode::support_extension,
                       "Ebrahimi support extension does not cover the sample and produced a "
                       "nonpositive spacing");
      }
      throw_tied("Ebrahimi");
    }
    sum += std::log(static_cast<double>(n) / (d * md) * spacing);
  }
  return sum / static_cast<double>(n);
}

double entropy_correa(const Sample& s, int m) {
  check_window(EntropyId::correa, s.size(), m);
  const auto n = static_cast<long long>(s.size());
  const double width = 2.0 * m + 1.0;
  double sum = 0.0;
  for (long long i = 1; i <= n; ++i) {
    double local_mean = 0.0;
    for (long long j = i - m; j <= i + m; ++j) local_mean += s.clamped(j);
    local_mean /= width;
    double num = 0.0;
    double den = 0.0;
    for (long long j = i - m; j <= i + m; ++j) {
      const double dev = s.clamped(j) - local_mean;
      num += dev * static_cast<double>(j - i);
      den += dev * dev;
    }
    if (!(den > 0.0) || !(num > 0.0)) throw_tied("Correa");
    sum += std::log(num / (static_cast<double>(n) * den));
  }
  return -sum / static_cast<double>(n);
}

std::vector<double> yousefzadeh_arghami_cdf(const Sample& s) {
  const std::size_t n = s.size();
  if (n < 3) {
    throw GofError(ErrorCode::input_too_small,
                   "Yousefzadeh-Arghami estimator needs at least 3 points");
  }
  const double nd = static_cast<double>(n);
  std::vector<double> f(n);
  f[0] = 1.0 / (nd + 1.0);
  f[n - 1] = nd / (nd + 1.0);
  const double coef = (nd - 1.0) / (nd * (nd + 1.0));
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double outer = s[i + 1] - s[i - 1];
    if (!(outer > 0.0)) throw_tied("Yousefzadeh-Arghami");
    const double rank = static_cast<double>(i + 1);
    f[i] = coef * (rank + 1.0 / (nd - 1.0) + (s[i] - s[i - 1]) / outer);
  }
  return f;
}

double entropy_yousefzadeh_arghami(const Sample& s, int m) {
  check_window(EntropyId::yousefzadeh_arghami, s.size(), m);
  const auto f = yousefzadeh_arghami_cdf(s);
  const auto n = static_cast<long long>(s.size());
  auto f_at = [&](long long rank) {
    return f[static_cast<std::size_t>(std::clamp(rank, 1LL, n) - 1)];
  };
  std::vector<double> df(static_cast<std::size_t>(n));
  double total = 0.0;
  for (long long i = 1; i <= n; ++i) {
    const double d = f_at(i + m) - f_at(i - m);
    if (!(d > 0.0)) throw_tied("Yousefzadeh-Arghami");
    df[static_cast<std::size_t>(i - 1)] = d;
    total += d;
  }
  double sum = 0.0;
  for (long long i = 1; i <= n; ++i) {
    const double spacing = s.clamped(i + m) - s.clamped(i - m);
    if (!(spacing > 0.0)) throw_tied("Yousefzadeh-Arghami");
    const double d = df[static_cast<std::size_t>(i - 1)];
    sum += d / total * std::log(spacing / d);
  }
  return sum;
}

double entropy_alizadeh(const Sample& s, int m, AlizadehReading reading,
                        std::span<const double> density_at_points) {
  check_window(EntropyId::alizadeh, s.size(), m);
  const auto n = static_cast<long long>(s.size());
  auto f_at = [&](long long rank) {
    return density_at_points[static_cast<std::size_t>(std::clamp(rank, 1LL, n) - 1)];
  };
  double sum = 0.0;
  for (long long i = 1; i <= n; ++i) {
    const double upper = f_at(i + m);
    const double lower = f_at(i - m);
    const double bracket =
        reading == AlizadehReading::average ? 0.5 * (upper + lower) : 0.5 * (upper - lower);
    if (!(bracket > 0.0)) {
      throw GofError(ErrorCode::invalid_estimator_argument,
                     fmt::format("Alizadeh estimator ({} reading) has a nonpositive log "
                                 "argument at i={}",
                                 to_string(reading), i));
    }
    sum += std::log(bracket);
  }
  return -sum / static_cast<double>(n);
}

double entropy_alizadeh(const Sample& s, int m, AlizadehReading reading) {
  check_window(EntropyId::alizadeh, s.size(), m);
  const auto f = kernel_density_at_order_statistics(s);
  return entropy_alizadeh(s, m, reading, f);
}

double estimate_entropy(EntropyId id, const Sample& s, int m, const EntropyOptions& options) {
  switch (id) {
    case EntropyId::vasicek: return entropy_vasicek(s, m);
    case EntropyId::bowman: return entropy_bowman(s);
    case EntropyId::van_es: return entropy_van_es(s, m);
    case EntropyId::ebrahimi: return entropy_ebrahimi(s, m, options.ebrahimi);
    case EntropyId::correa: return entropy_correa(s, m);
    case EntropyId::yousefzadeh_arghami: return entropy_yousefzadeh_arghami(s, m);
    case EntropyId::alizadeh: return entropy_alizadeh(s, m, options.alizadeh);
  }
  throw GofError(ErrorCode::configuration, "unknown entropy estimator");
}

}  // namespace cauchy_gof
