#include "cauchy_gof/edf_tests.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "cauchy_gof/error.hpp"

namespace cauchy_gof {

void check_clamp_epsilon(double eps) {
  if (!(eps > 0.0 && eps < 1e-6)) {
    throw GofError(ErrorCode::configuration,
                   fmt::format("clamp epsilon must lie in (0, 1e-6), got {}", eps));
  }
}

FittedProbabilities fitted_probabilities(const Sample& s, const CauchyParams& p, double eps) {
  check_clamp_epsilon(eps);
  FittedProbabilities u;
  u.lower.resize(s.size());
  u.upper.resize(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    u.lower[i] = std::clamp(cauchy_cdf(s[i], p), eps, 1.0 - eps);
    u.upper[i] = std::clamp(cauchy_survival(s[i], p), eps, 1.0 - eps);
  }
  return u;
}

FittedProbabilities probabilities_from_cdf_values(std::span<const double> u) {
  FittedProbabilities out;
  out.lower.assign(u.begin(), u.end());
  out.upper.resize(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out.upper[i] = 1.0 - u[i];
  return out;
}

double ks_from_probabilities(const FittedProbabilities& u) {
  const double n = static_cast<double>(u.lower.size());
  double stat = 0.0;
  for (std::size_t k = 0; k < u.lower.size(); ++k) {
    const double i = static_cast<double>(k + 1);
    stat = std::max({stat, i / n - u.lower[k], u.lower[k] - (i - 1.0) / n});
  }
  return stat;
}

double anderson_darling_from_probabilities(const FittedProbabilities& u) {
  const double n = static_cast<double>(u.lower.size());
  double sum = 0.0;
  for (std::size_t k = 0; k < u.lower.size(); ++k) {
    const double i = static_cast<double>(k + 1);
    sum += (i - 0.5) * std::log(u.lower[k]) + (n - i + 0.5) * std::log(u.upper[k]);
  }
  return -2.0 / n * sum - n;
}

double cramer_von_mises_from_probabilities(const FittedProbabilities& u) {
  const double n = static_cast<double>(u.lower.size());
  double sum = 0.0;
  for (std::size_t k = 0; k < u.lower.size(); ++k) {
    const double d = u.lower[k] - (static_cast<double>(k + 1) - 0.5) / n;
    sum += d * d;
  }
  return sum + 1.0 / (12.0 * n);
}

double zhang_zk_term(double lower, double upper, std::size_t i, std::size_t n) {
  const double id = static_cast<double>(i);
  const double nd = static_cast<double>(n);
  const double lo = id - 0.5;
  const double hi = nd - id + 0.5;
  return lo * std::log(lo / (nd * lower)) + hi * std::log(hi / (nd * upper));
}

double zhang_zk_from_probabilities(const FittedProbabilities& u) {
  double stat = -HUGE_VAL;
  for (std::size_t k = 0; k < u.lower.size(); ++k) {
    stat = std::max(stat, zhang_zk_term(u.lower[k], u.upper[k], k + 1, u.lower.size()));
  }
  return stat;
}

double zhang_za_from_probabilities(const FittedProbabilities& u) {
  const double n = static_cast<double>(u.lower.size());
  double sum = 0.0;
  for (std::size_t k = 0; k < u.lower.size(); ++k) {
    const double i = static_cast<double>(k + 1);
    sum += std::log(u.lower[k]) / (n - i + 0.5) + std::log(u.upper[k]) / (i - 0.5);
  }
  return -sum;
}

double zhang_zc_from_probabilities(const FittedProbabilities& u) {
  const double n = static_cast<double>(u.lower.size());
  double sum = 0.0;
  for (std::size_t k = 0; k < u.lower.size(); ++k) {
    const double i = static_cast<double>(k + 1);
    // 1/u - 1 == (1 - u) / u
    const double t = std::log((u.upper[k] / u.lower[k]) / ((n - 0.5) / (i - 0.75) - 1.0));
    sum += t * t;
  }
  return sum;
}

double gurtler_henze_from_standardized(std::span<const double> y, double lambda) {
  if (!(lambda > 0.0)) {
    throw GofError(ErrorCode::configuration,
                   fmt::format("lambda must be positive, got {}", lambda));
  }
  const std::size_t n = y.size();
  const double nd = static_cast<double>(n);
  const double lam2 = lambda * lambda;
  // diagonal terms contribute lambda / lambda^2 each
  double pairs = nd / lambda;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      const double d = y[j] - y[k];
      pairs += 2.0 * lambda / (lam2 + d * d);
    }
  }
  const double l1 = 1.0 + lambda;
  double single = 0.0;
  for (double v : y) single += l1 / (l1 * l1 + v * v);
  return 2.0 / nd * pairs - 4.0 * single + 2.0 * nd / (2.0 + lambda);
}

namespace {

FittedProbabilities probabilities_for(const Sample& s, const EdfOptions& opt) {
  return fitted_probabilities(s, estimate_params(s, opt.convention), opt.clamp_epsilon);
}

}  // namespace

double ks_statistic(const Sample& s, const EdfOptions& opt) {
  return ks_from_probabilities(probabilities_for(s, opt));
}

double anderson_darling(const Sample& s, const EdfOptions& opt) {
  return anderson_darling_from_probabilities(probabilities_for(s, opt));
}

double cramer_von_mises(const Sample& s, const EdfOptions& opt) {
  return cramer_von_mises_from_probabilities(probabilities_for(s, opt));
}

double gurtler_henze(const Sample& s, const EdfOptions& opt) {
  const Sample y = standardize(s, estimate_params(s, opt.convention));
  return gurtler_henze_from_standardized(y.values(), opt.lambda);
}

double zhang_zk(const Sample& s, const EdfOptions& opt) {
  return zhang_zk_from_probabilities(probabilities_for(s, opt));
}

double zhang_za(const Sample& s, const EdfOptions& opt) {
  return zhang_za_from_probabilities(probabilities_for(s, opt));
}

double zhang_zc(const Sample& s, const EdfOptions& opt) {
  return zhang_zc_from_probabilities(probabilities_for(s, opt));
}

}  // namespace cauchy_gof
