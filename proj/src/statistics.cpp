#include "cauchy_gof/statistics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <optional>

#include <fmt/format.h>

#include "cauchy_gof/error.hpp"

namespace cauchy_gof {

std::string_view to_string(TestId id) {
  switch (id) {
    case TestId::ks: return "ks";
    case TestId::anderson_darling: return "a2";
    case TestId::cramer_von_mises: return "w2";
    case TestId::gurtler_henze: return "dnl";
    case TestId::zhang_zk: return "zk";
    case TestId::zhang_za: return "za";
    case TestId::zhang_zc: return "zc";
    case TestId::d1: return "d1";
    case TestId::d2: return "d2";
    case TestId::d3: return "d3";
    case TestId::d4: return "d4";
    case TestId::d5: return "d5";
    case TestId::d6: return "d6";
    case TestId::d7: return "d7";
  }
  return "unknown";
}

std::string_view display_name(TestId id) {
  switch (id) {
    case TestId::ks: return "KS";
    case TestId::anderson_darling: return "A2";
    case TestId::cramer_von_mises: return "W2";
    case TestId::gurtler_henze: return "Dn,l";
    case TestId::zhang_zk: return "ZK";
    case TestId::zhang_za: return "ZA";
    case TestId::zhang_zc: return "ZC";
    case TestId::d1: return "D1";
    case TestId::d2: return "D2";
    case TestId::d3: return "D3";
    case TestId::d4: return "D4";
    case TestId::d5: return "D5";
    case TestId::d6: return "D6";
    case TestId::d7: return "D7";
  }
  return "?";
}

TestId parse_test_id(std::string_view text) {
  for (TestId id : all_tests) {
    if (text == to_string(id)) return id;
  }
  throw GofError(ErrorCode::parse, fmt::format("unknown test '{}'", text));
}

std::vector<TestId> parse_test_list(std::string_view text) {
  std::vector<TestId> out;
  auto add = [&](TestId id) {
    if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
  };
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    std::string_view token = text.substr(pos, comma - pos);
    while (!token.empty() && std::isspace(static_cast<unsigned char>(token.front()))) {
      token.remove_prefix(1);
    }
    while (!token.empty() && std::isspace(static_cast<unsigned char>(token.back()))) {
      token.remove_suffix(1);
    }
    if (token == "all") {
      for (TestId id : all_tests) add(id);
    } else if (token == "edf") {
      for (TestId id : edf_group) add(id);
    } else if (token == "kl") {
      for (TestId id : kl_group) add(id);
    } else if (!token.empty()) {
      add(parse_test_id(token));
    }
    pos = comma + 1;
  }
  if (out.empty()) throw GofError(ErrorCode::parse, "empty test selection");
  return out;
}

bool is_kl_test(TestId id) { return static_cast<int>(id) >= static_cast<int>(TestId::d1); }

EntropyId entropy_of(TestId id) {
  if (!is_kl_test(id)) {
    throw GofError(ErrorCode::configuration,
                   fmt::format("{} is not an entropy-based test", display_name(id)));
  }
  return static_cast<EntropyId>(static_cast<int>(id) - static_cast<int>(TestId::d1));
}

TestId kl_test_for(EntropyId id) {
  return static_cast<TestId>(static_cast<int>(TestId::d1) + static_cast<int>(id));
}

bool is_window_based(TestId id) { return is_kl_test(id) && is_window_based(entropy_of(id)); }

std::optional<int> resolve_window(TestId id, std::size_t n, const WindowOverrides& overrides) {
  if (!is_window_based(id)) return std::nullopt;
  if (auto it = overrides.find(id); it != overrides.end()) return it->second;
  return default_window(entropy_of(id), n);
}

namespace {

// Lazily computed intermediate results shared by several statistics.
class PreparedSample {
 public:
  PreparedSample(const Sample& s, const StatisticOptions& opt) : s_(s), opt_(opt) {}

  const CauchyParams& params() {
    if (!params_) params_ = estimate_params(s_, opt_.convention);
    return *params_;
  }
  const FittedProbabilities& probabilities() {
    if (!probs_) probs_ = fitted_probabilities(s_, params(), opt_.clamp_epsilon);
    return *probs_;
  }
  double log_likelihood() {
    if (!ll_) ll_ = log_likelihood_term(s_, params());
    return *ll_;
  }
  const std::vector<double>& density() {
    if (!density_) density_ = kernel_density_at_order_statistics(s_);
    return *density_;
  }

  double compute(TestId id, std::optional<int> window) {
    switch (id) {
      case TestId::ks: return ks_from_probabilities(probabilities());
      case TestId::anderson_darling: return anderson_darling_from_probabilities(probabilities());
      case TestId::cramer_von_mises: return cramer_von_mises_from_probabilities(probabilities());
      case TestId::zhang_zk: return zhang_zk_from_probabilities(probabilities());
      case TestId::zhang_za: return zhang_za_from_probabilities(probabilities());
      case TestId::zhang_zc: return zhang_zc_from_probabilities(probabilities());
      case TestId::gurtler_henze: {
        const Sample y = standardize(s_, params());
        return gurtler_henze_from_standardized(y.values(), opt_.lambda);
      }
      default: break;
    }
    const EntropyId est = entropy_of(id);
    const int m = window.value_or(default_window(est, s_.size()));
    // parameters first so that degenerate-scale errors take precedence
    const double ll = log_likelihood();
    double h;
    switch (est) {
      case EntropyId::bowman: h = entropy_bowman(s_, density()); break;
      case EntropyId::alizadeh:
        check_window(est, s_.size(), m);
        h = entropy_alizadeh(s_, m, opt_.alizadeh, density());
        break;
      default: h = estimate_entropy(est, s_, m, {opt_.ebrahimi, opt_.alizadeh}); break;
    }
    return std::exp(-h - ll);
  }

 private:
  const Sample& s_;
  const StatisticOptions& opt_;
  std::optional<CauchyParams> params_;
  std::optional<FittedProbabilities> probs_;
  std::optional<double> ll_;
  std::optional<std::vector<double>> density_;
};

}  // namespace

double compute_statistic(TestId id, const Sample& s, std::optional<int> m,
                         const StatisticOptions& options) {
  PreparedSample prepared(s, options);
  return prepared.compute(id, m);
}

std::vector<double> compute_statistics(std::span<const TestId> tests, const Sample& s,
                                       std::span<const std::optional<int>> windows,
                                       const StatisticOptions& options) {
  if (windows.size() != tests.size()) {
    throw GofError(ErrorCode::configuration, "compute_statistics: one window slot per test");
  }
  PreparedSample prepared(s, options);
  std::vector<double> out;
  out.reserve(tests.size());
  for (std::size_t k = 0; k < tests.size(); ++k) out.push_back(prepared.compute(tests[k], windows[k]));
  return out;
}

}  // namespace cauchy_gof
