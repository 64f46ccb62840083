#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cauchy_gof/cauchy_model.hpp"
#include "cauchy_gof/edf_tests.hpp"
#include "cauchy_gof/entropy.hpp"
#include "cauchy_gof/kl_tests.hpp"

namespace cauchy_gof {

/// The fourteen goodness-of-fit statistics. Large values reject for all.
enum class TestId {
  ks,
  anderson_darling,
  cramer_von_mises,
  gurtler_henze,
  zhang_zk,
  zhang_za,
  zhang_zc,
  d1,
  d2,
  d3,
  d4,
  d5,
  d6,
  d7,
};

inline constexpr std::array<TestId, 14> all_tests{
    TestId::ks, TestId::anderson_darling, TestId::cramer_von_mises, TestId::gurtler_henze,
    TestId::zhang_zk, TestId::zhang_za, TestId::zhang_zc, TestId::d1, TestId::d2,
    TestId::d3, TestId::d4, TestId::d5, TestId::d6, TestId::d7};

inline constexpr std::array<TestId, 7> edf_group{
    TestId::ks, TestId::anderson_darling, TestId::cramer_von_mises, TestId::gurtler_henze,
    TestId::zhang_zk, TestId::zhang_za, TestId::zhang_zc};

inline constexpr std::array<TestId, 7> kl_group{TestId::d1, TestId::d2, TestId::d3, TestId::d4,
                                                TestId::d5, TestId::d6, TestId::d7};

/// Short machine name: ks, a2, w2, dnl, zk, za, zc, d1..d7.
std::string_view to_string(TestId id);
/// Human label as used in printed tables (KS, A2, W2, Dn,l, ZK, ...).
std::string_view display_name(TestId id);
TestId parse_test_id(std::string_view text);
/// Comma-separated list; "all", "edf" and "kl" select groups.
std::vector<TestId> parse_test_list(std::string_view text);

bool is_kl_test(TestId id);
bool is_window_based(TestId id);
/// Entropy estimator behind a KL test; throws for the EDF-type tests.
EntropyId entropy_of(TestId id);
TestId kl_test_for(EntropyId id);

/// Every knob that changes a statistic's value, apart from the window.
struct StatisticOptions {
  QuantileConvention convention = QuantileConvention::linear_n_minus_1;
  double clamp_epsilon = 1e-12;
  double lambda = 5.0;
  EbrahimiConfig ebrahimi{};
  AlizadehReading alizadeh = AlizadehReading::average;

  EdfOptions edf() const { return {clamp_epsilon, lambda, convention}; }
  KlOptions kl() const { return {{ebrahimi, alizadeh}, convention}; }
};

/// Per-test window overrides; tests absent from the map use default_window.
using WindowOverrides = std::map<TestId, int>;

/// Window used for `id` at size n: the override if present, else the default.
/// Returns nullopt for tests without a window.
std::optional<int> resolve_window(TestId id, std::size_t n, const WindowOverrides& overrides = {});

double compute_statistic(TestId id, const Sample& s, std::optional<int> m = std::nullopt,
                         const StatisticOptions& options = {});

/// Several statistics on one sample with shared intermediate results
/// (fitted parameters, CDF values, kernel density). windows[k] applies to
/// tests[k].
std::vector<double> compute_statistics(std::span<const TestId> tests, const Sample& s,
                                       std::span<const std::optional<int>> windows,
                                       const StatisticOptions& options = {});

}  // namespace cauchy_gof
