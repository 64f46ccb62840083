#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "cauchy_gof/error.hpp"
#include "cauchy_gof/kl_tests.hpp"
#include "cauchy_gof/statistics.hpp"

using namespace cauchy_gof;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const std::vector<double> sample7{0.31, -1.7, 2.4, 0.05, -0.62, 5.9, 1.13};

std::vector<double> cauchy_draws(std::size_t n, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::cauchy_distribution<double> d;
  std::vector<double> x(n);
  for (auto& v : x) v = d(gen);
  return x;
}

}  // namespace

// Reference values from tests/oracles/entropy_oracle.py.
TEST_CASE("KL statistics match the oracle") {
  const Sample s(sample7);
  CHECK_THAT(kl_statistic({EntropyId::vasicek, 2}, s), WithinRel(1.6766079408822756, 1e-12));
  CHECK_THAT(kl_statistic({EntropyId::alizadeh, 2}, s), WithinRel(1.090320750397872, 1e-12));
}

TEST_CASE("D1 equals exp(-H - mean log density) term by term") {
  const Sample s(cauchy_draws(30, 2));
  const auto p = estimate_params(s);
  double loglik = 0.0;
  for (double x : s.values()) loglik += std::log(cauchy_pdf(x, p));
  loglik /= 30.0;
  const double h = entropy_vasicek(s, 8);
  CHECK_THAT(log_likelihood_term(s, p), WithinRel(loglik, 1e-13));
  CHECK_THAT(kl_statistic({EntropyId::vasicek, 8}, s), WithinRel(std::exp(-h - loglik), 1e-12));
  CHECK_THAT(compute_statistic(TestId::d1, s, 8), WithinRel(std::exp(-h - loglik), 1e-12));
}

TEST_CASE("tabulated default windows") {
  using E = EntropyId;
  const std::size_t sizes[] = {10, 20, 30, 50};
  const int expected[6][4] = {{2, 4, 8, 20},   {9, 19, 29, 49}, {5, 10, 15, 25},
                              {2, 4, 11, 23},  {5, 10, 15, 25}, {5, 10, 15, 25}};
  const E ids[] = {E::vasicek, E::van_es, E::ebrahimi, E::correa, E::yousefzadeh_arghami,
                   E::alizadeh};
  for (int r = 0; r < 6; ++r) {
    for (int c = 0; c < 4; ++c) CHECK(default_window(ids[r], sizes[c]) == expected[r][c]);
  }
  CHECK(default_window(E::bowman, 30) == 0);
}

TEST_CASE("default windows for other sizes scale from the nearest tabulated size") {
  CHECK(default_window(EntropyId::vasicek, 15) == 3);    // tie 10/20 goes to 10
  CHECK(default_window(EntropyId::vasicek, 40) == 11);   // tie 30/50 goes to 30
  CHECK(default_window(EntropyId::van_es, 100) == 98);
  CHECK(default_window(EntropyId::van_es, 5) == 4);      // clamped to n-1
  CHECK(default_window(EntropyId::vasicek, 5) == 1);
  for (std::size_t n = 4; n < 300; n += 7) {
    for (EntropyId id : {EntropyId::vasicek, EntropyId::van_es, EntropyId::ebrahimi,
                         EntropyId::correa, EntropyId::yousefzadeh_arghami, EntropyId::alizadeh}) {
      const int m = default_window(id, n);
      CHECK(m >= 1);
      CHECK(m <= max_window(id, n));
    }
  }
}

TEST_CASE("statistics over several windows equal one-at-a-time evaluation") {
  const Sample s(cauchy_draws(20, 3));
  const std::vector<int> windows{1, 2, 3, 5, 8, 10};
  for (EntropyId id : {EntropyId::vasicek, EntropyId::correa, EntropyId::yousefzadeh_arghami,
                       EntropyId::alizadeh}) {
    const auto many = kl_statistics_over_windows(id, s, windows);
    for (std::size_t k = 0; k < windows.size(); ++k) {
      CHECK_THAT(many[k], WithinRel(kl_statistic({id, windows[k]}, s), 1e-13));
    }
  }
}

TEST_CASE("test identifiers and lists") {
  CHECK(all_tests.size() == 14);
  CHECK(edf_group.size() == 7);
  CHECK(kl_group.size() == 7);
  CHECK(parse_test_list("all").size() == 14);
  CHECK(parse_test_list("kl") == std::vector<TestId>(kl_group.begin(), kl_group.end()));
  CHECK(parse_test_list("ks, d4,za") ==
        std::vector<TestId>{TestId::ks, TestId::d4, TestId::zhang_za});
  CHECK_THROWS_AS(parse_test_list("ks,xx"), GofError);
  for (TestId t : all_tests) CHECK(parse_test_id(to_string(t)) == t);
  CHECK(display_name(TestId::gurtler_henze) == "Dn,l");
  CHECK(kl_test_name(EntropyId::bowman) == "D2");
  CHECK(is_kl_test(TestId::d2));
  CHECK_FALSE(is_window_based(TestId::d2));
  CHECK(is_window_based(TestId::d3));
  CHECK(entropy_of(TestId::d6) == EntropyId::yousefzadeh_arghami);
  CHECK(kl_test_for(EntropyId::van_es) == TestId::d3);
  CHECK(resolve_window(TestId::d1, 30) == 8);
  CHECK(resolve_window(TestId::d1, 30, {{TestId::d1, 5}}) == 5);
  CHECK_FALSE(resolve_window(TestId::ks, 30).has_value());
  CHECK_FALSE(resolve_window(TestId::d2, 30).has_value());
}

TEST_CASE("batched statistics equal single evaluations") {
  const Sample s(cauchy_draws(30, 4));
  std::vector<std::optional<int>> windows;
  for (TestId t : all_tests) windows.push_back(resolve_window(t, 30));
  const auto all = compute_statistics(all_tests, s, windows);
  for (std::size_t k = 0; k < all_tests.size(); ++k) {
    CHECK(all[k] == compute_statistic(all_tests[k], s, windows[k]));
  }
}

TEST_CASE("all statistics are affine and reflection invariant") {
  for (unsigned seed = 200; seed < 230; ++seed) {
    auto x = cauchy_draws(20, seed);
    std::vector<double> y, z;
    for (double v : x) {
      y.push_back(3.7 * v - 2.1);
      z.push_back(-v);
    }
    std::vector<std::optional<int>> windows;
    for (TestId t : all_tests) windows.push_back(resolve_window(t, 20));
    StatisticOptions opt;
    opt.ebrahimi.policy = SupportPolicy::widen;
    const auto a = compute_statistics(all_tests, Sample(x), windows, opt);
    const auto b = compute_statistics(all_tests, Sample(y), windows, opt);
    const auto c = compute_statistics(all_tests, Sample(z), windows, opt);
    for (std::size_t k = 0; k < a.size(); ++k) {
      INFO(to_string(all_tests[k]));
      CHECK_THAT(b[k], WithinAbs(a[k], 1e-9));
      CHECK_THAT(c[k], WithinAbs(a[k], 1e-9));
    }
  }
}

TEST_CASE("invalid windows are rejected by the statistic") {
  const Sample s(cauchy_draws(10, 5));
  CHECK_THROWS_AS(compute_statistic(TestId::d1, s, 6), GofError);
  CHECK_NOTHROW(compute_statistic(TestId::d3, s, 9));
  CHECK_THROWS_AS(compute_statistic(TestId::d3, s, 10), GofError);
}
