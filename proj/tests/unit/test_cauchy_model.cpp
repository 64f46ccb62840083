#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "cauchy_gof/cauchy_model.hpp"
#include "cauchy_gof/dax_data.hpp"
#include "cauchy_gof/error.hpp"

using namespace cauchy_gof;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const GofError& e) {
    return e.code();
  }
  FAIL("expected a GofError");
  return ErrorCode::domain;
}

}  // namespace

TEST_CASE("params reject nonpositive or non-finite scale") {
  CHECK(code_of([] { CauchyParams(0.0, 0.0); }) == ErrorCode::degenerate_scale);
  CHECK(code_of([] { CauchyParams(0.0, -1.0); }) == ErrorCode::degenerate_scale);
  CHECK(code_of([] { CauchyParams(NAN, 1.0); }) == ErrorCode::non_finite_input);
  CHECK_NOTHROW(CauchyParams(-3.0, 1e-9));
}

TEST_CASE("sample sorts and rejects non-finite values") {
  Sample s({3.0, -1.0, 2.0});
  CHECK(s[0] == -1.0);
  CHECK(s[2] == 3.0);
  CHECK(s.clamped(0) == -1.0);
  CHECK(s.clamped(-5) == -1.0);
  CHECK(s.clamped(2) == 2.0);
  CHECK(s.clamped(9) == 3.0);
  CHECK(code_of([] { Sample({1.0, INFINITY}); }) == ErrorCode::non_finite_input);
  CHECK(code_of([] { Sample(std::vector<double>{}); }) == ErrorCode::input_too_small);
  CHECK_THROWS_AS(Sample::from_sorted({2.0, 1.0}), GofError);

  auto kept = Sample::with_original_order({3.0, -1.0, 2.0});
  REQUIRE(kept.original_order());
  CHECK((*kept.original_order())[0] == 3.0);
  CHECK_THAT(Sample({1.0, 2.0, 3.0, 4.0}).standard_deviation(),
             WithinRel(std::sqrt(5.0 / 3.0), 1e-15));
}

TEST_CASE("cdf, survival, pdf and quantile are consistent") {
  const CauchyParams p(1.5, 0.7);
  CHECK_THAT(cauchy_cdf(1.5, p), WithinAbs(0.5, 1e-16));
  CHECK_THAT(cauchy_cdf(2.2, p), WithinAbs(0.75, 1e-15));
  CHECK_THAT(cauchy_pdf(1.5, p), WithinRel(1.0 / (std::numbers::pi * 0.7), 1e-15));
  CHECK_THAT(cauchy_log_pdf(4.0, p), WithinRel(std::log(cauchy_pdf(4.0, p)), 1e-14));
  for (double x : {-1e6, -30.0, -1.0, 0.0, 1.4, 2.0, 55.0, 1e9}) {
    CHECK_THAT(cauchy_cdf(x, p) + cauchy_survival(x, p), WithinAbs(1.0, 1e-15));
  }
  for (double q : {1e-10, 0.01, 0.25, 0.5, 0.8, 0.999, 1.0 - 1e-10}) {
    const double x = cauchy_quantile(q, p);
    if (q < 0.5) {
      CHECK_THAT(cauchy_cdf(x, p), WithinRel(q, 1e-9));
    } else {
      CHECK_THAT(cauchy_survival(x, p), WithinRel(1.0 - q, 1e-6));
    }
  }
  CHECK_THAT(cauchy_quantile(0.75, CauchyParams(0.0, 1.0)), WithinAbs(1.0, 1e-15));
  CHECK(code_of([&] { cauchy_quantile(0.0, p); }) == ErrorCode::domain);
  CHECK(code_of([&] { cauchy_quantile(1.0, p); }) == ErrorCode::domain);
}

TEST_CASE("far tails keep relative precision") {
  const CauchyParams p(0.0, 1.0);
  // 1 - F(x) ~ 1/(pi x) for large x
  CHECK_THAT(cauchy_survival(1e12, p), WithinRel(1.0 / (std::numbers::pi * 1e12), 1e-9));
  CHECK_THAT(cauchy_cdf(-1e12, p), WithinRel(1.0 / (std::numbers::pi * 1e12), 1e-9));
}

TEST_CASE("sample quantile conventions") {
  const std::vector<double> x{1, 2, 3, 4, 5, 6, 7, 8};
  // rank (n-1)p + 1 = 2.75 -> 2.75
  CHECK_THAT(sample_quantile(x, 0.25, QuantileConvention::linear_n_minus_1), WithinAbs(2.75, 1e-15));
  // rank (n+1)p = 2.25
  CHECK_THAT(sample_quantile(x, 0.25, QuantileConvention::linear_n_plus_1), WithinAbs(2.25, 1e-15));
  // rank ceil(np) = 2
  CHECK(sample_quantile(x, 0.25, QuantileConvention::nearest_rank) == 2.0);
  CHECK(sample_quantile(x, 0.99, QuantileConvention::linear_n_plus_1) == 8.0);
  CHECK(sample_quantile(x, 0.01, QuantileConvention::nearest_rank) == 1.0);
  CHECK_THROWS_AS(sample_quantile(x, 0.0), GofError);
  for (auto c : {QuantileConvention::linear_n_minus_1, QuantileConvention::linear_n_plus_1,
                 QuantileConvention::nearest_rank}) {
    CHECK(parse_quantile_convention(to_string(c)) == c);
  }
  CHECK_THROWS_AS(parse_quantile_convention("type7"), GofError);
}

TEST_CASE("median and half-IQR of a worked sample") {
  Sample s({0.31, -1.7, 2.4, 0.05, -0.62, 5.9, 1.13});
  const auto p = estimate_params(s);
  CHECK(p.mu() == 0.31);
  // reference computed independently (numpy percentile)
  CHECK_THAT(p.sigma(), WithinRel(1.0249999999999999, 1e-15));
  CHECK(sample_median(Sample({4.0, 1.0, 3.0, 2.0})) == 2.5);
}

TEST_CASE("estimation preconditions") {
  CHECK(code_of([] { estimate_params(Sample({1.0, 2.0, 3.0})); }) == ErrorCode::input_too_small);
  CHECK(code_of([] { estimate_params(Sample({1.0, 1.0, 1.0, 1.0, 1.0})); }) ==
        ErrorCode::degenerate_scale);
}

TEST_CASE("estimates are affine equivariant") {
  std::mt19937_64 gen(7);
  std::cauchy_distribution<double> c(0.0, 1.0);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> x(15), y(15), z(15);
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = c(gen);
      y[i] = 3.7 * x[i] - 2.1;
      z[i] = -x[i];
    }
    const auto px = estimate_params(Sample(x));
    const auto py = estimate_params(Sample(y));
    const auto pz = estimate_params(Sample(z));
    CHECK_THAT(py.mu(), WithinAbs(3.7 * px.mu() - 2.1, 1e-12 * (1 + std::abs(py.mu()))));
    CHECK_THAT(py.sigma(), WithinRel(3.7 * px.sigma(), 1e-12));
    CHECK_THAT(pz.mu(), WithinAbs(-px.mu(), 1e-12 * (1 + std::abs(px.mu()))));
    CHECK_THAT(pz.sigma(), WithinRel(px.sigma(), 1e-12));
  }
}

TEST_CASE("standardize maps the fitted location to zero") {
  Sample s({0.31, -1.7, 2.4, 0.05, -0.62, 5.9, 1.13});
  const auto p = estimate_params(s);
  const auto z = standardize(s, p);
  CHECK(z[3] == 0.0);
  CHECK_THAT(z[6], WithinRel((5.9 - 0.31) / p.sigma(), 1e-15));
}

TEST_CASE("bundled DAX data file matches the embedded values") {
  std::ifstream in(std::string(CAUCHY_GOF_DATA_DIR) + "/dax_returns.txt");
  REQUIRE(in);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    lines.push_back(line);
  }
  REQUIRE(lines.size() == dax_returns_text.size());
  for (std::size_t i = 0; i < lines.size(); ++i) CHECK(lines[i] == dax_returns_text[i]);
  // seven decimals each, extremes present
  for (auto v : dax_returns_text) {
    const auto dot = v.find('.');
    REQUIRE(dot != std::string_view::npos);
    CHECK(v.size() - dot - 1 == 7);
  }
  CHECK(std::find(dax_returns_text.begin(), dax_returns_text.end(), "-0.0917876") !=
        dax_returns_text.end());
  CHECK(std::find(dax_returns_text.begin(), dax_returns_text.end(), "0.0520705") !=
        dax_returns_text.end());
  const auto values = dax_returns();
  CHECK(values.size() == 30);
}
