#include "cauchy_gof/alternatives.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "cauchy_gof/error.hpp"

namespace cauchy_gof {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require(bool ok, std::string_view what) {
  if (!ok) throw GofError(ErrorCode::configuration, fmt::format("invalid alternative: {}", what));
}

double standard_normal(StreamRng& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  return dist(rng);
}

double standard_cauchy(StreamRng& rng) {
  return std::tan(std::numbers::pi * (rng.uniform_open() - 0.5));
}

}  // namespace

void validate(const AlternativeSpec& spec) {
  std::visit(overloaded{
                 [](const StudentT& d) { require(d.df > 0.0, "t degrees of freedom must be > 0"); },
                 [](const Normal& d) { require(d.variance > 0.0, "normal variance must be > 0"); },
                 [](const Logistic& d) { require(d.scale_squared > 0.0, "logistic scale must be > 0"); },
                 [](const Laplace& d) { require(d.scale_squared > 0.0, "Laplace scale must be > 0"); },
                 [](const Gumbel& d) { require(d.scale_squared > 0.0, "Gumbel scale must be > 0"); },
                 [](const Beta& d) { require(d.alpha > 0.0 && d.beta > 0.0, "beta shapes must be > 0"); },
                 [](const Gamma& d) {
                   require(d.alpha > 0.0 && d.beta > 0.0, "gamma shape and scale must be > 0");
                 },
                 [](const NormalCauchyMixture& d) {
                   require(d.p >= 0.0 && d.p <= 1.0, "mixing probability must lie in [0, 1]");
                 },
                 [](const TukeyH& d) { require(std::isfinite(d.h), "Tukey h must be finite"); },
                 [](const Cauchy& d) { require(d.scale > 0.0, "Cauchy scale must be > 0"); },
             },
             spec);
}

std::string to_string(const AlternativeSpec& spec) {
  return std::visit(
      overloaded{
          [](const StudentT& d) { return fmt::format("t({})", d.df); },
          [](const Normal& d) { return fmt::format("N({},{})", d.mean, d.variance); },
          [](const Logistic& d) { return fmt::format("Lo({},{})", d.location, d.scale_squared); },
          [](const Laplace& d) { return fmt::format("La({},{})", d.location, d.scale_squared); },
          [](const Gumbel& d) { return fmt::format("Gu({},{})", d.location, d.scale_squared); },
          [](const Beta& d) { return fmt::format("Be({},{})", d.alpha, d.beta); },
          [](const Gamma& d) { return fmt::format("Ga({},{})", d.alpha, d.beta); },
          [](const NormalCauchyMixture& d) { return fmt::format("NC({},{})", d.p, 1.0 - d.p); },
          [](const TukeyH& d) { return fmt::format("Tu({})", d.h); },
          [](const Cauchy& d) { return fmt::format("C({},{})", d.location, d.scale); },
      },
      spec);
}

std::string short_label(const AlternativeSpec& spec) {
  return std::visit(overloaded{
                        [](const StudentT& d) { return fmt::format("t{}", d.df); },
                        [](const Normal&) { return std::string("N"); },
                        [](const Logistic&) { return std::string("Lo"); },
                        [](const Laplace&) { return std::string("La"); },
                        [](const Gumbel&) { return std::string("Gu"); },
                        [](const Beta&) { return std::string("Be"); },
                        [](const Gamma&) { return std::string("Ga"); },
                        [](const NormalCauchyMixture&) { return std::string("NC"); },
                        [](const TukeyH&) { return std::string("Tu"); },
                        [](const Cauchy&) { return std::string("C"); },
                    },
                    spec);
}

AlternativeSpec parse_alternative(std::string_view text) {
  auto fail = [&]() -> GofError {
    return GofError(ErrorCode::parse, fmt::format("cannot parse alternative '{}'", text));
  };
  std::string_view name;
  std::vector<double> args;
  const auto open = text.find('(');
  if (open == std::string_view::npos) {
    // shorthand "t3", "t5"
    if (text.size() > 1 && text[0] == 't') {
      name = "t";
      double df = 0.0;
      auto [ptr, ec] = std::from_chars(text.data() + 1, text.data() + text.size(), df);
      if (ec != std::errc() || ptr != text.data() + text.size()) throw fail();
      args.push_back(df);
    } else {
      throw fail();
    }
  } else {
    if (text.back() != ')') throw fail();
    name = text.substr(0, open);
    std::string_view inner = text.substr(open + 1, text.size() - open - 2);
    while (!inner.empty()) {
      const auto comma = inner.find(',');
      std::string_view tok = inner.substr(0, comma);
      while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
      while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) throw fail();
      args.push_back(v);
      if (comma == std::string_view::npos) break;
      inner.remove_prefix(comma + 1);
    }
  }

  auto want = [&](std::size_t count) {
    if (args.size() != count) throw fail();
  };
  AlternativeSpec spec;
  if (name == "t") {
    want(1);
    spec = StudentT{args[0]};
  } else if (name == "N") {
    want(2);
    spec = Normal{args[0], args[1]};
  } else if (name == "Lo") {
    want(2);
    spec = Logistic{args[0], args[1]};
  } else if (name == "La") {
    want(2);
    spec = Laplace{args[0], args[1]};
  } else if (name == "Gu") {
    want(2);
    spec = Gumbel{args[0], args[1]};
  } else if (name == "Be") {
    want(2);
    spec = Beta{args[0], args[1]};
  } else if (name == "Ga") {
    want(2);
    spec = Gamma{args[0], args[1]};
  } else if (name == "NC") {
    if (args.size() == 2 && std::abs(args[0] + args[1] - 1.0) > 1e-12) throw fail();
    if (args.size() != 1 && args.size() != 2) throw fail();
    spec = NormalCauchyMixture{args[0]};
  } else if (name == "Tu") {
    want(1);
    spec = TukeyH{args[0]};
  } else if (name == "C") {
    want(2);
    spec = Cauchy{args[0], args[1]};
  } else {
    throw fail();
  }
  validate(spec);
  return spec;
}

std::vector<AlternativeSpec> studied_alternatives() {
  return {StudentT{3},   StudentT{5}, Normal{0, 1}, Logistic{0, 1},
          Laplace{0, 1}, Gumbel{0, 1}, Beta{2, 1},   Gamma{2, 1},
          NormalCauchyMixture{0.3},    TukeyH{1}};
}

double draw(const AlternativeSpec& spec, StreamRng& rng) {
  return std::visit(
      overloaded{
          [&](const StudentT& d) {
            std::student_t_distribution<double> dist(d.df);
            return dist(rng);
          },
          [&](const Normal& d) { return d.mean + std::sqrt(d.variance) * standard_normal(rng); },
          [&](const Logistic& d) {
            const double u = rng.uniform_open();
            return d.location + std::sqrt(d.scale_squared) * std::log(u / (1.0 - u));
          },
          [&](const Laplace& d) {
            const double u = rng.uniform_open() - 0.5;
            const double mag = -std::log1p(-2.0 * std::abs(u));
            return d.location + std::sqrt(d.scale_squared) * (u < 0.0 ? -mag : mag);
          },
          [&](const Gumbel& d) {
            return d.location - std::sqrt(d.scale_squared) * std::log(-std::log(rng.uniform_open()));
          },
          [&](const Beta& d) {
            if (d.beta == 1.0) return std::pow(rng.uniform_open(), 1.0 / d.alpha);
            if (d.alpha == 1.0) return 1.0 - std::pow(rng.uniform_open(), 1.0 / d.beta);
            std::gamma_distribution<double> ga(d.alpha, 1.0);
            std::gamma_distribution<double> gb(d.beta, 1.0);
            const double x = ga(rng);
            return x / (x + gb(rng));
          },
          [&](const Gamma& d) {
            std::gamma_distribution<double> dist(d.alpha, d.beta);
            return dist(rng);
          },
          [&](const NormalCauchyMixture& d) {
            return rng.uniform_open() < d.p ? standard_normal(rng) : standard_cauchy(rng);
          },
          [&](const TukeyH& d) {
            const double z = standard_normal(rng);
            return z * std::exp(d.h * z * z / 2.0);
          },
          [&](const Cauchy& d) { return d.location + d.scale * standard_cauchy(rng); },
      },
      spec);
}

Sample sample_from(const AlternativeSpec& spec, std::size_t n, const SeedSpec& seed,
                   std::uint64_t replication, std::uint64_t attempt) {
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) {
    StreamRng rng(seed.stream_key(replication, attempt, i));
    values[i] = draw(spec, rng);
  }
  return Sample(std::move(values));
}

}  // namespace cauchy_gof
