#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cauchy_gof/cauchy_model.hpp"
#include "cauchy_gof/random.hpp"

namespace cauchy_gof {

// Parameterisations follow the usual notation of the power study: the second
// argument of N, Lo, La and Gu is sigma^2 (scale squared).
struct StudentT { double df; };
struct Normal { double mean; double variance; };
struct Logistic { double location; double scale_squared; };
struct Laplace { double location; double scale_squared; };
struct Gumbel { double location; double scale_squared; };
struct Beta { double alpha; double beta; };
/// Shape alpha, scale beta (mean alpha * beta).
struct Gamma { double alpha; double beta; };
/// N(0,1) with probability p, C(0,1) otherwise.
struct NormalCauchyMixture { double p; };
/// Z * exp(h Z^2 / 2), Z standard normal.
struct TukeyH { double h; };
struct Cauchy { double location; double scale; };

using AlternativeSpec = std::variant<StudentT, Normal, Logistic, Laplace, Gumbel, Beta, Gamma,
                                     NormalCauchyMixture, TukeyH, Cauchy>;

/// Throws configuration for nonpositive scale/shape or p outside [0, 1].
void validate(const AlternativeSpec& spec);

/// Compact label: t(3), N(0,1), Lo(0,1), La(0,1), Gu(0,1), Be(2,1), Ga(2,1),
/// NC(0.3,0.7), Tu(1), C(0,1). parse_alternative accepts the same syntax
/// (NC also with a single argument).
std::string to_string(const AlternativeSpec& spec);
AlternativeSpec parse_alternative(std::string_view text);

/// The ten distributions of the power study, in table order:
/// t3, t5, N, Lo, La, Gu, Be, Ga, NC, Tu.
std::vector<AlternativeSpec> studied_alternatives();

/// Short column label (t3, t5, N, Lo, ...) used in power tables.
std::string short_label(const AlternativeSpec& spec);

/// One draw using the given stream.
double draw(const AlternativeSpec& spec, StreamRng& rng);

/// n draws for replication r (attempt 0 unless regenerating). Observation i
/// uses its own stream, so the result is a pure function of the arguments.
Sample sample_from(const AlternativeSpec& spec, std::size_t n, const SeedSpec& seed,
                   std::uint64_t replication, std::uint64_t attempt = 0);

}  // namespace cauchy_gof
