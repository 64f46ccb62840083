#pragma once

#include <array>
#include <string_view>
#include <vector>

namespace cauchy_gof {

/// The 30 DAX returns as distributed (seven decimals), in row order.
/// data/dax_returns.txt carries the same values.
extern const std::array<std::string_view, 30> dax_returns_text;

std::vector<double> dax_returns();

}  // namespace cauchy_gof
