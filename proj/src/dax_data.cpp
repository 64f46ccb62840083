#include "cauchy_gof/dax_data.hpp"

#include <charconv>

namespace cauchy_gof {

const std::array<std::string_view, 30> dax_returns_text{
    "0.0011848",  "-0.0057591", "-0.0051393", "-0.0051781", "0.0020043",  "0.0017787",
    "0.0026787",  "-0.0066238", "-0.0047866", "-0.0052497", "0.0004985",  "0.0068006",
    "0.0016206",  "0.0007411",  "-0.0005060", "0.0020992",  "-0.0056005", "0.0110844",
    "-0.0009192", "0.0019014",  "-0.0042364", "0.0146814",  "-0.0002242", "0.0024545",
    "-0.0003083", "-0.0917876", "0.0149552",  "0.0520705",  "0.0117482",  "0.0087458",
};

std::vector<double> dax_returns() {
  std::vector<double> out;
  out.reserve(dax_returns_text.size());
  for (std::string_view s : dax_returns_text) {
    double v = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), v);
    out.push_back(v);
  }
  return out;
}

}  // namespace cauchy_gof
