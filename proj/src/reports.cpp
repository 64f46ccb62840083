#include "cauchy_gof/reports.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "cauchy_gof/error.hpp"

namespace cauchy_gof {

namespace {

constexpr std::string_view table_format = "cauchy-gof/critical-values/1";
constexpr std::string_view power_format = "cauchy-gof/power/1";
constexpr std::string_view window_format = "cauchy-gof/window-search/1";

std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> words;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
    const std::size_t start = pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' && line[pos] != '\r') ++pos;
    if (pos > start) words.push_back(line.substr(start, pos - start));
  }
  return words;
}

[[noreturn]] void bad_line(std::string_view what, std::string_view line) {
  throw GofError(ErrorCode::parse, fmt::format("malformed {} line: '{}'", what, line));
}

template <class T>
T parse_number(std::string_view word, std::string_view line) {
  T v{};
  auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), v);
  if (ec != std::errc() || ptr != word.data() + word.size()) bad_line("numeric", line);
  return v;
}

std::string window_text(const std::optional<int>& m) {
  return m ? fmt::format("{}", *m) : std::string("-");
}

std::optional<int> parse_window(std::string_view word, std::string_view line) {
  if (word == "-") return std::nullopt;
  return parse_number<int>(word, line);
}

}  // namespace

bool TableMetadata::same_fingerprint(const TableMetadata& o) const {
  return replications == o.replications && master_seed == o.master_seed &&
         convention == o.convention && clamp_epsilon == o.clamp_epsilon && lambda == o.lambda &&
         ebrahimi_k == o.ebrahimi_k && ebrahimi_support == o.ebrahimi_support &&
         alizadeh == o.alizadeh;
}

TableMetadata TableMetadata::describe(const StatisticOptions& options, std::size_t replications,
                                      std::uint64_t master_seed) {
  TableMetadata md;
  md.replications = replications;
  md.master_seed = master_seed;
  md.convention = options.convention;
  md.clamp_epsilon = options.clamp_epsilon;
  md.lambda = options.lambda;
  md.ebrahimi_k = options.ebrahimi.k;
  md.ebrahimi_support = options.ebrahimi.policy;
  md.alizadeh = options.alizadeh;
  return md;
}

StatisticOptions TableMetadata::statistic_options() const {
  StatisticOptions o;
  o.convention = convention;
  o.clamp_epsilon = clamp_epsilon;
  o.lambda = lambda;
  o.ebrahimi = {ebrahimi_k, ebrahimi_support};
  o.alizadeh = alizadeh;
  return o;
}

void CriticalValueTable::insert(const CriticalValueKey& key, double value) {
  entries_[key] = value;
}

std::optional<double> CriticalValueTable::find(const CriticalValueKey& key) const {
  if (auto it = entries_.find(key); it != entries_.end()) return it->second;
  return std::nullopt;
}

double CriticalValueTable::at(const CriticalValueKey& key) const {
  if (auto v = find(key)) return *v;
  throw GofError(ErrorCode::configuration,
                 fmt::format("critical value table has no entry for test={} n={} alpha={} m={}",
                             to_string(key.test), key.n, key.alpha, window_text(key.m)));
}

void CriticalValueTable::write(std::ostream& out) const {
  const auto& md = metadata_;
  out << "# cauchy-gof critical value table\n";
  out << "format " << table_format << '\n';
  out << fmt::format("replications {}\n", md.replications);
  out << fmt::format("master_seed {}\n", md.master_seed);
  out << fmt::format("quantile_convention {}\n", to_string(md.convention));
  out << fmt::format("clamp_epsilon {}\n", md.clamp_epsilon);
  out << fmt::format("lambda {}\n", md.lambda);
  out << fmt::format("ebrahimi_k {}\n", md.ebrahimi_k);
  out << fmt::format("ebrahimi_support {}\n", to_string(md.ebrahimi_support));
  out << fmt::format("alizadeh_reading {}\n", to_string(md.alizadeh));
  out << fmt::format("low_precision {}\n", md.low_precision() ? "yes" : "no");
  out << fmt::format("regenerated {}\n", md.regenerated);
  out << "# entry test n alpha m critical_value\n";
  for (const auto& [key, value] : entries_) {
    out << fmt::format("entry {} {} {} {} {}\n", to_string(key.test), key.n, key.alpha,
                       window_text(key.m), value);
  }
}

std::string CriticalValueTable::to_text() const {
  std::ostringstream out;
  write(out);
  return out.str();
}

CriticalValueTable CriticalValueTable::read(std::istream& in) {
  CriticalValueTable table;
  auto& md = table.metadata_;
  bool saw_format = false;
  std::string line;
  while (std::getline(in, line)) {
    const auto w = split_words(line);
    if (w.empty() || w[0].starts_with('#')) continue;
    const std::string_view key = w[0];
    if (key == "entry") {
      if (w.size() != 6) bad_line("entry", line);
      table.entries_[{parse_test_id(w[1]), parse_number<std::size_t>(w[2], line),
                      parse_number<double>(w[3], line), parse_window(w[4], line)}] =
          parse_number<double>(w[5], line);
      continue;
    }
    if (w.size() != 2) bad_line("metadata", line);
    const std::string_view val = w[1];
    if (key == "format") {
      if (val != table_format) {
        throw GofError(ErrorCode::parse, fmt::format("unsupported table format '{}'", val));
      }
      saw_format = true;
    } else if (key == "replications") {
      md.replications = parse_number<std::size_t>(val, line);
    } else if (key == "master_seed") {
      md.master_seed = parse_number<std::uint64_t>(val, line);
    } else if (key == "quantile_convention") {
      md.convention = parse_quantile_convention(val);
    } else if (key == "clamp_epsilon") {
      md.clamp_epsilon = parse_number<double>(val, line);
    } else if (key == "lambda") {
      md.lambda = parse_number<double>(val, line);
    } else if (key == "ebrahimi_k") {
      md.ebrahimi_k = parse_number<double>(val, line);
    } else if (key == "ebrahimi_support") {
      md.ebrahimi_support = parse_support_policy(val);
    } else if (key == "alizadeh_reading") {
      md.alizadeh = parse_alizadeh_reading(val);
    } else if (key == "regenerated") {
      md.regenerated = parse_number<std::size_t>(val, line);
    } else if (key == "low_precision") {
      // derived from replications
    } else {
      bad_line("metadata", line);
    }
  }
  if (!saw_format) throw GofError(ErrorCode::parse, "not a critical value table (no format line)");
  return table;
}

CriticalValueTable CriticalValueTable::parse(const std::string& text) {
  std::istringstream in(text);
  return read(in);
}

void CriticalValueTable::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw GofError(ErrorCode::io, fmt::format("cannot write '{}'", path));
  write(out);
  if (!out) throw GofError(ErrorCode::io, fmt::format("error writing '{}'", path));
}

CriticalValueTable CriticalValueTable::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GofError(ErrorCode::io, fmt::format("cannot read '{}'", path));
  return read(in);
}

void PowerReport::write(std::ostream& out) const {
  out << "# cauchy-gof power report\n";
  out << "format " << power_format << '\n';
  out << fmt::format("master_seed {}\n", master_seed);
  out << fmt::format("critical_value_replications {}\n", critical_value_replications);
  out << "# entry test alternative n alpha rate standard_error rejections replications\n";
  for (const auto& [k, e] : entries) {
    out << fmt::format("entry {} {} {} {} {} {} {} {}\n", to_string(k.test), k.alternative, k.n,
                       k.alpha, e.rate, e.standard_error, e.rejections, e.replications);
  }
}

std::string PowerReport::to_text() const {
  std::ostringstream out;
  write(out);
  return out.str();
}

PowerReport PowerReport::parse(const std::string& text) {
  PowerReport report;
  std::istringstream in(text);
  std::string line;
  bool saw_format = false;
  while (std::getline(in, line)) {
    const auto w = split_words(line);
    if (w.empty() || w[0].starts_with('#')) continue;
    if (w[0] == "entry") {
      if (w.size() != 9) bad_line("entry", line);
      PowerEstimate e;
      e.rate = parse_number<double>(w[5], line);
      e.standard_error = parse_number<double>(w[6], line);
      e.rejections = parse_number<std::size_t>(w[7], line);
      e.replications = parse_number<std::size_t>(w[8], line);
      report.entries[{parse_test_id(w[1]), std::string(w[2]), parse_number<std::size_t>(w[3], line),
                      parse_number<double>(w[4], line)}] = e;
    } else if (w.size() == 2 && w[0] == "format") {
      if (w[1] != power_format) bad_line("format", line);
      saw_format = true;
    } else if (w.size() == 2 && w[0] == "master_seed") {
      report.master_seed = parse_number<std::uint64_t>(w[1], line);
    } else if (w.size() == 2 && w[0] == "critical_value_replications") {
      report.critical_value_replications = parse_number<std::size_t>(w[1], line);
    } else if (w.size() == 5 && w[0] == "gap") {
      // derived summary, recomputed with power_gap
    } else {
      bad_line("power report", line);
    }
  }
  if (!saw_format) throw GofError(ErrorCode::parse, "not a power report (no format line)");
  return report;
}

PowerGapTable power_gap(const PowerReport& kl_report, const PowerReport& other_report) {
  std::map<PowerGapKey, double> best_kl;
  std::map<PowerGapKey, double> best_other;
  auto collect = [](const PowerReport& r, std::map<PowerGapKey, double>& best) {
    for (const auto& [k, e] : r.entries) {
      const PowerGapKey cell{k.alternative, k.n, k.alpha};
      auto [it, inserted] = best.emplace(cell, e.rate);
      if (!inserted) it->second = std::max(it->second, e.rate);
    }
  };
  collect(kl_report, best_kl);
  collect(other_report, best_other);
  const bool same_grid = best_kl.size() == best_other.size() &&
                         std::equal(best_kl.begin(), best_kl.end(), best_other.begin(),
                                    [](const auto& a, const auto& b) { return a.first == b.first; });
  if (!same_grid) {
    throw GofError(ErrorCode::configuration,
                   "power reports cover different (alternative, n, alpha) grids");
  }
  PowerGapTable gaps;
  for (const auto& [cell, rate] : best_kl) gaps[cell] = rate - best_other.at(cell);
  return gaps;
}

double WindowSearchResult::chosen_critical_value() const {
  const auto it = std::find(windows.begin(), windows.end(), chosen_window);
  return critical_values.at(static_cast<std::size_t>(it - windows.begin()));
}

double WindowSearchResult::minimum() const {
  return *std::min_element(critical_values.begin(), critical_values.end());
}

void write_window_search(std::ostream& out, const std::vector<WindowSearchResult>& results,
                         std::size_t replications, std::uint64_t master_seed) {
  out << "# cauchy-gof window search\n";
  out << "format " << window_format << '\n';
  out << fmt::format("replications {}\n", replications);
  out << fmt::format("master_seed {}\n", master_seed);
  out << "# curve test n alpha m critical_value standard_error\n";
  for (const auto& r : results) {
    for (std::size_t w = 0; w < r.windows.size(); ++w) {
      out << fmt::format("curve {} {} {} {} {} {}\n", to_string(r.test), r.n, r.alpha,
                         r.windows[w], r.critical_values[w], r.standard_errors[w]);
    }
  }
  out << "# chosen test n alpha m critical_value\n";
  for (const auto& r : results) {
    out << fmt::format("chosen {} {} {} {} {}\n", to_string(r.test), r.n, r.alpha,
                       r.chosen_window, r.chosen_critical_value());
  }
}

}  // namespace cauchy_gof
