#include "cauchy_gof/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "cauchy_gof/dax_data.hpp"
#include "cauchy_gof/error.hpp"

namespace cauchy_gof {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::optional<double> to_double(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

double require_double(std::string_view s, std::string_view what) {
  auto v = to_double(s);
  if (!v) throw GofError(ErrorCode::parse, fmt::format("invalid {}: '{}'", what, s));
  return *v;
}

template <class Int>
Int require_integer(std::string_view s, std::string_view what) {
  s = trim(s);
  Int v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw GofError(ErrorCode::parse, fmt::format("invalid {}: '{}'", what, s));
  }
  return v;
}

bool parse_bool(std::string_view s) {
  s = trim(s);
  if (s == "true" || s == "yes" || s == "1") return true;
  if (s == "false" || s == "no" || s == "0") return false;
  throw GofError(ErrorCode::parse, fmt::format("invalid boolean: '{}'", s));
}

template <class T, class F>
std::string join(const std::vector<T>& items, std::string_view sep, F&& fn) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += fn(items[i]);
  }
  return out;
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::io:
      return 3;
    case ErrorCode::simulation_failed:
      return 4;
    default:
      return 2;
  }
}

// Runs a subcommand body, turning library errors into a message and exit code.
template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const GofError& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    if (e.code() == ErrorCode::tied_data) {
      err << "hint: the data contain tied values (often from rounding). Pre-jitter them "
             "explicitly, e.g. add uniform noise smaller than the rounding unit, and rerun.\n";
    }
    return exit_code(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw GofError(ErrorCode::io, fmt::format("cannot write '{}'", path));
  out << text;
  if (!out) throw GofError(ErrorCode::io, fmt::format("error writing '{}'", path));
}

std::vector<double> load_observations(const RunConfig& config) {
  if (!config.inline_values.empty()) return config.inline_values;
  if (!config.input_path) {
    throw GofError(ErrorCode::configuration, "no input: give --input or inline values");
  }
  return read_numeric_file(*config.input_path);
}

Sample checked_sample(std::vector<double> values) {
  if (values.size() < min_test_size) {
    throw GofError(ErrorCode::input_too_small,
                   fmt::format("need at least {} observations, got {}", min_test_size,
                               values.size()));
  }
  return Sample(std::move(values));
}

std::optional<std::string> table_location(const RunConfig& config, const TableMetadata& md) {
  if (config.table_path) return config.table_path;
  if (config.table_dir) {
    return (std::filesystem::path(*config.table_dir) / cached_table_name(md)).string();
  }
  return std::nullopt;
}

// Loads the cache if present; a table simulated under other settings is an error.
CriticalValueTable open_table(const std::optional<std::string>& path, const TableMetadata& md) {
  if (path && std::filesystem::exists(*path)) {
    auto table = CriticalValueTable::load(*path);
    if (!table.metadata().same_fingerprint(md)) {
      throw GofError(ErrorCode::configuration,
                     fmt::format("stale critical value table '{}': it was built with replications={} "
                                 "seed={} convention={}, current run wants replications={} seed={} "
                                 "convention={} (remove it or pass another --table)",
                                 *path, table.metadata().replications, table.metadata().master_seed,
                                 to_string(table.metadata().convention), md.replications,
                                 md.master_seed, to_string(md.convention)));
    }
    return table;
  }
  return CriticalValueTable(md);
}

// Fills every missing (test, n, alpha, m) cell by simulation. Returns true if
// anything was added.
bool complete_table(CriticalValueTable& table, std::span<const TestId> tests,
                    std::span<const std::size_t> sizes, double alpha,
                    const WindowOverrides& windows, const StatisticOptions& options,
                    const SimulationSettings& settings, std::ostream& err) {
  bool added = false;
  for (std::size_t n : sizes) {
    std::vector<TestId> missing;
    for (TestId t : tests) {
      if (!table.find({t, n, alpha, resolve_window(t, n, windows)})) missing.push_back(t);
    }
    if (missing.empty()) continue;
    err << fmt::format("simulating critical values: n={} tests={} reps={}\n", n, missing.size(),
                       settings.replications);
    const std::size_t one_n[] = {n};
    const double one_alpha[] = {alpha};
    auto fresh =
        build_critical_value_table(missing, one_n, one_alpha, windows, options, settings);
    for (const auto& [key, value] : fresh.entries()) table.insert(key, value);
    table.metadata().regenerated += fresh.metadata().regenerated;
    added = true;
  }
  return added;
}

std::string decision_text(bool reject, OutputFormat format) {
  if (format == OutputFormat::structured) return reject ? "reject" : "fail-to-reject";
  return reject ? "reject" : "fail to reject";
}

TestReport run_on_sample(const RunConfig& config, const Sample& sample, std::ostream& err) {
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) {
    throw GofError(ErrorCode::configuration, "alpha must lie in (0, 1)");
  }
  const auto& options = config.options;
  const std::size_t n = sample.size();
  const CauchyParams fit = estimate_params(sample, options.convention);

  std::vector<std::optional<int>> windows;
  for (TestId t : config.tests) windows.push_back(resolve_window(t, n, config.windows));
  const auto stats = compute_statistics(config.tests, sample, windows, options);

  const auto md = TableMetadata::describe(options, config.replications, config.seed);
  const auto path = table_location(config, md);
  auto table = open_table(path, md);
  std::map<TestId, bool> cached;
  for (std::size_t k = 0; k < config.tests.size(); ++k) {
    cached[config.tests[k]] = table.find({config.tests[k], n, config.alpha, windows[k]}).has_value();
  }
  const std::size_t sizes[] = {n};
  if (complete_table(table, config.tests, sizes, config.alpha, config.windows, options,
                     config.simulation(), err) &&
      path) {
    table.save(*path);
  }

  std::vector<std::vector<double>> null_values;
  if (config.p_values) {
    auto sim = simulate_statistics(AlternativeSpec{Cauchy{0.0, 1.0}}, config.tests, windows, n,
                                   options, config.simulation());
    null_values = std::move(sim.values);
  }

  TestReport report;
  report.n = n;
  report.mu = fit.mu();
  report.sigma = fit.sigma();
  report.alpha = config.alpha;
  report.replications = config.replications;
  report.seed = config.seed;
  for (std::size_t k = 0; k < config.tests.size(); ++k) {
    TestResult r;
    r.test = config.tests[k];
    r.m = windows[k];
    r.statistic = stats[k];
    r.critical_value = table.at({r.test, n, config.alpha, r.m});
    r.critical_value_source = cached[r.test] ? "table" : "simulated";
    r.reject = r.statistic > r.critical_value;
    if (config.p_values) r.p_value = p_value_from_null(null_values[k], r.statistic);
    report.results.push_back(r);
  }
  return report;
}

void emit(const RunConfig& config, const std::string& text, std::ostream& out) {
  if (config.output_path) {
    write_text_file(*config.output_path, text);
  } else {
    out << text;
  }
}

}  // namespace

std::string_view to_string(OutputFormat format) {
  return format == OutputFormat::human ? "human" : "structured";
}

OutputFormat parse_output_format(std::string_view text) {
  text = trim(text);
  if (text == "human") return OutputFormat::human;
  if (text == "structured") return OutputFormat::structured;
  throw GofError(ErrorCode::parse, fmt::format("unknown output format '{}'", text));
}

SimulationSettings RunConfig::simulation() const {
  SimulationSettings s;
  s.replications = replications;
  s.seed = SeedSpec{seed};
  s.workers = workers;
  return s;
}

SimulationSettings RunConfig::power_simulation() const {
  SimulationSettings s = simulation();
  s.replications = power_replications;
  return s;
}

std::string to_text(const RunConfig& c) {
  std::string out;
  auto line = [&](std::string_view key, const std::string& value) {
    out += fmt::format("{}={}\n", key, value);
  };
  if (c.input_path) line("input", *c.input_path);
  line("values", join(c.inline_values, ",", [](double v) { return fmt::format("{}", v); }));
  line("tests", join(c.tests, ",", [](TestId t) { return std::string(to_string(t)); }));
  line("alpha", fmt::format("{}", c.alpha));
  line("m", format_window_overrides(c.windows));
  line("reps", fmt::format("{}", c.replications));
  line("power_reps", fmt::format("{}", c.power_replications));
  line("seed", fmt::format("{}", c.seed));
  line("workers", fmt::format("{}", c.workers));
  line("quantile_convention", std::string(to_string(c.options.convention)));
  line("clamp_epsilon", fmt::format("{}", c.options.clamp_epsilon));
  line("lambda", fmt::format("{}", c.options.lambda));
  line("ebrahimi_k", fmt::format("{}", c.options.ebrahimi.k));
  line("ebrahimi_support", std::string(to_string(c.options.ebrahimi.policy)));
  line("alizadeh_reading", std::string(to_string(c.options.alizadeh)));
  if (c.table_path) line("table", *c.table_path);
  if (c.table_dir) line("table_dir", *c.table_dir);
  line("format", std::string(to_string(c.format)));
  line("p_values", c.p_values ? "true" : "false");
  line("sizes", join(c.sizes, ",", [](std::size_t n) { return fmt::format("{}", n); }));
  line("alternatives", join(c.alternatives, ";", [](const AlternativeSpec& a) { return to_string(a); }));
  if (c.output_path) line("output", *c.output_path);
  if (c.qq_path) line("qq", *c.qq_path);
  if (c.histogram_path) line("histogram", *c.histogram_path);
  return out;
}

RunConfig parse_run_config(std::string_view text) {
  RunConfig c;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw GofError(ErrorCode::parse, fmt::format("expected key=value, got '{}'", line));
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key == "input") {
      c.input_path = std::string(value);
    } else if (key == "values") {
      c.inline_values.clear();
      if (!value.empty()) {
        for (auto part : split(value, ',')) c.inline_values.push_back(require_double(part, "value"));
      }
    } else if (key == "tests") {
      c.tests = parse_test_list(value);
    } else if (key == "alpha") {
      c.alpha = require_double(value, "alpha");
    } else if (key == "m") {
      c.windows = parse_window_overrides(value);
    } else if (key == "reps") {
      c.replications = require_integer<std::size_t>(value, "reps");
    } else if (key == "power_reps") {
      c.power_replications = require_integer<std::size_t>(value, "power_reps");
    } else if (key == "seed") {
      c.seed = require_integer<std::uint64_t>(value, "seed");
    } else if (key == "workers") {
      c.workers = require_integer<unsigned>(value, "workers");
    } else if (key == "quantile_convention") {
      c.options.convention = parse_quantile_convention(value);
    } else if (key == "clamp_epsilon") {
      c.options.clamp_epsilon = require_double(value, "clamp_epsilon");
    } else if (key == "lambda") {
      c.options.lambda = require_double(value, "lambda");
    } else if (key == "ebrahimi_k") {
      c.options.ebrahimi.k = require_double(value, "ebrahimi_k");
    } else if (key == "ebrahimi_support") {
      c.options.ebrahimi.policy = parse_support_policy(value);
    } else if (key == "alizadeh_reading") {
      c.options.alizadeh = parse_alizadeh_reading(value);
    } else if (key == "table") {
      c.table_path = std::string(value);
    } else if (key == "table_dir") {
      c.table_dir = std::string(value);
    } else if (key == "format") {
      c.format = parse_output_format(value);
    } else if (key == "p_values") {
      c.p_values = parse_bool(value);
    } else if (key == "sizes") {
      c.sizes.clear();
      for (auto part : split(value, ',')) c.sizes.push_back(require_integer<std::size_t>(part, "size"));
    } else if (key == "alternatives") {
      c.alternatives.clear();
      if (!value.empty()) {
        for (auto part : split(value, ';')) c.alternatives.push_back(parse_alternative(part));
      }
    } else if (key == "output") {
      c.output_path = std::string(value);
    } else if (key == "qq") {
      c.qq_path = std::string(value);
    } else if (key == "histogram") {
      c.histogram_path = std::string(value);
    } else {
      throw GofError(ErrorCode::parse, fmt::format("unknown configuration key '{}'", key));
    }
  }
  return c;
}

WindowOverrides parse_window_overrides(std::string_view text) {
  WindowOverrides out;
  text = trim(text);
  if (text.empty()) return out;
  for (auto part : split(text, ',')) {
    const auto colon = part.find(':');
    if (colon == std::string_view::npos) {
      throw GofError(ErrorCode::parse, fmt::format("window override '{}' is not test:m", part));
    }
    const TestId id = parse_test_id(trim(part.substr(0, colon)));
    if (!is_window_based(id)) {
      throw GofError(ErrorCode::invalid_window,
                     fmt::format("test {} has no window size", display_name(id)));
    }
    const int m = require_integer<int>(part.substr(colon + 1), "window size");
    if (m < 1) {
      throw GofError(ErrorCode::invalid_window, fmt::format("window size must be >= 1, got {}", m));
    }
    out[id] = m;
  }
  return out;
}

std::string format_window_overrides(const WindowOverrides& overrides) {
  std::string out;
  for (const auto& [id, m] : overrides) {
    if (!out.empty()) out += ',';
    out += fmt::format("{}:{}", to_string(id), m);
  }
  return out;
}

std::vector<double> parse_numeric_input(std::istream& in) {
  std::vector<double> values;
  std::string raw;
  std::size_t line_no = 0;
  bool seen_data = false;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = raw;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto field = trim(line);
    if (field.empty()) continue;
    if (field.find(',') != std::string_view::npos) {
      const auto cells = split(field, ',');
      const bool trailing_empty = cells.size() == 2 && cells[1].empty();
      if (cells.size() != 1 && !trailing_empty) {
        throw GofError(ErrorCode::parse,
                       fmt::format("line {}: expected a single column, got '{}'", line_no, field));
      }
      field = cells[0];
    }
    if (field.size() >= 2 && field.front() == '"' && field.back() == '"') {
      field = field.substr(1, field.size() - 2);
    }
    auto v = to_double(field);
    if (!v) {
      if (!seen_data && values.empty()) {
        seen_data = true;  // header row
        continue;
      }
      throw GofError(ErrorCode::parse, fmt::format("line {}: not a number: '{}'", line_no, field));
    }
    if (!std::isfinite(*v)) {
      throw GofError(ErrorCode::non_finite_input,
                     fmt::format("line {}: non-finite value '{}'", line_no, field));
    }
    seen_data = true;
    values.push_back(*v);
  }
  return values;
}

std::vector<double> read_numeric_file(const std::string& path) {
  if (path == "-") return parse_numeric_input(std::cin);
  std::ifstream in(path);
  if (!in) throw GofError(ErrorCode::io, fmt::format("cannot read '{}'", path));
  return parse_numeric_input(in);
}

TestReport run_tests(const RunConfig& config, const Sample& sample) {
  std::ostringstream sink;
  return run_on_sample(config, sample, sink);
}

std::string format_report(const TestReport& report, OutputFormat format) {
  std::string out;
  if (format == OutputFormat::structured) {
    out += fmt::format("record=summary n={} mu={} sigma={} alpha={} reps={} seed={}\n", report.n,
                       report.mu, report.sigma, report.alpha, report.replications, report.seed);
    for (const auto& r : report.results) {
      out += fmt::format(
          "record=test test={} m={} statistic={} critical_value={} source={} decision={} "
          "p_value={}\n",
          to_string(r.test), r.m ? fmt::format("{}", *r.m) : "-", r.statistic, r.critical_value,
          r.critical_value_source, decision_text(r.reject, format),
          r.p_value ? fmt::format("{}", *r.p_value) : "-");
    }
    return out;
  }
  out += fmt::format("n = {}   location = {:.10g}   scale = {:.10g}\n", report.n, report.mu,
                     report.sigma);
  out += fmt::format("alpha = {}   replications = {}   seed = {}\n\n", report.alpha,
                     report.replications, report.seed);
  const bool any_p = std::any_of(report.results.begin(), report.results.end(),
                                 [](const TestResult& r) { return r.p_value.has_value(); });
  out += fmt::format("{:<6}{:>4}{:>12}{:>12}  {:<10}{:<16}", "test", "m", "statistic", "critical",
                     "source", "decision");
  if (any_p) out += fmt::format("{:>9}", "p-value");
  out += '\n';
  for (const auto& r : report.results) {
    out += fmt::format("{:<6}{:>4}{:>12.4f}{:>12.4f}  {:<10}{:<16}", display_name(r.test),
                       r.m ? fmt::format("{}", *r.m) : "-", r.statistic, r.critical_value,
                       r.critical_value_source, decision_text(r.reject, format));
    if (r.p_value) out += fmt::format("{:>9.4f}", *r.p_value);
    out += '\n';
  }
  return out;
}

std::vector<std::pair<double, double>> qq_pairs(const Sample& sample, const CauchyParams& fit) {
  std::vector<std::pair<double, double>> out;
  const double n = static_cast<double>(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    out.emplace_back(sample[i], cauchy_quantile((static_cast<double>(i) + 0.5) / n, fit));
  }
  return out;
}

void write_qq(std::ostream& out, const Sample& sample, const CauchyParams& fit) {
  out << "# empirical fitted_cauchy\n";
  for (const auto& [x, q] : qq_pairs(sample, fit)) out << fmt::format("{} {}\n", x, q);
}

void write_histogram(std::ostream& out, const Sample& sample, const CauchyParams& fit,
                     std::size_t bins) {
  if (bins == 0) throw GofError(ErrorCode::configuration, "histogram needs at least one bin");
  const double lo = sample[0];
  const double hi = sample[sample.size() - 1];
  const double width = (hi - lo) / static_cast<double>(bins);
  std::vector<std::size_t> counts(bins, 0);
  for (double x : sample.values()) {
    auto b = width > 0.0 ? static_cast<std::size_t>((x - lo) / width) : 0;
    counts[std::min(b, bins - 1)]++;
  }
  const double n = static_cast<double>(sample.size());
  out << "# lower upper count density fitted_density\n";
  for (std::size_t b = 0; b < bins; ++b) {
    const double a = lo + width * static_cast<double>(b);
    const double z = b + 1 == bins ? hi : a + width;
    const double density = width > 0.0 ? static_cast<double>(counts[b]) / (n * width) : 0.0;
    out << fmt::format("{} {} {} {} {}\n", a, z, counts[b], density,
                       cauchy_pdf(0.5 * (a + z), fit));
  }
}

std::string cached_table_name(const TableMetadata& md) {
  return fmt::format("cv-r{}-s{}-{}-k{}-{}-{}-l{}-e{}.txt", md.replications, md.master_seed,
                     to_string(md.convention), md.ebrahimi_k, to_string(md.ebrahimi_support),
                     to_string(md.alizadeh), md.lambda, md.clamp_epsilon);
}

int cmd_test(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Sample sample = checked_sample(load_observations(config));
    const auto report = run_on_sample(config, sample, err);
    emit(config, format_report(report, config.format), out);
    const CauchyParams fit{report.mu, report.sigma};
    if (config.qq_path) {
      std::ostringstream qq;
      write_qq(qq, sample, fit);
      write_text_file(*config.qq_path, qq.str());
    }
    if (config.histogram_path) {
      std::ostringstream h;
      write_histogram(h, sample, fit);
      write_text_file(*config.histogram_path, h.str());
    }
    return 0;
  });
}

int cmd_demo_dax(const RunConfig& config, std::ostream& out, std::ostream& err) {
  RunConfig c = config;
  c.input_path.reset();
  c.inline_values = dax_returns();
  return guarded(err, [&] {
    const Sample sample = checked_sample(c.inline_values);
    const auto report = run_on_sample(c, sample, err);
    std::string text = format_report(report, c.format);
    const CauchyParams fit{report.mu, report.sigma};
    std::ostringstream qq;
    write_qq(qq, sample, fit);
    if (c.qq_path) {
      write_text_file(*c.qq_path, qq.str());
    } else {
      text += "\n" + qq.str();
    }
    if (c.histogram_path) {
      std::ostringstream h;
      write_histogram(h, sample, fit);
      write_text_file(*c.histogram_path, h.str());
    }
    emit(c, text, out);
    return 0;
  });
}

int cmd_tables(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const double alphas[] = {config.alpha};
    auto table = build_critical_value_table(config.tests, config.sizes, alphas, config.windows,
                                            config.options, config.simulation());
    if (table.metadata().low_precision()) {
      err << fmt::format("warning: {} replications is below {}; table flagged low-precision\n",
                         config.replications, low_precision_threshold);
    }
    const std::string text = table.to_text();
    if (config.output_path) {
      write_text_file(*config.output_path, text);
    } else if (config.table_path) {
      write_text_file(*config.table_path, text);
    } else {
      out << text;
    }
    return 0;
  });
}

int cmd_power(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto md = TableMetadata::describe(config.options, config.replications, config.seed);
    const auto path = table_location(config, md);
    auto table = open_table(path, md);
    if (complete_table(table, config.tests, config.sizes, config.alpha, config.windows,
                       config.options, config.simulation(), err) &&
        path) {
      table.save(*path);
    }
    err << fmt::format("power study: {} alternatives x {} sizes, {} replications per cell\n",
                       config.alternatives.size(), config.sizes.size(), config.power_replications);
    const auto report = power_study(config.tests, config.alternatives, config.sizes, config.alpha,
                                    config.windows, table, config.power_simulation());

    PowerReport kl;
    PowerReport other;
    kl.master_seed = other.master_seed = report.master_seed;
    kl.critical_value_replications = other.critical_value_replications =
        report.critical_value_replications;
    for (const auto& [key, est] : report.entries) {
      (is_kl_test(key.test) ? kl : other).entries[key] = est;
    }
    const bool gap = !kl.entries.empty() && !other.entries.empty();

    std::string text;
    if (config.format == OutputFormat::structured) {
      text = report.to_text();
      if (gap) {
        for (const auto& [key, g] : power_gap(kl, other)) {
          text += fmt::format("gap {} {} {} {}\n", key.alternative, key.n, key.alpha, g);
        }
      }
    } else {
      for (std::size_t n : config.sizes) {
        text += fmt::format("n = {}, alpha = {}\n{:<14}", n, config.alpha, "alternative");
        for (TestId t : config.tests) text += fmt::format("{:>7}", display_name(t));
        text += '\n';
        for (const auto& alt : config.alternatives) {
          const auto label = to_string(alt);
          text += fmt::format("{:<14}", label);
          for (TestId t : config.tests) {
            text += fmt::format("{:>7.3f}", report.entries.at({t, label, n, config.alpha}).rate);
          }
          text += '\n';
        }
        text += '\n';
      }
      if (gap) {
        text += "best KL power minus best EDF-type power\n";
        for (const auto& [key, g] : power_gap(kl, other)) {
          text += fmt::format("{:<14}{:>5}{:>9.3f}\n", key.alternative, key.n, g);
        }
      }
    }
    emit(config, text, out);
    return 0;
  });
}

int cmd_window_search(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::vector<TestId> tests;
    for (TestId t : config.tests) {
      if (is_window_based(t)) tests.push_back(t);
    }
    if (tests.empty()) {
      throw GofError(ErrorCode::configuration, "no window-based test selected");
    }
    std::vector<WindowSearchResult> results;
    for (std::size_t n : config.sizes) {
      err << fmt::format("window search: n={} reps={}\n", n, config.replications);
      auto part = optimal_windows(tests, n, config.alpha, config.options, config.simulation());
      results.insert(results.end(), part.begin(), part.end());
    }
    std::ostringstream file;
    write_window_search(file, results, config.replications, config.seed);
    if (config.output_path) write_text_file(*config.output_path, file.str());
    if (config.format == OutputFormat::structured) {
      if (!config.output_path) out << file.str();
    } else {
      out << fmt::format("{:<6}{:>5}{:>6}{:>12}{:>12}\n", "test", "n", "m", "critical", "minimum");
      for (const auto& r : results) {
        out << fmt::format("{:<6}{:>5}{:>6}{:>12.4f}{:>12.4f}\n", display_name(r.test), r.n,
                           r.chosen_window, r.chosen_critical_value(), r.minimum());
      }
    }
    return 0;
  });
}

}  // namespace cauchy_gof
