#include <fstream>
#include <iostream>
#include <iterator>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cauchy_gof/cli.hpp"
#include "cauchy_gof/error.hpp"

using namespace cauchy_gof;

namespace {

struct RawFlags {
  std::string input;
  std::vector<double> values;
  std::string tests = "all";
  double alpha = 0.05;
  std::string m;
  std::size_t reps = 50000;
  std::size_t power_reps = 10000;
  std::uint64_t seed = SeedSpec{}.master_seed;
  unsigned workers = 0;
  std::string convention = "linear-n-1";
  std::string alizadeh = "average";
  double ebrahimi_k = 5.0;
  std::string ebrahimi_support = "literal";
  double lambda = 5.0;
  std::string table;
  std::string table_dir;
  std::string format = "human";
  bool p_values = false;
  std::vector<std::size_t> sizes;
  std::vector<std::string> alternatives;
  std::string output;
  std::string qq;
  std::string histogram;
  std::string config;
};

void add_common(CLI::App* cmd, RawFlags& f) {
  cmd->add_option("--tests", f.tests, "all, edf, kl or a comma list (ks,a2,w2,dnl,zk,za,zc,d1..d7)");
  cmd->add_option("--alpha", f.alpha, "significance level");
  cmd->add_option("--m", f.m, "window overrides, e.g. d1:8,d4:15");
  cmd->add_option("--reps", f.reps, "null replications for critical values");
  cmd->add_option("--seed", f.seed, "master seed");
  cmd->add_option("--workers", f.workers, "worker threads (0 = all cores)");
  cmd->add_option("--quantile-convention", f.convention, "linear-n-1, linear-n+1 or nearest-rank");
  cmd->add_option("--alizadeh-reading", f.alizadeh, "average or difference");
  cmd->add_option("--ebrahimi-k", f.ebrahimi_k, "support extension multiplier");
  cmd->add_option("--ebrahimi-support", f.ebrahimi_support, "literal or widen");
  cmd->add_option("--lambda", f.lambda, "Gurtler-Henze weight parameter");
  cmd->add_option("--table", f.table, "critical value table file (cache)");
  cmd->add_option("--table-dir", f.table_dir, "directory of cached tables, one per fingerprint");
  cmd->add_option("--format", f.format, "human or structured");
  cmd->add_option("--output", f.output, "write the result here instead of standard output");
  cmd->add_option("--config", f.config, "key=value configuration file; flags override it");
}

RunConfig to_config(const RawFlags& f, const CLI::App& cmd) {
  RunConfig c;
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) throw GofError(ErrorCode::io, "cannot read configuration file " + f.config);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    c = parse_run_config(text);
  }
  auto given = [&](const char* name) {
    const auto* opt = cmd.get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };
  if (given("--input")) c.input_path = f.input;
  if (given("values")) c.inline_values = f.values;
  if (given("--tests")) c.tests = parse_test_list(f.tests);
  if (given("--alpha")) c.alpha = f.alpha;
  if (given("--m")) c.windows = parse_window_overrides(f.m);
  if (given("--reps")) c.replications = f.reps;
  if (given("--power-reps")) c.power_replications = f.power_reps;
  if (given("--seed")) c.seed = f.seed;
  if (given("--workers")) c.workers = f.workers;
  if (given("--quantile-convention")) c.options.convention = parse_quantile_convention(f.convention);
  if (given("--alizadeh-reading")) c.options.alizadeh = parse_alizadeh_reading(f.alizadeh);
  if (given("--ebrahimi-k")) c.options.ebrahimi.k = f.ebrahimi_k;
  if (given("--ebrahimi-support")) c.options.ebrahimi.policy = parse_support_policy(f.ebrahimi_support);
  if (given("--lambda")) c.options.lambda = f.lambda;
  if (given("--table")) c.table_path = f.table;
  if (given("--table-dir")) c.table_dir = f.table_dir;
  if (given("--format")) c.format = parse_output_format(f.format);
  if (given("--p-values")) c.p_values = f.p_values;
  if (given("--sizes")) c.sizes = f.sizes;
  if (given("--alternatives")) {
    c.alternatives.clear();
    for (const auto& a : f.alternatives) c.alternatives.push_back(parse_alternative(a));
  }
  if (given("--output")) c.output_path = f.output;
  if (given("--qq")) c.qq_path = f.qq;
  if (given("--histogram")) c.histogram_path = f.histogram;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Goodness-of-fit tests for the Cauchy distribution"};
  app.require_subcommand(1);
  RawFlags f;

  auto* test = app.add_subcommand("test", "run the selected tests on a data set");
  test->add_option("--input", f.input, "data file (one value per line, '-' for stdin)");
  test->add_option("values", f.values, "observations given inline");
  test->add_flag("--p-values", f.p_values, "also report Monte Carlo p-values");
  test->add_option("--qq", f.qq, "write Q-Q pairs to this file");
  test->add_option("--histogram", f.histogram, "write histogram data to this file");
  add_common(test, f);

  auto* tables = app.add_subcommand("tables", "simulate a critical value table");
  tables->add_option("--sizes", f.sizes, "sample sizes")->delimiter(',');
  add_common(tables, f);

  auto* power = app.add_subcommand("power", "simulate rejection rates against alternatives");
  power->add_option("--sizes", f.sizes, "sample sizes")->delimiter(',');
  power->add_option("--alternatives", f.alternatives,
                    "alternatives separated by ';', e.g. \"t(3);N(0,1);Tu(1)\"")
      ->delimiter(';');
  power->add_option("--power-reps", f.power_reps, "replications per power cell");
  power->add_option("--cv-reps", f.reps, "null replications for critical values (same as --reps)");
  add_common(power, f);

  auto* window = app.add_subcommand("window-search", "critical value curves over window sizes");
  window->add_option("--sizes", f.sizes, "sample sizes")->delimiter(',');
  add_common(window, f);

  auto* demo = app.add_subcommand("demo-dax", "run all tests on the bundled DAX returns");
  demo->add_flag("--p-values", f.p_values, "also report Monte Carlo p-values");
  demo->add_option("--qq", f.qq, "write Q-Q pairs to this file");
  demo->add_option("--histogram", f.histogram, "write histogram data to this file");
  add_common(demo, f);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*test) return cmd_test(to_config(f, *test), std::cout, std::cerr);
    if (*tables) return cmd_tables(to_config(f, *tables), std::cout, std::cerr);
    if (*power) {
      RunConfig c = to_config(f, *power);
      if (power->count("--cv-reps")) c.replications = f.reps;
      return cmd_power(c, std::cout, std::cerr);
    }
    if (*window) return cmd_window_search(to_config(f, *window), std::cout, std::cerr);
    if (*demo) return cmd_demo_dax(to_config(f, *demo), std::cout, std::cerr);
  } catch (const GofError& e) {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return 2;
  }
  return 1;
}
