#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "congestion_lab/cli/commands.hpp"

namespace cli = congestion_lab::cli;

int main(int argc, char** argv) {
  CLI::App app{"congestion-lab: packet-level congestion control simulator"};
  app.require_subcommand(1);

  std::string target;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  bool timeseries = false;
  bool trace = false;
  std::string format = "csv";
  std::string param;
  std::string values;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "random seed (overrides the scenario file)");
    sub->add_option("--out", out_dir, "output directory")->capture_default_str();
    sub->add_option("--format", format, "output format")->check(CLI::IsMember({"csv"}))->capture_default_str();
  };

  CLI::App* run = app.add_subcommand("run", "run one experiment");
  run->add_option("scenario", target, "scenario file or built-in name")->required();
  add_common(run);
  run->add_flag("--timeseries", timeseries, "write timeseries.csv");
  run->add_flag("--trace", trace, "write trace.log");

  CLI::App* sweep = app.add_subcommand("sweep", "run one experiment per parameter value");
  sweep->add_option("scenario", target, "scenario file or built-in name")->required();
  add_common(sweep);
  sweep->add_option("--param", param, "dotted parameter path, e.g. run.load or conn.1.window");
  CLI::Option* values_opt = sweep->add_option("--values", values, "comma-separated values");

  CLI::App* list = app.add_subcommand("list", "list built-in scenarios");

  std::string export_name;
  CLI::App* exp = app.add_subcommand("export", "print a built-in scenario in the file format");
  exp->add_option("name", export_name, "built-in name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kInputError;
  }

  cli::RunFlags flags;
  flags.out_dir = out_dir;
  flags.timeseries = timeseries;
  flags.trace = trace;
  if (run->count("--seed") > 0 || sweep->count("--seed") > 0) flags.seed = seed;

  if (run->parsed()) return cli::cmd_run(target, flags, std::cout, std::cerr);
  if (sweep->parsed()) {
    std::optional<std::string> v;
    if (values_opt->count() > 0) v = values;
    return cli::cmd_sweep(target, param, v, flags, std::cout, std::cerr);
  }
  if (list->parsed()) return cli::cmd_list(std::cout);
  if (exp->parsed()) return cli::cmd_export(export_name, std::cout, std::cerr);
  return cli::kInputError;
}
