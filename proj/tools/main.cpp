#include <iostream>

#include "CLI11.hpp"

#include "blowuplab/errors.hpp"
#include "blowuplab/io.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"blowuplab: numerical companion for self-similar blowup of the cubic wave equation in 7D"};
  app.set_version_flag("--version", blowuplab::tool_version());
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_file;
  std::vector<std::string> sets;
  std::string out;
  app.add_option("-c,--config", config_file, "INI configuration file")->check(CLI::ExistingFile);
  app.add_option("--set", sets, "override, section.key=value (repeatable)");
  app.add_option("-o,--out", out, "output directory (overrides BLOWUPLAB_OUT and output.dir)");

  using Fn = int (*)(cli::Context&);
  std::vector<std::pair<CLI::App*, Fn>> subs = {
      {app.add_subcommand("spectrum", "mode-stability scan and collocation spectrum"), cli::cmd_spectrum},
      {app.add_subcommand("certify", "sampled bound verification and polynomial certificates"), cli::cmd_certify},
      {app.add_subcommand("dissipativity", "exact dissipativity sweep over random polynomial fields"),
       cli::cmd_dissipativity},
      {app.add_subcommand("nonhom", "nonhomogeneous solves and their endpoint asymptotics"), cli::cmd_nonhom},
      {app.add_subcommand("evolve", "linear or nonlinear radial evolution"), cli::cmd_evolve},
      {app.add_subcommand("threshold", "bisection along the unstable direction"), cli::cmd_threshold},
  };
  std::vector<std::string> report_paths;
  CLI::App* report = app.add_subcommand("report", "consolidate JSON outputs into a summary");
  report->add_option("paths", report_paths, "output files or directories")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : cli::kConfigError;
  }

  std::optional<std::string> out_flag;
  if (!out.empty()) out_flag = out;
  try {
    if (report->parsed()) return cli::cmd_report(report_paths, out_flag);
    std::optional<std::filesystem::path> file;
    if (!config_file.empty()) file = config_file;
    cli::Context ctx{cli::Config::load(file, sets), out_flag};
    for (auto& [sub, fn] : subs)
      if (sub->parsed()) return fn(ctx);
  } catch (const cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return cli::kConfigError;
  } catch (const blowuplab::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return cli::kNumericalFailure;
  } catch (const blowuplab::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kNumericalFailure;
  }
  return cli::kConfigError;
}
