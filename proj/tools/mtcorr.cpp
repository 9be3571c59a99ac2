#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "runner/commands.hpp"

int main(int argc, char** argv) {
  using namespace mtc::runner;

  CLI::App app{"Multiple-testing corrections and power simulation studies"};
  app.require_subcommand(1);
  app.set_version_flag("--version", MTCORR_VERSION);

  AdjustArgs adjust_args;
  std::string adjust_out;
  auto* adjust = app.add_subcommand("adjust", "Apply a correction to a test_id,p_value CSV");
  adjust->add_option("input", adjust_args.input, "Input CSV")->required();
  adjust->add_option("--method", adjust_args.method, "bonferroni | holm | bh | bea");
  adjust->add_option("--alpha", adjust_args.alpha, "Significance level");
  adjust->add_option("--beta", adjust_args.beta, "BEA type-II-error parameter");
  adjust->add_option("--cap", adjust_args.cap, "BEA threshold policy: cap-at-alpha | uncapped");
  adjust->add_option("--out", adjust_out, "Output CSV (default: stdout)");

  SimulateArgs sim_args;
  auto* simulate = app.add_subcommand("simulate", "Run a simulation grid from a JSON config");
  simulate->add_option("--config", sim_args.config, "Study config JSON")->required();
  simulate->add_option("--out", sim_args.out_dir, "Output directory")->required();
  simulate->add_option("--threads", sim_args.threads, "Worker threads (0 = all cores)");
  simulate->add_flag("--quiet", sim_args.quiet, "Suppress progress output");

  ReportArgs report_args;
  auto* report = app.add_subcommand("report", "Render an SVG chart from summary.csv");
  report->add_option("summary", report_args.summary, "summary.csv")->required();
  report->add_option("--figure", report_args.figure, "Figure spec: inline JSON or file")
      ->required();
  report->add_option("--out", report_args.output, "Output SVG")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInputError;
  }

  if (*adjust) {
    if (!adjust_out.empty()) adjust_args.output = adjust_out;
    return cli_adjust(adjust_args, std::cout, std::cerr);
  }
  if (*simulate) {
    if (const char* seed = std::getenv("MT_SEED")) sim_args.seed_override = seed;
    return cli_simulate(sim_args, std::cerr);
  }
  return cli_report(report_args, std::cerr);
}
