// Command-line front end: rotavg {average|compare|sample|trace}.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rotavg/commands.hpp"

namespace cli = rotavg::cli;

namespace {

void add_run_flags(CLI::App* cmd, cli::RunOptions& run) {
  cmd->add_option("--epsilon", run.flow.epsilon, "Stop when 1 - det(mean) < epsilon")->capture_default_str();
  cmd->add_option("--delta", run.flow.delta, "RK4 step in flow time")->capture_default_str();
  cmd->add_option("--t-max", run.flow.t_max, "Give up after this flow time")->capture_default_str();
  cmd->add_option("--karcher-tol", run.karcher.tolerance, "Geodesic mean tangent-norm tolerance")
      ->capture_default_str();
  cmd->add_option("--karcher-iterations", run.karcher.max_iterations, "Geodesic mean iteration cap")
      ->capture_default_str();
  cmd->add_flag("--repair", run.repair, "Project records within 1e-3 of SO(3) onto it");
  cmd->add_option("--report", run.report_out, "Write a JSON report to this path");
}

// Enum-valued flags are read as strings and converted after parsing.
const std::vector<std::string> kMethods = {"kl", "klw", "projected", "geodesic"};
const std::vector<std::string> kFormats = {"matrix", "quat"};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rotation averaging by non-Abelian Kuramoto consensus flow on SO(3)"};
  app.require_subcommand(1);

  cli::AverageOptions average;
  std::uint64_t average_seed = 0;
  auto* average_cmd = app.add_subcommand("average", "Average the rotations of a dataset file");
  average_cmd->add_option("input", average.input, "Dataset file")->required()->check(CLI::ExistingFile);
  std::string average_method = "kl";
  average_cmd->add_option("--method", average_method, "kl | klw | projected | geodesic")
      ->transform(CLI::IsMember(kMethods, CLI::ignore_case))
      ->capture_default_str();
  auto* average_seed_opt = average_cmd->add_option("--seed", average_seed, "Seed recorded in the report");
  add_run_flags(average_cmd, average.run);
  average_cmd->add_option("--out", average.run.report_out, "Alias for --report");

  cli::CompareOptions compare;
  std::uint64_t compare_seed = 0;
  auto* compare_cmd = app.add_subcommand("compare", "Run all methods and report pairwise distances");
  compare_cmd->add_option("input", compare.input, "Dataset file")->required()->check(CLI::ExistingFile);
  auto* compare_seed_opt = compare_cmd->add_option("--seed", compare_seed, "Seed recorded in the report");
  add_run_flags(compare_cmd, compare.run);
  compare_cmd->add_option("--out", compare.run.report_out, "Alias for --report");

  cli::SampleOptions sample;
  std::vector<double> mu{0.5, 0.5, 0.5, 0.5};
  auto* sample_cmd = app.add_subcommand("sample", "Draw a von Mises-Fisher rotation dataset");
  sample_cmd->add_option("--mu", mu, "Mean direction w x y z")->expected(4)->delimiter(',')->capture_default_str();
  sample_cmd->add_option("--kappa", sample.kappa, "Concentration")->capture_default_str();
  sample_cmd->add_option("-n,--n", sample.n, "Number of rotations")->capture_default_str();
  sample_cmd->add_option("--seed", sample.seed, "Generator seed")->capture_default_str();
  sample_cmd->add_flag("--weights", sample.weights, "Append uniform [0, 1] weights");
  std::string sample_format = "matrix";
  sample_cmd->add_option("--format", sample_format, "matrix | quat")
      ->transform(CLI::IsMember(kFormats, CLI::ignore_case))
      ->capture_default_str();
  sample_cmd->add_option("--out", sample.out, "Output dataset file")->required();

  cli::TraceOptions trace;
  std::uint64_t trace_seed = 0;
  auto* trace_cmd = app.add_subcommand("trace", "Record t, potential and order parameter along the flow");
  trace_cmd->add_option("input", trace.input, "Dataset file")->required()->check(CLI::ExistingFile);
  std::string trace_method = "kl";
  trace_cmd->add_option("--method", trace_method, "kl | klw")
      ->transform(CLI::IsMember({"kl", "klw"}, CLI::ignore_case))
      ->capture_default_str();
  auto* trace_seed_opt = trace_cmd->add_option("--seed", trace_seed, "Seed recorded in the report");
  add_run_flags(trace_cmd, trace.run);
  trace_cmd->add_option("--out", trace.out, "Trace CSV; sphere points go to <stem>.sphere.csv")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitInvalidInput;
  }

  if (*average_cmd) {
    if (*average_seed_opt) average.run.seed = average_seed;
    average.method = cli::parse_method(average_method);
    return cli::cmd_average(average, std::cout, std::cerr);
  }
  if (*compare_cmd) {
    if (*compare_seed_opt) compare.run.seed = compare_seed;
    return cli::cmd_compare(compare, std::cout, std::cerr);
  }
  if (*sample_cmd) {
    sample.mu = rotavg::Vector4(mu[0], mu[1], mu[2], mu[3]);
    sample.format = rotavg::parse_representation(sample_format);
    return cli::cmd_sample(sample, std::cout, std::cerr);
  }
  if (*trace_cmd) {
    if (*trace_seed_opt) trace.run.seed = trace_seed;
    trace.method = cli::parse_method(trace_method);
    return cli::cmd_trace(trace, std::cout, std::cerr);
  }
  return cli::kExitFailure;
}
