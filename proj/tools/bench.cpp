#include <charconv>
#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "hgd/error.hpp"
#include "hgd/experiment.hpp"
#include "hgd/schedule.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kPartialFailure = 2;

bool apply_seed_override(hgd::ExperimentPlan& plan) {
  const char* env = std::getenv("BENCH_SEED");
  if (env == nullptr || *env == '\0') return true;
  const std::string text(env);
  std::uint64_t seed = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), seed);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    std::cerr << "error: BENCH_SEED must be a non-negative integer, got '" << text << "'\n";
    return false;
  }
  plan.master_seed = seed;
  return true;
}

int cmd_run(const std::string& config, unsigned jobs, const std::string& out,
            const std::string& format) {
  hgd::ExperimentPlan plan;
  hgd::ReportFormat fmt;
  try {
    plan = hgd::parse_config(config);
    fmt = hgd::parse_report_format(format);
  } catch (const hgd::Error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  }
  if (!apply_seed_override(plan)) return kConfigError;
  if (!out.empty()) plan.output_dir = out;

  std::vector<hgd::RunResult> results;
  try {
    hgd::RunOptions options;
    options.jobs = jobs;
    results = hgd::run_experiment(plan, options);
    hgd::write_runs(results, plan.output_dir);
    hgd::emit_report(results, plan.output_dir, fmt);
  } catch (const hgd::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }

  std::size_t failed = 0;
  for (const auto& r : results) {
    if (r.ok) {
      std::cout << r.dataset << ' ' << r.method << " seed=" << r.seed
                << " gmeans=" << r.metrics.gmeans << " f1=" << r.metrics.f1;
      if (r.metrics.auc) std::cout << " auc=" << *r.metrics.auc;
      std::cout << '\n';
    } else {
      ++failed;
      std::cerr << "run failed: " << r.dataset << ' ' << r.method << " seed=" << r.seed
                << ": " << r.error << '\n';
    }
  }
  std::cout << results.size() - failed << '/' << results.size() << " runs ok, reports in "
            << plan.output_dir.string() << '\n';
  return failed ? kPartialFailure : kOk;
}

int cmd_gen(const std::string& spec_text, const std::string& out) {
  try {
    const hgd::GaussianMixtureSpec spec = hgd::parse_synthetic_spec(spec_text);
    const hgd::Dataset data = hgd::gen_gaussian_mixture(spec);
    const std::filesystem::path path(out);
    if (path.extension() == ".csv") {
      hgd::write_csv(data, path);
    } else {
      hgd::write_libsvm(data, path);
    }
    std::cout << "wrote " << data.size() << " instances (d=" << data.dim() << ") to " << out
              << '\n';
  } catch (const hgd::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
  return kOk;
}

int cmd_report(const std::string& in, const std::string& format, const std::string& out) {
  try {
    const hgd::ReportFormat fmt = hgd::parse_report_format(format);
    const auto results = hgd::read_runs(in);
    hgd::emit_report(results, out.empty() ? in : out, fmt);
  } catch (const hgd::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online imbalanced-stream learning benchmark"};
  app.require_subcommand(1);

  std::string config, out, format = "csv";
  unsigned jobs = 1;
  auto* run = app.add_subcommand("run", "Run an experiment grid from a config file");
  run->add_option("--config", config, "JSON experiment config")->required();
  run->add_option("--jobs", jobs, "Concurrent runs")->check(CLI::PositiveNumber);
  run->add_option("--out", out, "Output directory (overrides the config)");
  run->add_option("--format", format, "Report format")->check(CLI::IsMember({"csv", "json"}));

  std::string synthetic, gen_out;
  auto* gen = app.add_subcommand("gen", "Write a synthetic Gaussian stream");
  gen->add_option("--synthetic", synthetic, "e.g. d=10,n=10000,ir=19,sigma=1,seed=0")
      ->required();
  gen->add_option("--out", gen_out, "Output file (.csv, otherwise libsvm)")->required();

  std::string in, report_format = "csv", report_out;
  auto* report = app.add_subcommand("report", "Rebuild reports from a run directory");
  report->add_option("--in", in, "Directory holding runs.json")->required();
  report->add_option("--format", report_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  report->add_option("--out", report_out, "Output directory (defaults to --in)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kConfigError;
  }

  if (*run) return cmd_run(config, jobs, out, format);
  if (*gen) return cmd_gen(synthetic, gen_out);
  return cmd_report(in, report_format, report_out);
}
