#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hgd/dataset.hpp"
#include "hgd/loss.hpp"
#include "hgd/methods.hpp"
#include "hgd/oracle.hpp"
#include "hgd/prequential.hpp"
#include "hgd/schedule.hpp"

namespace hgd {

struct FileSource {
  enum class Format { Csv, Libsvm };
  std::filesystem::path path;
  Format format = Format::Csv;
  CsvOptions csv;
  LibsvmOptions libsvm;
};

struct DatasetSpec {
  std::string name;
  std::variant<FileSource, GaussianMixtureSpec> source;
  std::optional<double> target_ir;
  std::optional<IrSchedule> schedule;
  NormalizeMethod normalize = NormalizeMethod::MinMax;
  std::optional<std::size_t> limit;  // truncate every stream to this length
};

struct ExperimentPlan {
  std::vector<DatasetSpec> datasets;
  std::vector<MethodSpec> methods;
  LearnerFamily family = LearnerFamily::Linear;
  LossKind loss = LossKind::Hinge;
  double kernel_gamma = 0.0;  // <= 0 selects 1/d
  EtaPolicy eta = EtaPolicy::constant(0.3);
  std::vector<std::uint64_t> seeds{0};
  std::uint64_t master_seed = 0;
  std::size_t checkpoint_count = 20;
  std::vector<std::uint64_t> checkpoint_indices;  // overrides the count
  std::filesystem::path output_dir = "bench_out";
  bool compute_regret = false;
  bool export_steps = false;
};

// Reads a JSON experiment config. Unknown keys, missing required keys, bad
// method ids and malformed schedules raise ConfigError naming the key path.
ExperimentPlan parse_config(const std::filesystem::path& path);
// Relative dataset paths resolve against base_dir.
ExperimentPlan parse_config_text(std::string_view text,
                                 std::string_view origin = "<config>",
                                 const std::filesystem::path& base_dir = {});

struct RunMetrics {
  std::uint64_t instances = 0;
  double realized_ir = 0.0;
  std::optional<double> auc;
  double gmeans = 0.0;
  double f1 = 0.0;
  double accuracy = 0.0;
  std::optional<double> gii;
  std::optional<double> gii_weighted;
  std::optional<double> gii_raw;
  double cumulative_loss = 0.0;
  std::optional<double> regret;
  std::optional<double> oracle_cumulative_loss;
  double wall_time_s = 0.0;
};

struct RunResult {
  std::string dataset;
  std::string method;
  std::uint64_t seed = 0;
  bool ok = true;
  std::string error;
  RunMetrics metrics;
  std::string checkpoint_trace;  // relative to the output dir, may be empty
  std::string step_trace;
};

struct RunOptions {
  unsigned jobs = 1;
  bool write_traces = true;
};

// Every (dataset, method, seed) run is independent; failures are captured in
// the result. Output order is (dataset, method, seed) as listed in the plan.
std::vector<RunResult> run_experiment(const ExperimentPlan& plan,
                                      const RunOptions& options = {});

// The stream and the method seed used for one (dataset, method, seed) run.
Stream run_stream(const ExperimentPlan& plan, const DatasetSpec& spec,
                  const std::shared_ptr<const Dataset>& data, std::uint64_t seed);
std::uint64_t run_method_seed(const ExperimentPlan& plan, const DatasetSpec& spec,
                              std::string_view method_id, std::uint64_t seed);

// Materialises the dataset of one spec (load or generate, then normalize).
Dataset build_dataset(const DatasetSpec& spec, std::uint64_t master_seed);

enum class ReportFormat { Csv, Json };
ReportFormat parse_report_format(std::string_view name);

std::string results_to_json(const std::vector<RunResult>& results,
                            bool include_timing = true);
std::vector<RunResult> results_from_json(std::string_view text);

// Writes runs.json (the record read back by `bench report`) and timing.csv;
// read_runs merges the two.
void write_runs(const std::vector<RunResult>& results,
                const std::filesystem::path& dir);
std::vector<RunResult> read_runs(const std::filesystem::path& dir);

// Per-run table, seed-averaged summary, normalized tables and rank tables.
// Wall times go to a separate timing file so everything else is a pure
// function of the plan. Throws IoError for an unwritable directory.
void emit_report(const std::vector<RunResult>& results,
                 const std::filesystem::path& dir, ReportFormat format);

}  // namespace hgd
