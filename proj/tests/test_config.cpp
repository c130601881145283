#include <string>

#include "doctest.h"
#include "hgd/error.hpp"
#include "hgd/experiment.hpp"

using namespace hgd;

namespace {

const char* kMinimal = R"({"datasets": [{"synthetic": "d=5,n=100"}], "methods": "hgd"})";

std::string with_dataset(const std::string& ds) {
  return R"({"datasets": [)" + ds + R"(], "methods": ["ogd"]})";
}

std::string error_of(const std::string& text) {
  try {
    parse_config_text(text, "cfg");
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("minimal config gets every default") {
  const ExperimentPlan p = parse_config_text(kMinimal);
  REQUIRE(p.datasets.size() == 1);
  REQUIRE(p.methods.size() == 1);
  CHECK(p.methods[0].id == "hgd");
  CHECK(p.family == LearnerFamily::Linear);
  CHECK(p.loss == LossKind::Hinge);
  CHECK(p.eta == EtaPolicy::constant(0.3));
  CHECK(p.seeds == std::vector<std::uint64_t>{0});
  CHECK(p.checkpoint_count == 20);
  CHECK(p.checkpoint_indices.empty());
  CHECK(p.datasets[0].normalize == NormalizeMethod::MinMax);
  CHECK_FALSE(p.compute_regret);
  CHECK(std::holds_alternative<GaussianMixtureSpec>(p.datasets[0].source));
}

TEST_CASE("unknown method ids") {
  try {
    parse_config_text(R"({"datasets": [{"synthetic": "d=2"}], "methods": ["ogd", "xyz"]})");
    FAIL("expected UnknownMethod");
  } catch (const UnknownMethod& e) {
    CHECK(e.id() == "xyz");
  }
}

TEST_CASE("schedules and dataset options") {
  const ExperimentPlan p = parse_config_text(with_dataset(
      R"({"name": "a8a", "path": "data/a8a.libsvm", "dimension": 123,
          "schedule": "1@6000,2.5@11000,4@15000", "normalize": "zscore", "limit": 500})"),
      "cfg", "/base");
  const DatasetSpec& d = p.datasets[0];
  REQUIRE(d.schedule.has_value());
  CHECK(d.schedule->segments().size() == 3);
  CHECK(d.name == "a8a");
  CHECK(d.normalize == NormalizeMethod::ZScore);
  CHECK(*d.limit == 500);
  const auto& src = std::get<FileSource>(d.source);
  CHECK(src.format == FileSource::Format::Libsvm);
  CHECK(*src.libsvm.dimension == 123);
  CHECK(src.path == "/base/data/a8a.libsvm");

  const ExperimentPlan c = parse_config_text(with_dataset(
      R"({"path": "/abs/x.csv", "positive_label": 1, "label_column": 2, "header": true,
          "delimiter": ";", "target_ir": 9})"));
  const auto& csv = std::get<FileSource>(c.datasets[0].source);
  CHECK(csv.format == FileSource::Format::Csv);
  CHECK(*csv.csv.positive_label == "1");
  CHECK(csv.csv.label_column == 2);
  CHECK(csv.csv.delimiter == ';');
  CHECK(c.datasets[0].name == "x");
  CHECK(*c.datasets[0].target_ir == 9.0);
}

TEST_CASE("method hyperparameters") {
  const ExperimentPlan p = parse_config_text(R"({
    "datasets": [{"synthetic": "d=2"}],
    "methods": ["ogd", {"id": "csogd-cost", "c_p": 0.8, "c_n": 0.2},
                {"id": "csogd-sum", "n_p": 0.6},
                {"id": "oor", "rate_minor": 4}, {"id": "our"},
                {"id": "hgd-dynamic", "lambda": 0.9}]})");
  REQUIRE(p.methods.size() == 6);
  CHECK(std::get<FixedCosts>(p.methods[1].costs).c_p == 0.8);
  CHECK(std::get<SumCosts>(p.methods[2].costs).n_p == 0.6);
  CHECK(*p.methods[3].resample.rate_minor == 4.0);
  CHECK_FALSE(p.methods[4].resample.rate_major.has_value());
  CHECK(p.methods[5].lambda == 0.9);
}

TEST_CASE("global options") {
  const ExperimentPlan p = parse_config_text(R"({
    "datasets": [{"synthetic": "d=2"}], "methods": "hgd",
    "learner": {"family": "kernel", "gamma": 0.5},
    "eta": {"policy": "inverse_sqrt", "scale": 2}, "seeds": 5, "master_seed": 7,
    "checkpoints": [10, 20, 40], "output_dir": "out", "export_steps": true})");
  CHECK(p.family == LearnerFamily::Kernel);
  CHECK(p.kernel_gamma == 0.5);
  CHECK(p.eta == EtaPolicy::inverse_sqrt(2.0));
  CHECK(p.seeds == std::vector<std::uint64_t>{0, 1, 2, 3, 4});
  CHECK(p.master_seed == 7);
  CHECK(p.checkpoint_indices == std::vector<std::uint64_t>{10, 20, 40});
  CHECK(p.output_dir == "out");
  CHECK(p.export_steps);

  const ExperimentPlan s = parse_config_text(R"({
    "datasets": [{"synthetic": "d=3,priors=0.5/0.3/0.2"}], "methods": ["ogd", "hgd"],
    "learner": {"family": "softmax"}, "eta": 0.1, "seeds": [3, 9], "regret": true})");
  CHECK(s.loss == LossKind::MulticlassSoftmax);
  CHECK(s.eta == EtaPolicy::constant(0.1));
  CHECK(s.seeds == std::vector<std::uint64_t>{3, 9});
  CHECK(s.compute_regret);
}

TEST_CASE("config errors name the offending key") {
  CHECK(error_of(R"({"methods": "hgd"})").find("cfg.datasets") != std::string::npos);
  CHECK(error_of(R"({"datasets": [{"synthetic": "d=2"}]})").find("cfg.methods") !=
        std::string::npos);
  CHECK(error_of(R"({"datasets": [{"synthetic": "d=2"}], "methods": "hgd", "colour": 1})")
            .find("colour") != std::string::npos);
  CHECK(error_of(with_dataset(R"({"synthetic": "d=2", "schedule": "2@5,1@3"})"))
            .find("cfg.datasets[0].schedule") != std::string::npos);
  CHECK(error_of(with_dataset(R"({"synthetic": "d=2", "header": true})"))
            .find("cfg.datasets[0].header") != std::string::npos);
  CHECK(error_of(with_dataset(R"({"synthetic": "d=2", "path": "x.csv"})")) != "");
  CHECK(error_of(with_dataset(R"({"synthetic": "d=2", "target_ir": 0.5})")) != "");
  CHECK(error_of(with_dataset(R"({"synthetic": "d=2", "name": "a"}, {"synthetic": "d=3", "name": "a"})"))
            .find("duplicate") != std::string::npos);
  CHECK(error_of(R"({"datasets": [{"synthetic": "d=2"}], "methods": ["hgd", "hgd"]})") != "");
  CHECK(error_of(R"({"datasets": [{"synthetic": "d=2"}], "methods": "hgd", "eta": 0})") != "");
  CHECK(error_of(R"({"datasets": [{"synthetic": "d=2"}], "methods": "hgd", "eta": {"policy": "cosine"}})") !=
        "");
  CHECK(error_of(R"({"datasets": [{"synthetic": "d=2"}], "methods": "hgd", "checkpoints": [5, 5]})") !=
        "");
  CHECK(error_of(R"({"datasets": [{"synthetic": "d=2"}], "methods": "oor", "learner": {"family": "softmax"}})") !=
        "");
  CHECK(error_of(R"({"datasets": [{"synthetic": "d=2"}], "methods": "hgd", "learner": {"loss": "softmax"}})") !=
        "");
  CHECK(error_of(R"({"datasets": [{"synthetic": "d=2"}], "methods": "hgd", "learner": {"gamma": 1}})") !=
        "");
  CHECK(error_of(R"({"datasets": [{"synthetic": "d=2"}], "methods": "hgd", "learner": {"family": "kernel"}, "regret": true})") !=
        "");
  CHECK(error_of(R"({"datasets": [{"synthetic": "d=2"}], "methods": [{"id": "hgd-dynamic", "lambda": 1}]})") !=
        "");
  CHECK(error_of(R"({"datasets": [{"synthetic": "d=2"}], "methods": [{"id": "ogd", "c_p": 1}]})") != "");
  CHECK(error_of(R"({"datasets": [{"synthetic": "d=2"}], "methods": [{"id": "csogd-cost", "c_p": 0.3, "c_n": 0.3}]})") !=
        "");
  CHECK(error_of("{not json").find("malformed JSON") != std::string::npos);
  CHECK_THROWS_AS(parse_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("shipped example config parses") {
  const ExperimentPlan plan = parse_config(std::filesystem::path(HGD_CONFIG_DIR) / "synthetic_grid.json");
  REQUIRE(plan.datasets.size() == 5);
  CHECK(plan.datasets[0].name == "gauss-ir9");
  CHECK(plan.datasets[0].normalize == NormalizeMethod::None);
  CHECK(plan.datasets[3].schedule->segments().size() == 2);
  CHECK(plan.methods.size() == 8);
  CHECK(plan.methods[2].lambda == 0.99);
  CHECK(plan.seeds.size() == 5);
  CHECK(plan.compute_regret);
}
