#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hgd/baselines.hpp"
#include "hgd/harmonizer.hpp"
#include "hgd/learner.hpp"

namespace hgd {

// One row of the per-instance trace; gi is the effective-step GI after the
// instance has been recorded.
struct StepTrace {
  std::uint64_t t = 0;
  int label = 0;
  double alpha = 1.0;
  double grad_norm_sq = 0.0;
  double loss = 0.0;
  double rho_max = 1.0;
  std::optional<double> gi;
};

// A binary online learner plus the bookkeeping every method shares (class
// counts and gradient-mass ledgers). learn() must follow score() for the
// same instance; the score is passed back in to avoid recomputing it.
class BinaryMethod {
 public:
  BinaryMethod(BinaryLearner learner, HarmonizerState state)
      : learner_(std::move(learner)), state_(std::move(state)) {}
  virtual ~BinaryMethod() = default;

  virtual std::string_view id() const = 0;

  double score(std::span<const double> x) const { return learner_.score(x); }
  virtual StepTrace learn(const LabeledInstance& inst, double score,
                          double eta) = 0;

  const BinaryLearner& learner() const noexcept { return learner_; }
  const HarmonizerState& state() const noexcept { return state_; }

 protected:
  StepTrace finish(const LabeledInstance& inst, const StepEvaluation& ev,
                   double alpha, double effective_norm_sq);

  BinaryLearner learner_;
  HarmonizerState state_;
  std::uint64_t t_ = 0;
};

class OgdMethod final : public BinaryMethod {
 public:
  explicit OgdMethod(BinaryLearner learner)
      : BinaryMethod(std::move(learner), HarmonizerState::static_ratio()) {}
  std::string_view id() const override { return "ogd"; }
  StepTrace learn(const LabeledInstance& inst, double score,
                  double eta) override;
};

// HGD: predict, incur loss, weight, update if L > 0.
class HgdMethod final : public BinaryMethod {
 public:
  HgdMethod(BinaryLearner learner, HarmonizerState state,
            bool force_unit_alpha = false)
      : BinaryMethod(std::move(learner), std::move(state)),
        force_unit_alpha_(force_unit_alpha) {}
  std::string_view id() const override {
    return state_.mode() == RhoMode::DynamicSmoothed ? "hgd-dynamic" : "hgd";
  }
  StepTrace learn(const LabeledInstance& inst, double score,
                  double eta) override;

 private:
  bool force_unit_alpha_;
};

class CsogdMethod final : public BinaryMethod {
 public:
  CsogdMethod(BinaryLearner learner, CostScheme scheme);
  std::string_view id() const override {
    return std::holds_alternative<FixedCosts>(scheme_) ? "csogd-cost"
                                                       : "csogd-sum";
  }
  StepTrace learn(const LabeledInstance& inst, double score,
                  double eta) override;

 private:
  CostScheme scheme_;
};

class ResampleMethod final : public BinaryMethod {
 public:
  ResampleMethod(BinaryLearner learner, ResampleScheme scheme,
                 std::uint64_t seed);
  std::string_view id() const override;
  StepTrace learn(const LabeledInstance& inst, double score,
                  double eta) override;

 private:
  ResampleScheme scheme_;
  Rng rng_;
};

// Method identifier plus its hyperparameters, as written in a config.
struct MethodSpec {
  std::string id;
  CostScheme costs = FixedCosts{};
  ResampleScheme resample{};
  double lambda = 0.99;
};

std::span<const std::string_view> known_method_ids();
bool is_known_method(std::string_view id);

// Defaults for an id (csogd-cost 0.95/0.05, csogd-sum 0.5/0.5, Auto rates).
// Throws UnknownMethod.
MethodSpec default_method_spec(std::string_view id);

std::unique_ptr<BinaryMethod> make_binary_method(const MethodSpec& spec,
                                                 BinaryLearner learner,
                                                 std::uint64_t seed);

struct MulticlassStepTrace {
  std::uint64_t t = 0;
  int label = 0;
  double alpha = 1.0;
  double grad_norm_sq = 0.0;
  double loss = 0.0;
  double rho_max = 1.0;
};

// Softmax learner driven by the multiclass weight; unit_alpha gives plain OGD.
class MulticlassMethod {
 public:
  MulticlassMethod(SoftmaxLearner learner, bool unit_alpha);

  std::string_view id() const { return unit_alpha_ ? "ogd" : "hgd"; }
  std::vector<double> scores(std::span<const double> x) const {
    return learner_.scores(x);
  }
  MulticlassStepTrace learn(const LabeledInstance& inst, double eta);

  const SoftmaxLearner& learner() const noexcept { return learner_; }
  const MulticlassHarmonizer& state() const noexcept { return state_; }

 private:
  SoftmaxLearner learner_;
  MulticlassHarmonizer state_;
  bool unit_alpha_;
  std::uint64_t t_ = 0;
};

}  // namespace hgd
