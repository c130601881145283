#pragma once

#include <cstdint>
#include <optional>
#include <variant>

#include "hgd/harmonizer.hpp"
#include "hgd/learner.hpp"
#include "hgd/rng.hpp"

namespace hgd {

// Class-dependent cost multipliers for cost-sensitive OGD.
// FixedCosts: 2*c_p for positives, 2*c_n for negatives (so 0.5/0.5 is OGD).
// SumCosts:   n_p / pi_pos and n_n / pi_neg with running class fractions.
struct FixedCosts {
  double c_p = 0.95;
  double c_n = 0.05;
};
struct SumCosts {
  double n_p = 0.5;
  double n_n = 0.5;
};
using CostScheme = std::variant<FixedCosts, SumCosts>;

void validate(const CostScheme& scheme);

// Multiplier for the instance's label given counts strictly before it.
// SumCosts falls back to 1 until both classes have been seen.
double cost_multiplier(const CostScheme& scheme, int label,
                       const HarmonizerState& counts);

enum class ResampleKind { Under, Over, Hybrid };

// Poisson rates per class; nullopt means Auto (derived from the running IR).
// Under resamples only the majority, Over only the minority; the other
// class is trained exactly once.
struct ResampleScheme {
  ResampleKind kind = ResampleKind::Over;
  std::optional<double> rate_major;
  std::optional<double> rate_minor;
};

void validate(const ResampleScheme& scheme);

// Poisson rate for the instance's label, or nullopt for a plain single step.
// Auto rates: Under 1/IR, Over IR, Hybrid 1/sqrt(IR) and sqrt(IR); IR is the
// count ratio before the instance (1 until both classes are seen).
std::optional<double> resample_rate(const ResampleScheme& scheme, int label,
                                    const HarmonizerState& counts);

// k ~ Poisson(rate). Throws ConfigError when rate <= 0.
std::uint32_t poisson_repeat_count(double rate, Rng& rng);

// OGD: one unit-weight step, skipped when the loss is zero.
// Each step function takes the instance's score at the current model, as
// already computed for the prequential prediction.
StepEvaluation ogd_step(BinaryLearner& learner, const LabeledInstance& inst,
                        double score, double eta);

struct WeightedStep {
  StepEvaluation eval;
  double alpha = 1.0;
};

WeightedStep csogd_step(BinaryLearner& learner, const LabeledInstance& inst,
                        double score, double eta, const CostScheme& scheme,
                        const HarmonizerState& counts);

struct ResampleOutcome {
  StepEvaluation first;          // evaluation at the incoming model
  std::uint32_t repeats = 0;     // number of OGD steps applied
  double effective_norm_sq = 0;  // sum of G over the repeats
};

ResampleOutcome resample_step(BinaryLearner& learner,
                              const LabeledInstance& inst, double score,
                              double eta, const ResampleScheme& scheme,
                              const HarmonizerState& counts, Rng& rng);

}  // namespace hgd
