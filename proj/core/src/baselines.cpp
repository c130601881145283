#include "hgd/baselines.hpp"

#include <array>
#include <cmath>
#include <string>

#include "hgd/error.hpp"
#include "hgd/methods.hpp"

namespace hgd {
namespace {

double running_ir(const HarmonizerState& counts) {
  const auto neg = counts.count(kNegative);
  const auto pos = counts.count(kPositive);
  if (neg == 0 || pos == 0) return 1.0;
  return static_cast<double>(neg) / static_cast<double>(pos);
}

}  // namespace

void validate(const CostScheme& scheme) {
  if (const auto* f = std::get_if<FixedCosts>(&scheme)) {
    if (!(f->c_p > 0.0 && f->c_p < 1.0 && f->c_n > 0.0 && f->c_n < 1.0) ||
        std::abs(f->c_p + f->c_n - 1.0) > 1e-9) {
      throw ConfigError("fixed costs need c_p, c_n in (0,1) with c_p + c_n = 1");
    }
  } else {
    const auto& s = std::get<SumCosts>(scheme);
    if (!(s.n_p > 0.0 && s.n_n > 0.0)) {
      throw ConfigError("sum costs need n_p > 0 and n_n > 0");
    }
  }
}

double cost_multiplier(const CostScheme& scheme, int label,
                       const HarmonizerState& counts) {
  if (const auto* f = std::get_if<FixedCosts>(&scheme)) {
    return label == kPositive ? 2.0 * f->c_p : 2.0 * f->c_n;
  }
  const auto& s = std::get<SumCosts>(scheme);
  const double neg = static_cast<double>(counts.count(kNegative));
  const double pos = static_cast<double>(counts.count(kPositive));
  if (neg == 0.0 || pos == 0.0) return 1.0;
  const double total = neg + pos;
  return label == kPositive ? s.n_p / (pos / total) : s.n_n / (neg / total);
}

void validate(const ResampleScheme& scheme) {
  if (scheme.rate_major &&
      !(*scheme.rate_major > 0.0 && *scheme.rate_major <= 1.0)) {
    throw ConfigError("majority resampling rate must lie in (0, 1]");
  }
  if (scheme.rate_minor && !(*scheme.rate_minor >= 1.0)) {
    throw ConfigError("minority resampling rate must be >= 1");
  }
}

std::optional<double> resample_rate(const ResampleScheme& scheme, int label,
                                    const HarmonizerState& counts) {
  const bool minority = label == kPositive;
  const bool resample_major = scheme.kind != ResampleKind::Over;
  const bool resample_minor = scheme.kind != ResampleKind::Under;
  if (minority && !resample_minor) return std::nullopt;
  if (!minority && !resample_major) return std::nullopt;

  const std::optional<double>& fixed =
      minority ? scheme.rate_minor : scheme.rate_major;
  if (fixed) return *fixed;
  double ir = running_ir(counts);
  if (scheme.kind == ResampleKind::Hybrid) ir = std::sqrt(ir);
  return minority ? ir : 1.0 / ir;
}

std::uint32_t poisson_repeat_count(double rate, Rng& rng) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw ConfigError("Poisson rate must be positive, got " +
                      std::to_string(rate));
  }
  if (rate > 500.0) {
    // exp(-rate) underflows below here; use the library sampler.
    return std::poisson_distribution<std::uint32_t>(rate)(rng);
  }
  // Knuth: count uniforms until their running product drops below e^-rate.
  const double limit = std::exp(-rate);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uint32_t k = 0;
  double p = unit(rng);
  while (p > limit) {
    ++k;
    p *= unit(rng);
  }
  return k;
}

StepEvaluation ogd_step(BinaryLearner& learner, const LabeledInstance& inst,
                        double score, double eta) {
  StepEvaluation ev = learner.evaluate(inst, score, eta);
  learner.update(inst, ev, eta, 1.0);
  return ev;
}

WeightedStep csogd_step(BinaryLearner& learner, const LabeledInstance& inst,
                        double score, double eta, const CostScheme& scheme,
                        const HarmonizerState& counts) {
  WeightedStep out;
  out.eval = learner.evaluate(inst, score, eta);
  out.alpha = cost_multiplier(scheme, inst.label, counts);
  learner.update(inst, out.eval, eta, out.alpha);
  return out;
}

ResampleOutcome resample_step(BinaryLearner& learner,
                              const LabeledInstance& inst, double score,
                              double eta, const ResampleScheme& scheme,
                              const HarmonizerState& counts, Rng& rng) {
  ResampleOutcome out;
  out.first = learner.evaluate(inst, score, eta);
  const std::optional<double> rate = resample_rate(scheme, inst.label, counts);
  out.repeats = rate ? poisson_repeat_count(*rate, rng) : 1;
  for (std::uint32_t j = 0; j < out.repeats; ++j) {
    const StepEvaluation ev = j == 0 ? out.first : learner.evaluate(inst, eta);
    out.effective_norm_sq += ev.grad_norm_sq;
    learner.update(inst, ev, eta, 1.0);
  }
  return out;
}

StepTrace BinaryMethod::finish(const LabeledInstance& inst,
                               const StepEvaluation& ev, double alpha,
                               double effective_norm_sq) {
  state_.record_step(inst.label, alpha, ev.grad_norm_sq, effective_norm_sq);
  ++t_;
  return StepTrace{t_,      inst.label,        alpha,      ev.grad_norm_sq,
                   ev.loss, state_.rho_max(), state_.gi()};
}

StepTrace OgdMethod::learn(const LabeledInstance& inst, double score,
                           double eta) {
  const StepEvaluation ev = ogd_step(learner_, inst, score, eta);
  return finish(inst, ev, 1.0, ev.grad_norm_sq);
}

StepTrace HgdMethod::learn(const LabeledInstance& inst, double score,
                           double eta) {
  const StepEvaluation ev = learner_.evaluate(inst, score, eta);
  const double alpha =
      force_unit_alpha_ ? 1.0 : state_.compute_alpha_binary(inst.label);
  if (ev.loss > 0.0) learner_.update(inst, ev, eta, alpha);
  return finish(inst, ev, alpha, alpha * alpha * ev.grad_norm_sq);
}

CsogdMethod::CsogdMethod(BinaryLearner learner, CostScheme scheme)
    : BinaryMethod(std::move(learner), HarmonizerState::static_ratio()),
      scheme_(scheme) {
  validate(scheme_);
}

StepTrace CsogdMethod::learn(const LabeledInstance& inst, double score,
                             double eta) {
  const WeightedStep ws =
      csogd_step(learner_, inst, score, eta, scheme_, state_);
  return finish(inst, ws.eval, ws.alpha,
                ws.alpha * ws.alpha * ws.eval.grad_norm_sq);
}

ResampleMethod::ResampleMethod(BinaryLearner learner, ResampleScheme scheme,
                               std::uint64_t seed)
    : BinaryMethod(std::move(learner), HarmonizerState::static_ratio()),
      scheme_(scheme),
      rng_(seed) {
  validate(scheme_);
}

std::string_view ResampleMethod::id() const {
  switch (scheme_.kind) {
    case ResampleKind::Under:
      return "our";
    case ResampleKind::Over:
      return "oor";
    case ResampleKind::Hybrid:
      return "ohr";
  }
  return "?";
}

StepTrace ResampleMethod::learn(const LabeledInstance& inst, double score,
                                double eta) {
  const ResampleOutcome out =
      resample_step(learner_, inst, score, eta, scheme_, state_, rng_);
  return finish(inst, out.first, static_cast<double>(out.repeats),
                out.effective_norm_sq);
}

namespace {
constexpr std::array<std::string_view, 8> kMethodIds{
    "ogd", "csogd-cost", "csogd-sum", "our", "oor", "ohr", "hgd", "hgd-dynamic"};
}

std::span<const std::string_view> known_method_ids() { return kMethodIds; }

bool is_known_method(std::string_view id) {
  for (auto k : kMethodIds) {
    if (k == id) return true;
  }
  return false;
}

MethodSpec default_method_spec(std::string_view id) {
  if (!is_known_method(id)) throw UnknownMethod(std::string(id));
  MethodSpec spec;
  spec.id = std::string(id);
  if (id == "csogd-sum") spec.costs = SumCosts{};
  if (id == "our") spec.resample.kind = ResampleKind::Under;
  if (id == "ohr") spec.resample.kind = ResampleKind::Hybrid;
  return spec;
}

std::unique_ptr<BinaryMethod> make_binary_method(const MethodSpec& spec,
                                                 BinaryLearner learner,
                                                 std::uint64_t seed) {
  const std::string& id = spec.id;
  if (id == "ogd") return std::make_unique<OgdMethod>(std::move(learner));
  if (id == "hgd") {
    return std::make_unique<HgdMethod>(std::move(learner),
                                       HarmonizerState::static_ratio());
  }
  if (id == "hgd-dynamic") {
    return std::make_unique<HgdMethod>(
        std::move(learner), HarmonizerState::dynamic_smoothed(spec.lambda));
  }
  if (id == "csogd-cost" || id == "csogd-sum") {
    const bool fixed = std::holds_alternative<FixedCosts>(spec.costs);
    if (fixed != (id == "csogd-cost")) {
      throw ConfigError("cost scheme does not match method '" + id + "'");
    }
    return std::make_unique<CsogdMethod>(std::move(learner), spec.costs);
  }
  if (id == "our" || id == "oor" || id == "ohr") {
    ResampleScheme scheme = spec.resample;
    scheme.kind = id == "our"   ? ResampleKind::Under
                  : id == "oor" ? ResampleKind::Over
                                : ResampleKind::Hybrid;
    return std::make_unique<ResampleMethod>(std::move(learner), scheme, seed);
  }
  throw UnknownMethod(id);
}

MulticlassMethod::MulticlassMethod(SoftmaxLearner learner, bool unit_alpha)
    : learner_(std::move(learner)),
      state_(learner_.classes()),
      unit_alpha_(unit_alpha) {}

MulticlassStepTrace MulticlassMethod::learn(const LabeledInstance& inst,
                                            double eta) {
  const SoftmaxEvaluation ev = learner_.evaluate(inst, eta);
  const double alpha = unit_alpha_ ? 1.0 : state_.compute_alpha(inst.label);
  learner_.update(inst, ev, eta, alpha);
  state_.record_step(inst.label, alpha, ev.grad_norm_sq,
                     alpha * alpha * ev.grad_norm_sq);
  ++t_;
  return {t_, inst.label, alpha, ev.grad_norm_sq, ev.loss, state_.rho_max()};
}

}  // namespace hgd
