#include "hgd/learner.hpp"

#include <string>

#include "hgd/error.hpp"

namespace hgd {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_dim(std::size_t expected, std::size_t got) {
  if (expected != got) {
    throw InputError("feature dimension " + std::to_string(got) +
                     " does not match model dimension " +
                     std::to_string(expected));
  }
}

// |grad_f score|^2 under the bias-as-feature convention.
double score_gradient_norm_sq(const BinaryModel& model,
                              std::span<const double> x) {
  return std::visit(
      Overloaded{
          [&](const LinearModel&) { return squared_norm(x) + 1.0; },
          [&](const KernelModel& k) { return k.kernel(x, x) + 1.0; },
      },
      model);
}

}  // namespace

std::size_t model_dim(const BinaryModel& model) {
  return std::visit([](const auto& m) { return m.dim(); }, model);
}

double predict(const BinaryModel& model, std::span<const double> features) {
  check_dim(model_dim(model), features.size());
  return std::visit([&](const auto& m) { return m.score(features); }, model);
}

int predicted_class(std::span<const double> scores) {
  std::size_t best = 0;
  for (std::size_t c = 1; c < scores.size(); ++c) {
    if (scores[c] > scores[best]) best = c;
  }
  return static_cast<int>(best);
}

double gradient_norm_sq(const BinaryModel& model, const LabeledInstance& inst,
                        LossKind loss, double eta) {
  const double s = predict(model, inst.features);
  const LossGradient lg = loss_and_gradient_factor(loss, s, inst.label);
  if (lg.factor == 0.0) return 0.0;
  return eta * eta * lg.factor * lg.factor *
         score_gradient_norm_sq(model, inst.features);
}

BinaryModel apply_step(BinaryModel model, const LabeledInstance& inst,
                       double eta, double alpha, LossKind loss) {
  BinaryLearner learner(std::move(model), loss);
  learner.step(inst, eta, alpha);
  return learner.model();
}

BinaryLearner::BinaryLearner(BinaryModel model, LossKind loss)
    : model_(std::move(model)), loss_(loss) {
  if (loss == LossKind::MulticlassSoftmax) {
    throw ConfigError("binary learner cannot use the softmax loss");
  }
}

StepEvaluation BinaryLearner::evaluate(const LabeledInstance& inst,
                                       double score, double eta) const {
  const LossGradient lg = loss_and_gradient_factor(loss_, score, inst.label);
  StepEvaluation ev{score, lg.loss, lg.factor, 0.0};
  if (lg.factor != 0.0) {
    ev.grad_norm_sq = eta * eta * lg.factor * lg.factor *
                      score_gradient_norm_sq(model_, inst.features);
  }
  return ev;
}

bool BinaryLearner::update(const LabeledInstance& inst,
                           const StepEvaluation& ev, double eta,
                           double alpha) {
  if (ev.factor == 0.0 || ev.loss <= 0.0) return false;
  const double coef = -eta * alpha * ev.factor;
  if (coef == 0.0) return false;
  std::visit(Overloaded{
                 [&](LinearModel& m) { m.add_scaled(inst.features, coef); },
                 [&](KernelModel& m) { m.add_support(inst.features, coef); },
             },
             model_);
  return true;
}

std::vector<double> SoftmaxLearner::scores(std::span<const double> x) const {
  check_dim(model_.dim(), x.size());
  return model_.scores(x);
}

SoftmaxEvaluation SoftmaxLearner::evaluate(const LabeledInstance& inst,
                                           double eta) const {
  SoftmaxEvaluation ev;
  ev.scores = scores(inst.features);
  SoftmaxGradient g = softmax_loss_and_gradient(ev.scores, inst.label);
  ev.loss = g.loss;
  ev.factor = std::move(g.factor);
  ev.grad_norm_sq = eta * eta * squared_norm(ev.factor) *
                    (squared_norm(inst.features) + 1.0);
  return ev;
}

void SoftmaxLearner::update(const LabeledInstance& inst,
                            const SoftmaxEvaluation& ev, double eta,
                            double alpha) {
  if (ev.loss <= 0.0) return;
  std::vector<double> coefs(ev.factor.size());
  for (std::size_t c = 0; c < coefs.size(); ++c) {
    coefs[c] = -eta * alpha * ev.factor[c];
  }
  model_.add_scaled(inst.features, coefs);
}

}  // namespace hgd
