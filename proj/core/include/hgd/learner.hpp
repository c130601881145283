#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "hgd/instance.hpp"
#include "hgd/kernel_model.hpp"
#include "hgd/linear_model.hpp"
#include "hgd/loss.hpp"
#include "hgd/softmax_model.hpp"

namespace hgd {

using BinaryModel = std::variant<LinearModel, KernelModel>;

std::size_t model_dim(const BinaryModel& model);

// Throws InputError when the feature dimension does not match the model.
double predict(const BinaryModel& model, std::span<const double> features);

// sign(score) with sign(0) mapped to the majority class.
inline int predicted_label(double score) {
  return score > 0.0 ? kPositive : kNegative;
}

// argmax, ties resolved toward the lowest class id.
int predicted_class(std::span<const double> scores);

// G = |eta * grad L|^2 for the instance at the current model.
double gradient_norm_sq(const BinaryModel& model, const LabeledInstance& inst,
                        LossKind loss, double eta);

// f <- f - eta * alpha * grad L; returned unchanged when the loss is zero.
BinaryModel apply_step(BinaryModel model, const LabeledInstance& inst,
                       double eta, double alpha, LossKind loss);

// Everything the update path needs about one instance at the current model.
struct StepEvaluation {
  double score = 0.0;
  double loss = 0.0;
  double factor = 0.0;
  double grad_norm_sq = 0.0;  // G at the supplied eta
};

class BinaryLearner {
 public:
  BinaryLearner(BinaryModel model, LossKind loss);

  double score(std::span<const double> x) const { return predict(model_, x); }

  StepEvaluation evaluate(const LabeledInstance& inst, double score,
                          double eta) const;
  StepEvaluation evaluate(const LabeledInstance& inst, double eta) const {
    return evaluate(inst, score(inst.features), eta);
  }

  // Moves the model by -eta*alpha*grad. No-op (returns false) when the
  // evaluation carries a zero gradient factor.
  bool update(const LabeledInstance& inst, const StepEvaluation& ev,
              double eta, double alpha);

  StepEvaluation step(const LabeledInstance& inst, double eta, double alpha) {
    StepEvaluation ev = evaluate(inst, eta);
    update(inst, ev, eta, alpha);
    return ev;
  }

  const BinaryModel& model() const noexcept { return model_; }
  LossKind loss_kind() const noexcept { return loss_; }
  std::size_t dim() const { return model_dim(model_); }

 private:
  BinaryModel model_;
  LossKind loss_;
};

struct SoftmaxEvaluation {
  std::vector<double> scores;
  double loss = 0.0;
  std::vector<double> factor;
  double grad_norm_sq = 0.0;
};

class SoftmaxLearner {
 public:
  SoftmaxLearner(std::size_t classes, std::size_t dim) : model_(classes, dim) {}
  explicit SoftmaxLearner(SoftmaxModel model) : model_(std::move(model)) {}

  std::vector<double> scores(std::span<const double> x) const;
  SoftmaxEvaluation evaluate(const LabeledInstance& inst, double eta) const;
  void update(const LabeledInstance& inst, const SoftmaxEvaluation& ev,
              double eta, double alpha);

  const SoftmaxModel& model() const noexcept { return model_; }
  std::size_t classes() const noexcept { return model_.classes(); }
  std::size_t dim() const noexcept { return model_.dim(); }

 private:
  SoftmaxModel model_;
};

}  // namespace hgd
