#include "hgd/loss.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hgd/error.hpp"
#include "hgd/instance.hpp"

namespace hgd {

LossGradient loss_and_gradient_factor(LossKind kind, double score, int label) {
  if (!is_binary_label(label)) {
    throw InputError("binary loss needs label +1 or -1, got " +
                     std::to_string(label));
  }
  const double y = label;
  double loss = 0.0;
  switch (kind) {
    case LossKind::Hinge:
      loss = std::max(0.0, 1.0 - y * score);
      break;
    case LossKind::Perceptron:
      loss = std::max(0.0, -y * score);
      break;
    case LossKind::MulticlassSoftmax:
      throw ConfigError("softmax loss is not a binary loss");
  }
  return {loss, loss > 0.0 ? -y : 0.0};
}

SoftmaxGradient softmax_loss_and_gradient(std::span<const double> scores,
                                          int label) {
  if (label < 0 || static_cast<std::size_t>(label) >= scores.size()) {
    throw InputError("class id " + std::to_string(label) + " out of range");
  }
  const double top = *std::max_element(scores.begin(), scores.end());
  SoftmaxGradient out;
  out.factor.resize(scores.size());
  double z = 0.0;
  for (std::size_t c = 0; c < scores.size(); ++c) {
    out.factor[c] = std::exp(scores[c] - top);
    z += out.factor[c];
  }
  for (double& p : out.factor) p /= z;
  out.loss = -(scores[label] - top - std::log(z));
  out.factor[label] -= 1.0;
  return out;
}

LossKind parse_loss_kind(std::string_view name) {
  if (name == "hinge") return LossKind::Hinge;
  if (name == "perceptron") return LossKind::Perceptron;
  if (name == "softmax") return LossKind::MulticlassSoftmax;
  throw ConfigError("unknown loss kind '" + std::string(name) + "'");
}

std::string_view to_string(LossKind kind) {
  switch (kind) {
    case LossKind::Hinge:
      return "hinge";
    case LossKind::Perceptron:
      return "perceptron";
    case LossKind::MulticlassSoftmax:
      return "softmax";
  }
  return "?";
}

}  // namespace hgd
