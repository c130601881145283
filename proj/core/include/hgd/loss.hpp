#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hgd {

enum class LossKind { Perceptron, Hinge, MulticlassSoftmax };

// Binary losses are expressed through a scalar factor g with
// grad_w L = g * x and dL/db = g, so every learner shares one update path.
struct LossGradient {
  double loss = 0.0;
  double factor = 0.0;
};

// Perceptron: max(0, -y*s). Hinge: max(0, 1 - y*s). g = -y when loss > 0.
// Throws ConfigError for MulticlassSoftmax, InputError for a non-binary label.
LossGradient loss_and_gradient_factor(LossKind kind, double score, int label);

struct SoftmaxGradient {
  double loss = 0.0;
  std::vector<double> factor;  // p - onehot(label)
};

// Cross-entropy of a softmax over class scores; label in [0, scores.size()).
SoftmaxGradient softmax_loss_and_gradient(std::span<const double> scores,
                                          int label);

LossKind parse_loss_kind(std::string_view name);
std::string_view to_string(LossKind kind);

}  // namespace hgd
