#include "hgd/softmax_model.hpp"

#include "hgd/instance.hpp"

namespace hgd {

std::vector<double> SoftmaxModel::scores(std::span<const double> x) const {
  std::vector<double> out(classes_);
  for (std::size_t c = 0; c < classes_; ++c) out[c] = dot(row(c), x) + bias_[c];
  return out;
}

void SoftmaxModel::add_scaled(std::span<const double> x,
                              std::span<const double> coefs) {
  for (std::size_t c = 0; c < classes_; ++c) {
    const double k = coefs[c];
    if (k == 0.0) continue;
    double* w = weights_.data() + c * dim_;
    for (std::size_t i = 0; i < dim_; ++i) w[i] += k * x[i];
    bias_[c] += k;
  }
}

}  // namespace hgd
