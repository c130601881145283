#include "hgd/linear_model.hpp"

#include "hgd/instance.hpp"

namespace hgd {

double LinearModel::score(std::span<const double> x) const {
  return dot(weights_, x) + bias_;
}

void LinearModel::add_scaled(std::span<const double> x, double coef) {
  for (std::size_t i = 0; i < weights_.size(); ++i) weights_[i] += coef * x[i];
  bias_ += coef;
}

}  // namespace hgd
