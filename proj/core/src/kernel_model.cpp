#include "hgd/kernel_model.hpp"

#include <cmath>

namespace hgd {

KernelModel::KernelModel(std::size_t dim, double gamma)
    : dim_(dim),
      gamma_(gamma > 0.0 ? gamma : 1.0 / static_cast<double>(dim ? dim : 1)) {}

double KernelModel::kernel(std::span<const double> a,
                           std::span<const double> b) const {
  double d2 = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    const double diff = a[i] - b[i];
    d2 += diff * diff;
  }
  return std::exp(-gamma_ * d2);
}

double KernelModel::score(std::span<const double> x) const {
  double s = bias_;
  for (std::size_t j = 0; j < coefficients_.size(); ++j) {
    s += coefficients_[j] * kernel(support_vector(j), x);
  }
  return s;
}

void KernelModel::add_support(std::span<const double> x, double coef) {
  support_.insert(support_.end(), x.begin(), x.end());
  coefficients_.push_back(coef);
  bias_ += coef;
}

}  // namespace hgd
