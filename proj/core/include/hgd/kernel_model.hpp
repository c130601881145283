#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hgd {

// RBF kernel expansion: score(x) = sum_j coef_j * exp(-gamma*|s_j - x|^2) + b.
// The support set is unbounded; it grows by one vector per nonzero step.
class KernelModel {
 public:
  // gamma <= 0 selects the default 1/dim.
  explicit KernelModel(std::size_t dim = 0, double gamma = 0.0);

  std::size_t dim() const noexcept { return dim_; }
  double gamma() const noexcept { return gamma_; }
  double bias() const noexcept { return bias_; }
  std::size_t support_size() const noexcept { return coefficients_.size(); }

  double kernel(std::span<const double> a, std::span<const double> b) const;
  double score(std::span<const double> x) const;

  // Appends (x, coef) to the support and moves the bias by coef.
  void add_support(std::span<const double> x, double coef);

  std::span<const double> support_vector(std::size_t j) const {
    return {support_.data() + j * dim_, dim_};
  }
  double coefficient(std::size_t j) const { return coefficients_[j]; }

  bool operator==(const KernelModel&) const = default;

 private:
  std::size_t dim_;
  double gamma_;
  double bias_ = 0.0;
  std::vector<double> support_;  // row-major, support_size() x dim_
  std::vector<double> coefficients_;
};

}  // namespace hgd
