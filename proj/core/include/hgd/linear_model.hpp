#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hgd {

// score(x) = w.x + b. The bias behaves as the weight of an implicit
// always-one feature, which is why add_scaled moves it by the same coef.
class LinearModel {
 public:
  explicit LinearModel(std::size_t dim = 0) : weights_(dim, 0.0) {}
  LinearModel(std::vector<double> weights, double bias)
      : weights_(std::move(weights)), bias_(bias) {}

  std::size_t dim() const noexcept { return weights_.size(); }
  double score(std::span<const double> x) const;

  // w += coef * x, b += coef.
  void add_scaled(std::span<const double> x, double coef);

  std::span<const double> weights() const noexcept { return weights_; }
  std::span<double> weights() noexcept { return weights_; }
  double bias() const noexcept { return bias_; }
  void set_bias(double b) noexcept { bias_ = b; }

  bool operator==(const LinearModel&) const = default;

 private:
  std::vector<double> weights_;
  double bias_ = 0.0;
};

}  // namespace hgd
