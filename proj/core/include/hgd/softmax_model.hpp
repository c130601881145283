#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hgd {

// Linear multiclass scorer: one weight row and bias per class.
class SoftmaxModel {
 public:
  SoftmaxModel() = default;
  SoftmaxModel(std::size_t classes, std::size_t dim)
      : classes_(classes), dim_(dim), weights_(classes * dim, 0.0),
        bias_(classes, 0.0) {}

  std::size_t classes() const noexcept { return classes_; }
  std::size_t dim() const noexcept { return dim_; }

  std::vector<double> scores(std::span<const double> x) const;

  // Row c += coefs[c] * x and bias[c] += coefs[c].
  void add_scaled(std::span<const double> x, std::span<const double> coefs);

  std::span<const double> row(std::size_t c) const {
    return {weights_.data() + c * dim_, dim_};
  }
  std::span<double> row(std::size_t c) {
    return {weights_.data() + c * dim_, dim_};
  }
  std::span<const double> biases() const noexcept { return bias_; }
  std::span<double> biases() noexcept { return bias_; }
  std::span<const double> flat_weights() const noexcept { return weights_; }

  bool operator==(const SoftmaxModel&) const = default;

 private:
  std::size_t classes_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> weights_;
  std::vector<double> bias_;
};

}  // namespace hgd
