#include "hgd/instance.hpp"

#include <cmath>
#include <string>

#include "hgd/error.hpp"

namespace hgd {

void validate_features(std::span<const double> features) {
  for (std::size_t i = 0; i < features.size(); ++i) {
    if (!std::isfinite(features[i])) {
      throw InputError("non-finite feature at index " + std::to_string(i));
    }
  }
}

double squared_norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace hgd
