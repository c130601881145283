#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "hgd/dataset.hpp"

namespace hgd::test {

// Gaussian blobs at +/- shift with the given positive fraction, in stream order.
inline std::shared_ptr<const Dataset> random_binary(std::size_t n, std::size_t d,
                                                    double pos_fraction,
                                                    std::uint64_t seed,
                                                    double shift = 0.5) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::bernoulli_distribution positive(pos_fraction);
  std::vector<LabeledInstance> out;
  out.reserve(n + 2);
  for (std::size_t i = 0; i < n + 2; ++i) {
    const int y = i == 0 ? 1 : i == 1 ? -1 : (positive(rng) ? 1 : -1);
    std::vector<double> x(d);
    for (double& v : x) v = noise(rng) + shift * y;
    out.push_back({std::move(x), y});
  }
  return std::make_shared<const Dataset>("random", std::move(out));
}

}  // namespace hgd::test
