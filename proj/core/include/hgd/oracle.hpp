#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "hgd/dataset.hpp"
#include "hgd/linear_model.hpp"
#include "hgd/loss.hpp"
#include "hgd/softmax_model.hpp"

namespace hgd {

enum class LearnerFamily { Linear, Kernel, Softmax };

struct OracleOptions {
  double relative_tolerance = 1e-8;
  int max_iterations = 5000;
  // Random initial point (scale 1) when set; zero model otherwise.
  std::optional<std::uint64_t> init_seed;
};

// Best fixed model in hindsight for a convex loss over a stream.
struct OracleResult {
  std::variant<LinearModel, SoftmaxModel> model;
  std::vector<double> losses;  // per instance, stream order
  double cumulative_loss = 0.0;
  double objective = 0.0;  // mean loss
  int iterations = 0;
  bool converged = false;
  double achieved_change = 0.0;  // last relative objective change
};

// Full-batch minimisation with backtracking line search. Piecewise-linear
// losses are minimised through a Huber smoothing whose width shrinks
// geometrically, so the returned objective is the exact nonsmooth value at
// the best iterate found. Throws ConfigError for the kernel family.
OracleResult batch_oracle(const Stream& stream, LossKind loss,
                          LearnerFamily family,
                          const OracleOptions& options = {});

// Mean loss of a fixed linear model over the stream.
double mean_loss(const Stream& stream, LossKind loss, const LinearModel& m);
double mean_loss(const Stream& stream, const SoftmaxModel& m);

struct RegretReport {
  double online_cum_loss = 0.0;
  double oracle_cum_loss = 0.0;
  double regret = 0.0;
  std::vector<std::pair<std::uint64_t, double>> avg_regret_trace;
};

// checkpoints are 1-based prefix lengths.
RegretReport regret(std::span<const double> online_losses,
                    std::span<const double> oracle_losses,
                    std::span<const std::uint64_t> checkpoints);

}  // namespace hgd
