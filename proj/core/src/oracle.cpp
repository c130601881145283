#include "hgd/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "hgd/error.hpp"
#include "hgd/rng.hpp"

namespace hgd {
namespace {

// Huber smoothing of max(0, z) with width mu.
double huber(double z, double mu, double& slope) {
  if (z <= 0.0) {
    slope = 0.0;
    return 0.0;
  }
  if (z < mu) {
    slope = z / mu;
    return z * z / (2.0 * mu);
  }
  slope = 1.0;
  return z - mu / 2.0;
}

struct Objective {
  std::size_t params = 0;
  bool smooth_exact = false;  // the loss itself is differentiable
  std::function<double(const std::vector<double>&)> exact;
  std::function<double(const std::vector<double>&, double, std::vector<double>&)>
      smoothed;
};

Objective linear_objective(const Stream& stream, LossKind loss) {
  const std::size_t d = stream.dim();
  const double margin = loss == LossKind::Hinge ? 1.0 : 0.0;
  const double inv_n = 1.0 / static_cast<double>(stream.size());
  Objective obj;
  obj.params = d + 1;
  obj.exact = [&stream, d, margin, inv_n](const std::vector<double>& th) {
    double sum = 0.0;
    for (std::size_t i = 0; i < stream.size(); ++i) {
      const auto& inst = stream[i];
      const double s = std::inner_product(inst.features.begin(), inst.features.end(),
                                          th.begin(), th[d]);
      sum += std::max(0.0, margin - inst.label * s);
    }
    return sum * inv_n;
  };
  obj.smoothed = [&stream, d, margin, inv_n](const std::vector<double>& th,
                                             double mu, std::vector<double>& g) {
    g.assign(d + 1, 0.0);
    double sum = 0.0;
    for (std::size_t i = 0; i < stream.size(); ++i) {
      const auto& inst = stream[i];
      const double s = std::inner_product(inst.features.begin(), inst.features.end(),
                                          th.begin(), th[d]);
      double slope = 0.0;
      sum += huber(margin - inst.label * s, mu, slope);
      if (slope != 0.0) {
        const double c = -slope * inst.label * inv_n;
        for (std::size_t j = 0; j < d; ++j) g[j] += c * inst.features[j];
        g[d] += c;
      }
    }
    return sum * inv_n;
  };
  return obj;
}

std::size_t class_count(const Stream& stream) {
  int max_label = 0;
  for (std::size_t i = 0; i < stream.size(); ++i) {
    if (stream[i].label < 0) throw InputError("softmax oracle needs class ids >= 0");
    max_label = std::max(max_label, stream[i].label);
  }
  return static_cast<std::size_t>(max_label) + 1;
}

// Layout: C*d weights row-major, then C biases.
Objective softmax_objective(const Stream& stream, std::size_t classes) {
  const std::size_t d = stream.dim();
  const double inv_n = 1.0 / static_cast<double>(stream.size());
  Objective obj;
  obj.params = classes * (d + 1);
  obj.smooth_exact = true;
  obj.smoothed = [&stream, d, classes, inv_n](const std::vector<double>& th, double,
                                              std::vector<double>& g) {
    g.assign(th.size(), 0.0);
    std::vector<double> scores(classes);
    double sum = 0.0;
    for (std::size_t i = 0; i < stream.size(); ++i) {
      const auto& inst = stream[i];
      for (std::size_t c = 0; c < classes; ++c) {
        scores[c] = std::inner_product(inst.features.begin(), inst.features.end(),
                                       th.begin() + c * d, th[classes * d + c]);
      }
      const SoftmaxGradient sg = softmax_loss_and_gradient(scores, inst.label);
      sum += sg.loss;
      for (std::size_t c = 0; c < classes; ++c) {
        const double f = sg.factor[c] * inv_n;
        if (f == 0.0) continue;
        for (std::size_t j = 0; j < d; ++j) g[c * d + j] += f * inst.features[j];
        g[classes * d + c] += f;
      }
    }
    return sum * inv_n;
  };
  obj.exact = [f = obj.smoothed](const std::vector<double>& th) {
    std::vector<double> g;
    return f(th, 0.0, g);
  };
  return obj;
}

struct Solution {
  std::vector<double> theta;
  double objective = 0.0;
  int iterations = 0;
  bool converged = false;
  double change = 0.0;
};

double rel_change(double prev, double cur) {
  return std::abs(prev - cur) / std::max(std::abs(prev), 1e-12);
}

Solution minimise(const Objective& obj, std::vector<double> theta,
                  const OracleOptions& opts) {
  std::vector<double> mus;
  if (obj.smooth_exact) {
    mus.push_back(0.0);
  } else {
    for (double mu = 1.0; mu >= 1e-6; mu *= 0.25) mus.push_back(mu);
  }

  Solution best{theta, obj.exact(theta), 0, false, 0.0};
  if (best.objective == 0.0) {
    best.converged = true;
    return best;
  }
  double lipschitz = 1.0;
  std::vector<double> y = theta, g, g_unused, next(theta.size());
  int iters = 0;
  bool stage_converged = false;
  double change = 1.0;

  for (std::size_t stage = 0; stage < mus.size() && iters < opts.max_iterations; ++stage) {
    const double mu = mus[stage];
    double momentum = 1.0;
    y = theta;
    double f_theta = obj.smoothed(theta, mu, g_unused);
    stage_converged = false;
    while (iters < opts.max_iterations) {
      ++iters;
      const double f_y = obj.smoothed(y, mu, g);
      const double g_sq = std::inner_product(g.begin(), g.end(), g.begin(), 0.0);
      if (g_sq == 0.0) {
        stage_converged = true;
        change = 0.0;
        break;
      }
      double f_next = 0.0;
      for (int bt = 0; bt < 60; ++bt) {
        for (std::size_t k = 0; k < y.size(); ++k) next[k] = y[k] - g[k] / lipschitz;
        f_next = obj.smoothed(next, mu, g_unused);
        if (f_next <= f_y - g_sq / (2.0 * lipschitz) + 1e-14 * std::abs(f_y)) break;
        lipschitz *= 2.0;
      }
      if (f_next > f_theta) {
        // Restart the momentum when the objective goes up.
        y = theta;
        momentum = 1.0;
        continue;
      }
      const double m_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum * momentum));
      const double beta = (momentum - 1.0) / m_next;
      for (std::size_t k = 0; k < y.size(); ++k) {
        y[k] = next[k] + beta * (next[k] - theta[k]);
      }
      theta.swap(next);
      momentum = m_next;
      change = rel_change(f_theta, f_next);
      f_theta = f_next;
      lipschitz = std::max(lipschitz / 1.5, 1e-12);

      const double exact = obj.smooth_exact ? f_theta : obj.exact(theta);
      if (exact < best.objective) {
        best.theta = theta;
        best.objective = exact;
      }
      if (change <= opts.relative_tolerance || best.objective == 0.0) {
        stage_converged = true;
        break;
      }
    }
    if (best.objective == 0.0) break;
  }
  best.iterations = iters;
  best.converged = stage_converged;
  best.change = change;
  return best;
}

}  // namespace

OracleResult batch_oracle(const Stream& stream, LossKind loss,
                          LearnerFamily family, const OracleOptions& options) {
  if (stream.empty()) throw EmptyStream("oracle needs a non-empty stream");
  if (family == LearnerFamily::Kernel) {
    throw ConfigError("batch oracle is not available for the kernel family");
  }
  if ((family == LearnerFamily::Softmax) != (loss == LossKind::MulticlassSoftmax)) {
    throw ConfigError("softmax family and softmax loss go together");
  }
  const std::size_t d = stream.dim();
  const std::size_t classes = family == LearnerFamily::Softmax ? class_count(stream) : 0;
  const Objective obj = family == LearnerFamily::Softmax ? softmax_objective(stream, classes)
                                                         : linear_objective(stream, loss);
  std::vector<double> theta(obj.params, 0.0);
  if (options.init_seed) {
    Rng rng(*options.init_seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (double& v : theta) v = normal(rng);
  }
  const Solution sol = minimise(obj, std::move(theta), options);

  OracleResult out;
  out.iterations = sol.iterations;
  out.converged = sol.converged;
  out.achieved_change = sol.change;
  out.losses.reserve(stream.size());
  if (family == LearnerFamily::Softmax) {
    SoftmaxModel m(classes, d);
    for (std::size_t c = 0; c < classes; ++c) {
      auto row = m.row(c);
      std::copy(sol.theta.begin() + c * d, sol.theta.begin() + (c + 1) * d, row.begin());
      m.biases()[c] = sol.theta[classes * d + c];
    }
    for (std::size_t i = 0; i < stream.size(); ++i) {
      out.losses.push_back(softmax_loss_and_gradient(m.scores(stream[i].features),
                                                     stream[i].label).loss);
    }
    out.model = std::move(m);
  } else {
    LinearModel m(std::vector<double>(sol.theta.begin(), sol.theta.begin() + d), sol.theta[d]);
    for (std::size_t i = 0; i < stream.size(); ++i) {
      out.losses.push_back(
          loss_and_gradient_factor(loss, m.score(stream[i].features), stream[i].label).loss);
    }
    out.model = std::move(m);
  }
  out.cumulative_loss = std::accumulate(out.losses.begin(), out.losses.end(), 0.0);
  out.objective = out.cumulative_loss / static_cast<double>(stream.size());
  return out;
}

double mean_loss(const Stream& stream, LossKind loss, const LinearModel& m) {
  if (stream.empty()) throw EmptyStream("mean loss of an empty stream");
  double sum = 0.0;
  for (std::size_t i = 0; i < stream.size(); ++i) {
    sum += loss_and_gradient_factor(loss, m.score(stream[i].features), stream[i].label).loss;
  }
  return sum / static_cast<double>(stream.size());
}

double mean_loss(const Stream& stream, const SoftmaxModel& m) {
  if (stream.empty()) throw EmptyStream("mean loss of an empty stream");
  double sum = 0.0;
  for (std::size_t i = 0; i < stream.size(); ++i) {
    sum += softmax_loss_and_gradient(m.scores(stream[i].features), stream[i].label).loss;
  }
  return sum / static_cast<double>(stream.size());
}

RegretReport regret(std::span<const double> online_losses,
                    std::span<const double> oracle_losses,
                    std::span<const std::uint64_t> checkpoints) {
  if (online_losses.size() != oracle_losses.size()) {
    throw InputError("online and oracle loss sequences differ in length");
  }
  RegretReport r;
  auto cp = checkpoints.begin();
  for (std::size_t i = 0; i < online_losses.size(); ++i) {
    r.online_cum_loss += online_losses[i];
    r.oracle_cum_loss += oracle_losses[i];
    const std::uint64_t t = i + 1;
    while (cp != checkpoints.end() && *cp < t) ++cp;
    if (cp != checkpoints.end() && *cp == t) {
      r.avg_regret_trace.emplace_back(
          t, (r.online_cum_loss - r.oracle_cum_loss) / static_cast<double>(t));
      ++cp;
    }
  }
  r.regret = r.online_cum_loss - r.oracle_cum_loss;
  return r;
}

}  // namespace hgd
