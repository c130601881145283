#include "hgd/harmonizer.hpp"

#include <algorithm>
#include <string>

#include "hgd/error.hpp"
#include "hgd/instance.hpp"

namespace hgd {

std::optional<double> imbalance_ratio(const std::array<double, 2>& sums) {
  if (sums[0] <= 0.0 || sums[1] <= 0.0) return std::nullopt;
  return sums[0] / sums[1];
}

HarmonizerState::HarmonizerState(RhoMode mode, double lambda)
    : mode_(mode), lambda_(lambda) {}

HarmonizerState HarmonizerState::static_ratio() {
  return HarmonizerState(RhoMode::StaticRatio, 0.0);
}

HarmonizerState HarmonizerState::dynamic_smoothed(double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw ConfigError("smoothing lambda must lie in (0, 1), got " +
                      std::to_string(lambda));
  }
  return HarmonizerState(RhoMode::DynamicSmoothed, lambda);
}

std::optional<double> HarmonizerState::rho() {
  if (count_[0] == 0 || count_[1] == 0) return std::nullopt;
  double r = 0.0;
  if (mode_ == RhoMode::StaticRatio) {
    r = static_cast<double>(count_[0]) / static_cast<double>(count_[1]);
  } else {
    if (smoothed_freq_[0] <= 0.0 || smoothed_freq_[1] <= 0.0) {
      return std::nullopt;
    }
    r = smoothed_freq_[0] / smoothed_freq_[1];
  }
  rho_max_ = std::max(rho_max_, r);
  return r;
}

void HarmonizerState::update_rho_dynamic(int label) {
  const int hit = binary_index(label);
  for (int c = 0; c < 2; ++c) {
    smoothed_freq_[c] =
        lambda_ * smoothed_freq_[c] + (1.0 - lambda_) * (c == hit ? 1.0 : 0.0);
  }
}

double HarmonizerState::compute_alpha_binary(int label) {
  const std::optional<double> r = rho();
  const double s_neg = mass_.weighted[0];
  const double s_pos = mass_.weighted[1];
  const double total = s_neg + s_pos;
  if (!r || total <= 0.0) return 1.0;
  const double raw =
      label == kPositive ? 2.0 * *r * s_neg / total : 2.0 * s_pos / total;
  return std::clamp(raw, 1.0 / rho_max_, 2.0 * rho_max_);
}

void HarmonizerState::record_step(int label, double alpha, double grad_norm_sq,
                                  double effective_norm_sq) {
  const int c = binary_index(label);
  mass_.raw[c] += grad_norm_sq;
  mass_.weighted[c] += alpha * grad_norm_sq;
  mass_.effective[c] += effective_norm_sq;
  ++count_[c];
  if (mode_ == RhoMode::DynamicSmoothed) update_rho_dynamic(label);
}

std::optional<double> HarmonizerState::gi() const {
  return imbalance_ratio(mass_.effective);
}
std::optional<double> HarmonizerState::gi_weighted() const {
  return imbalance_ratio(mass_.weighted);
}
std::optional<double> HarmonizerState::gi_raw() const {
  return imbalance_ratio(mass_.raw);
}

double HarmonizerState::weighted_sum(int label) const {
  return mass_.weighted[binary_index(label)];
}
double HarmonizerState::effective_sum(int label) const {
  return mass_.effective[binary_index(label)];
}
double HarmonizerState::raw_sum(int label) const {
  return mass_.raw[binary_index(label)];
}
std::uint64_t HarmonizerState::count(int label) const {
  return count_[binary_index(label)];
}
double HarmonizerState::smoothed_freq(int label) const {
  return smoothed_freq_[binary_index(label)];
}

MulticlassHarmonizer::MulticlassHarmonizer(std::size_t classes)
    : weighted_(classes, 0.0), effective_(classes, 0.0), count_(classes, 0) {
  if (classes < 2) throw ConfigError("multiclass harmonizer needs C >= 2");
}

void MulticlassHarmonizer::refresh_rho_max() {
  const auto [lo, hi] = std::minmax_element(count_.begin(), count_.end());
  if (*lo == 0) return;
  rho_max_ = std::max(rho_max_, static_cast<double>(*hi) /
                                    static_cast<double>(*lo));
}

double MulticlassHarmonizer::compute_alpha(int label) {
  if (label < 0 || static_cast<std::size_t>(label) >= classes()) {
    throw InputError("class id " + std::to_string(label) + " out of range");
  }
  refresh_rho_max();
  const std::uint64_t n_label = count_[label];
  double total = 0.0;
  for (double s : weighted_) total += s;
  if (n_label == 0 || total <= 0.0) return 1.0;
  const double n_max =
      static_cast<double>(*std::max_element(count_.begin(), count_.end()));
  const double raw = (n_max / static_cast<double>(n_label)) *
                     (static_cast<double>(classes()) * weighted_[label] / total);
  return std::clamp(raw, 1.0 / rho_max_, 2.0 * rho_max_);
}

void MulticlassHarmonizer::record_step(int label, double alpha,
                                       double grad_norm_sq,
                                       double effective_norm_sq) {
  weighted_.at(label) += alpha * grad_norm_sq;
  effective_[label] += effective_norm_sq;
  ++count_[label];
}

}  // namespace hgd
