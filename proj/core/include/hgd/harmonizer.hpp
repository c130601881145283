#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace hgd {

enum class RhoMode { StaticRatio, DynamicSmoothed };

// Per-class gradient-mass ledgers shared by every binary method. Index 0 is
// the negative class, 1 the positive class.
struct GradientMass {
  std::array<double, 2> raw{};        // sum G_i
  std::array<double, 2> weighted{};   // sum alpha_i * G_i
  std::array<double, 2> effective{};  // sum |eta_i alpha_i grad L_i|^2
};

// Ratio neg/pos of one ledger; nullopt while either side is zero.
std::optional<double> imbalance_ratio(const std::array<double, 2>& sums);

// Accumulators behind the harmonized weight. Everything read by
// compute_alpha_binary refers to instances strictly before the current one.
class HarmonizerState {
 public:
  static HarmonizerState static_ratio();
  // lambda in (0, 1); frequencies start at (0.5, 0.5).
  static HarmonizerState dynamic_smoothed(double lambda);

  RhoMode mode() const noexcept { return mode_; }
  double lambda() const noexcept { return lambda_; }

  // Negative-to-positive ratio: exact counts (static) or smoothed
  // frequencies (dynamic). nullopt while a class is unseen. Raises rho_max.
  std::optional<double> rho();

  // f_c <- lambda * f_c + (1 - lambda) * [label == c].
  void update_rho_dynamic(int label);

  // Binary harmonization weight, clamped to [1/rho_max, 2*rho_max].
  // Returns 1 during warm-up (a class unseen or zero total mass).
  double compute_alpha_binary(int label);

  // S_label += alpha*G, N_label += 1, effective_label += effective_norm_sq.
  // Dynamic mode also advances the smoothed frequencies.
  void record_step(int label, double alpha, double grad_norm_sq,
                   double effective_norm_sq);

  // GI on the effective-step ledger; nullopt while undefined.
  std::optional<double> gi() const;
  std::optional<double> gi_weighted() const;
  std::optional<double> gi_raw() const;

  double weighted_sum(int label) const;
  double effective_sum(int label) const;
  double raw_sum(int label) const;
  std::uint64_t count(int label) const;
  double smoothed_freq(int label) const;
  double rho_max() const noexcept { return rho_max_; }
  const GradientMass& mass() const noexcept { return mass_; }

 private:
  HarmonizerState(RhoMode mode, double lambda);

  RhoMode mode_;
  double lambda_;
  GradientMass mass_;
  std::array<std::uint64_t, 2> count_{};
  std::array<double, 2> smoothed_freq_{0.5, 0.5};
  double rho_max_ = 1.0;
};

// Multiclass weight over C classes:
//   alpha = (max_c N_c / N_y) * (C * S_y / sum_c S_c), clamped to
//   [1/rho_max, 2*rho_max] with rho_max the running max of max_c N_c / min_c N_c.
class MulticlassHarmonizer {
 public:
  explicit MulticlassHarmonizer(std::size_t classes);

  std::size_t classes() const noexcept { return weighted_.size(); }

  double compute_alpha(int label);
  void record_step(int label, double alpha, double grad_norm_sq,
                   double effective_norm_sq);

  double weighted_sum(int label) const { return weighted_.at(label); }
  double effective_sum(int label) const { return effective_.at(label); }
  std::uint64_t count(int label) const { return count_.at(label); }
  double rho_max() const noexcept { return rho_max_; }
  std::span<const double> weighted_sums() const noexcept { return weighted_; }

 private:
  void refresh_rho_max();

  std::vector<double> weighted_;
  std::vector<double> effective_;
  std::vector<std::uint64_t> count_;
  double rho_max_ = 1.0;
};

}  // namespace hgd
