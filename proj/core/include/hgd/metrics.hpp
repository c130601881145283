#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace hgd {

struct Confusion {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fn = 0;

  std::uint64_t total() const noexcept { return tp + fp + tn + fn; }
  bool operator==(const Confusion&) const = default;
};

struct ScoreRecord {
  double score = 0.0;
  int label = 0;  // +1 / -1
};

struct GiEntry {
  std::uint64_t t = 0;
  std::optional<double> gi;
};

// Prequential bookkeeping for one binary run. Instance t must be recorded
// with record_prediction before require_scored(t) permits training on it.
class MetricLedger {
 public:
  void record_prediction(double score, int predicted, int truth);
  void record_gi(std::uint64_t t, std::optional<double> gi);
  void record_loss(double loss);

  // Throws std::logic_error unless instance t (0-based) has been scored.
  void require_scored(std::uint64_t t) const;

  const Confusion& confusion() const noexcept { return confusion_; }
  std::span<const ScoreRecord> scores() const noexcept { return scores_; }
  std::span<const GiEntry> gi_trace() const noexcept { return gi_trace_; }
  std::span<const double> losses() const noexcept { return losses_; }
  double cumulative_loss() const noexcept { return cumulative_loss_; }
  std::uint64_t evaluated() const noexcept { return confusion_.total(); }

 private:
  Confusion confusion_;
  std::vector<ScoreRecord> scores_;
  std::vector<GiEntry> gi_trace_;
  std::vector<double> losses_;
  double cumulative_loss_ = 0.0;
};

// Rates with a zero denominator are 0.
double true_positive_rate(const Confusion& c);
double true_negative_rate(const Confusion& c);
double precision(const Confusion& c);

double gmeans(const Confusion& c);
double f1(const Confusion& c);

// Mann-Whitney statistic with ties counted as one half; nullopt unless
// both classes are present.
std::optional<double> auc(std::span<const ScoreRecord> records);

// Sum of (GI_t - 1)^2 over defined entries.
double gii(std::span<const GiEntry> trace);

inline double gmeans(const MetricLedger& l) { return gmeans(l.confusion()); }
inline double f1(const MetricLedger& l) { return f1(l.confusion()); }
inline std::optional<double> auc(const MetricLedger& l) {
  return auc(l.scores());
}
inline double gii(const MetricLedger& l) { return gii(l.gi_trace()); }

// C x C confusion matrix (rows = truth) for softmax runs.
class MulticlassLedger {
 public:
  explicit MulticlassLedger(std::size_t classes)
      : classes_(classes), matrix_(classes * classes, 0) {}

  void record_prediction(int predicted, int truth);
  void record_loss(double loss);
  void require_scored(std::uint64_t t) const;

  std::size_t classes() const noexcept { return classes_; }
  std::uint64_t at(int truth, int predicted) const {
    return matrix_[static_cast<std::size_t>(truth) * classes_ + predicted];
  }
  std::uint64_t evaluated() const noexcept { return evaluated_; }
  double accuracy() const;
  std::vector<double> per_class_recall() const;
  // Geometric mean of per-class recalls.
  double gmeans() const;
  double macro_f1() const;
  double cumulative_loss() const noexcept { return cumulative_loss_; }
  std::span<const double> losses() const noexcept { return losses_; }

 private:
  std::size_t classes_;
  std::vector<std::uint64_t> matrix_;
  std::uint64_t evaluated_ = 0;
  std::vector<double> losses_;
  double cumulative_loss_ = 0.0;
};

}  // namespace hgd
