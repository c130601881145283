#include "hgd/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace hgd {

void MetricLedger::record_prediction(double score, int predicted, int truth) {
  const bool pos = truth > 0;
  if (predicted > 0) {
    ++(pos ? confusion_.tp : confusion_.fp);
  } else {
    ++(pos ? confusion_.fn : confusion_.tn);
  }
  scores_.push_back({score, truth});
}

void MetricLedger::record_gi(std::uint64_t t, std::optional<double> gi) {
  gi_trace_.push_back({t, gi});
}

void MetricLedger::record_loss(double loss) {
  losses_.push_back(loss);
  cumulative_loss_ += loss;
}

void MetricLedger::require_scored(std::uint64_t t) const {
  if (t >= evaluated()) {
    throw std::logic_error("instance " + std::to_string(t) +
                           " trained before being scored");
  }
}

namespace {

double ratio(std::uint64_t num, std::uint64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

double true_positive_rate(const Confusion& c) { return ratio(c.tp, c.tp + c.fn); }
double true_negative_rate(const Confusion& c) { return ratio(c.tn, c.tn + c.fp); }
double precision(const Confusion& c) { return ratio(c.tp, c.tp + c.fp); }

double gmeans(const Confusion& c) {
  return std::sqrt(true_positive_rate(c) * true_negative_rate(c));
}

double f1(const Confusion& c) {
  const std::uint64_t den = 2 * c.tp + c.fp + c.fn;
  return ratio(2 * c.tp, den);
}

std::optional<double> auc(std::span<const ScoreRecord> records) {
  std::vector<std::size_t> order(records.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return records[a].score < records[b].score;
  });
  double pos_rank_sum = 0.0;
  std::uint64_t n_pos = 0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j < order.size() && records[order[j]].score == records[order[i]].score) ++j;
    const double mid = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) {
      if (records[order[k]].label > 0) {
        pos_rank_sum += mid;
        ++n_pos;
      }
    }
    i = j;
  }
  const std::uint64_t n_neg = records.size() - n_pos;
  if (n_pos == 0 || n_neg == 0) return std::nullopt;
  const double np = static_cast<double>(n_pos);
  const double u = pos_rank_sum - np * (np + 1.0) / 2.0;
  return u / (np * static_cast<double>(n_neg));
}

double gii(std::span<const GiEntry> trace) {
  double sum = 0.0;
  for (const auto& e : trace) {
    if (e.gi) sum += (*e.gi - 1.0) * (*e.gi - 1.0);
  }
  return sum;
}

void MulticlassLedger::record_prediction(int predicted, int truth) {
  ++matrix_[static_cast<std::size_t>(truth) * classes_ +
            static_cast<std::size_t>(predicted)];
  ++evaluated_;
}

void MulticlassLedger::record_loss(double loss) {
  losses_.push_back(loss);
  cumulative_loss_ += loss;
}

void MulticlassLedger::require_scored(std::uint64_t t) const {
  if (t >= evaluated_) {
    throw std::logic_error("instance " + std::to_string(t) +
                           " trained before being scored");
  }
}

double MulticlassLedger::accuracy() const {
  std::uint64_t hit = 0;
  for (std::size_t c = 0; c < classes_; ++c) hit += matrix_[c * classes_ + c];
  return ratio(hit, evaluated_);
}

std::vector<double> MulticlassLedger::per_class_recall() const {
  std::vector<double> out(classes_);
  for (std::size_t c = 0; c < classes_; ++c) {
    std::uint64_t row = 0;
    for (std::size_t k = 0; k < classes_; ++k) row += matrix_[c * classes_ + k];
    out[c] = ratio(matrix_[c * classes_ + c], row);
  }
  return out;
}

double MulticlassLedger::gmeans() const {
  if (classes_ == 0) return 0.0;
  double log_sum = 0.0;
  for (double r : per_class_recall()) {
    if (r <= 0.0) return 0.0;
    log_sum += std::log(r);
  }
  return std::exp(log_sum / static_cast<double>(classes_));
}

double MulticlassLedger::macro_f1() const {
  if (classes_ == 0) return 0.0;
  double sum = 0.0;
  for (std::size_t c = 0; c < classes_; ++c) {
    std::uint64_t row = 0, col = 0;
    for (std::size_t k = 0; k < classes_; ++k) {
      row += matrix_[c * classes_ + k];
      col += matrix_[k * classes_ + c];
    }
    sum += ratio(2 * matrix_[c * classes_ + c], row + col);
  }
  return sum / static_cast<double>(classes_);
}

}  // namespace hgd
