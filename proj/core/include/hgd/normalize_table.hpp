#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hgd {

enum class MetricSense { HigherIsBetter, LowerIsBetter };

struct NormalizedRow {
  std::vector<double> values;  // best entry = 1
  std::vector<double> ranks;   // 1 = best, ties averaged
};

// Higher-is-better rows are divided by the row maximum; lower-is-better rows
// map v to min/v. An all-zero row normalizes to zeros with every rank tied.
NormalizedRow normalize_row(std::span<const double> raw, MetricSense sense);

// Average ranks (1 = best) of raw values; equal values share their mean rank.
std::vector<double> rank_row(std::span<const double> raw, MetricSense sense);

struct MetricTable {
  std::vector<std::string> rows;     // datasets
  std::vector<std::string> columns;  // methods
  std::vector<std::vector<double>> values;
};

struct NormalizedTable {
  MetricTable normalized;
  MetricTable ranks;
  std::vector<double> mean_normalized;  // per column, over rows
  std::vector<double> mean_rank;
};

NormalizedTable normalize_across_methods(const MetricTable& table,
                                         MetricSense sense);

MetricSense metric_sense(std::string_view metric);

}  // namespace hgd
