#include "hgd/normalize_table.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hgd/error.hpp"

namespace hgd {

std::vector<double> rank_row(std::span<const double> raw, MetricSense sense) {
  const std::size_t n = raw.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  // NaN entries rank last.
  auto better = [&](std::size_t a, std::size_t b) {
    const double x = raw[a], y = raw[b];
    if (std::isnan(x)) return false;
    if (std::isnan(y)) return true;
    return sense == MetricSense::HigherIsBetter ? x > y : x < y;
  };
  std::stable_sort(order.begin(), order.end(), better);
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && !better(order[i], order[j]) && !better(order[j], order[i])) ++j;
    const double mid = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = mid;
    i = j;
  }
  return ranks;
}

NormalizedRow normalize_row(std::span<const double> raw, MetricSense sense) {
  NormalizedRow row;
  row.values.assign(raw.size(), 0.0);
  row.ranks = rank_row(raw, sense);
  const bool all_zero = std::all_of(raw.begin(), raw.end(), [](double v) {
    return v == 0.0 || std::isnan(v);
  });
  if (all_zero) {
    for (std::size_t i = 0; i < raw.size(); ++i) {
      row.values[i] = std::isnan(raw[i]) ? raw[i] : 0.0;
    }
    if (std::none_of(raw.begin(), raw.end(), [](double v) { return std::isnan(v); })) {
      row.ranks.assign(raw.size(), 0.5 * static_cast<double>(raw.size() + 1));
    }
    return row;
  }
  double best = sense == MetricSense::HigherIsBetter ? -INFINITY : INFINITY;
  for (double v : raw) {
    if (std::isnan(v)) continue;
    best = sense == MetricSense::HigherIsBetter ? std::max(best, v) : std::min(best, v);
  }
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const double v = raw[i];
    if (std::isnan(v)) {
      row.values[i] = v;
    } else if (sense == MetricSense::HigherIsBetter) {
      row.values[i] = best == 0.0 ? 0.0 : v / best;
    } else if (v == 0.0) {
      row.values[i] = 1.0;
    } else {
      row.values[i] = best / v;
    }
  }
  return row;
}

NormalizedTable normalize_across_methods(const MetricTable& table,
                                         MetricSense sense) {
  NormalizedTable out;
  out.normalized.rows = out.ranks.rows = table.rows;
  out.normalized.columns = out.ranks.columns = table.columns;
  const std::size_t cols = table.columns.size();
  std::vector<double> norm_sum(cols, 0.0), rank_sum(cols, 0.0);
  std::vector<std::size_t> norm_n(cols, 0);
  for (const auto& raw : table.values) {
    if (raw.size() != cols) throw InputError("metric table row has wrong width");
    NormalizedRow row = normalize_row(raw, sense);
    for (std::size_t c = 0; c < cols; ++c) {
      if (!std::isnan(row.values[c])) {
        norm_sum[c] += row.values[c];
        ++norm_n[c];
      }
      rank_sum[c] += row.ranks[c];
    }
    out.normalized.values.push_back(std::move(row.values));
    out.ranks.values.push_back(std::move(row.ranks));
  }
  const double rows = static_cast<double>(table.values.size());
  out.mean_normalized.resize(cols);
  out.mean_rank.resize(cols);
  for (std::size_t c = 0; c < cols; ++c) {
    out.mean_normalized[c] = norm_n[c] ? norm_sum[c] / static_cast<double>(norm_n[c]) : NAN;
    out.mean_rank[c] = rows > 0 ? rank_sum[c] / rows : NAN;
  }
  return out;
}

MetricSense metric_sense(std::string_view metric) {
  if (metric == "gii" || metric == "gii_weighted" || metric == "gii_raw" ||
      metric == "cumulative_loss" || metric == "regret" ||
      metric == "time" || metric == "wall_time_s") {
    return MetricSense::LowerIsBetter;
  }
  return MetricSense::HigherIsBetter;
}

}  // namespace hgd
