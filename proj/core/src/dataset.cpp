#include "hgd/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>

#include "hgd/error.hpp"
#include "hgd/rng.hpp"

namespace hgd {

Dataset::Dataset(std::string name, std::vector<LabeledInstance> instances)
    : name_(std::move(name)), instances_(std::move(instances)) {
  if (instances_.empty()) {
    throw EmptyDataset("dataset '" + name_ + "' has no instances");
  }
  dim_ = instances_.front().features.size();
  for (std::size_t i = 0; i < instances_.size(); ++i) {
    const auto& inst = instances_[i];
    if (inst.features.size() != dim_) {
      throw InputError("instance " + std::to_string(i) + " has dimension " +
                       std::to_string(inst.features.size()) + ", expected " +
                       std::to_string(dim_));
    }
    validate_features(inst.features);
    ++class_counts_[inst.label];
  }
  if (class_counts_.size() < 2) {
    throw InputError("dataset '" + name_ + "' needs at least two classes");
  }
}

std::size_t Dataset::count(int label) const {
  auto it = class_counts_.find(label);
  return it == class_counts_.end() ? 0 : it->second;
}

bool Dataset::is_binary() const {
  for (const auto& [label, n] : class_counts_) {
    if (!is_binary_label(label)) return false;
  }
  return true;
}

double Dataset::imbalance_ratio() const {
  const auto pos = count(kPositive);
  if (pos == 0) return std::numeric_limits<double>::infinity();
  return static_cast<double>(count(kNegative)) / static_cast<double>(pos);
}

Stream::Stream(std::shared_ptr<const Dataset> data,
               std::vector<std::size_t> order)
    : data_(std::move(data)), order_(std::move(order)) {
  for (std::size_t idx : order_) {
    if (idx >= data_->size()) throw InputError("stream index out of range");
  }
}

Stream as_stream(std::shared_ptr<const Dataset> data) {
  std::vector<std::size_t> order(data->size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  return Stream(std::move(data), std::move(order));
}

NormalizeMethod parse_normalize_method(std::string_view name) {
  if (name == "none") return NormalizeMethod::None;
  if (name == "minmax") return NormalizeMethod::MinMax;
  if (name == "zscore") return NormalizeMethod::ZScore;
  throw ConfigError("unknown normalization '" + std::string(name) + "'");
}

std::string_view to_string(NormalizeMethod method) {
  switch (method) {
    case NormalizeMethod::None:
      return "none";
    case NormalizeMethod::MinMax:
      return "minmax";
    case NormalizeMethod::ZScore:
      return "zscore";
  }
  return "?";
}

Dataset normalize(const Dataset& data, NormalizeMethod method) {
  std::vector<LabeledInstance> out = data.instances();
  if (method == NormalizeMethod::None) return Dataset(data.name(), out);

  const std::size_t d = data.dim();
  const double n = static_cast<double>(data.size());
  for (std::size_t j = 0; j < d; ++j) {
    double shift = 0.0;
    double scale = 0.0;  // 0 marks a constant feature
    if (method == NormalizeMethod::MinMax) {
      double lo = out[0].features[j];
      double hi = lo;
      for (const auto& inst : out) {
        lo = std::min(lo, inst.features[j]);
        hi = std::max(hi, inst.features[j]);
      }
      shift = lo;
      if (hi > lo) scale = 1.0 / (hi - lo);
    } else {
      double mean = 0.0;
      for (const auto& inst : out) mean += inst.features[j];
      mean /= n;
      double var = 0.0;
      for (const auto& inst : out) {
        const double c = inst.features[j] - mean;
        var += c * c;
      }
      var /= n;
      shift = mean;
      if (var > 0.0) scale = 1.0 / std::sqrt(var);
    }
    for (auto& inst : out) {
      double& v = inst.features[j];
      v = scale == 0.0 ? 0.0 : (v - shift) * scale;
    }
  }
  Dataset result(data.name(), std::move(out));
  for (const auto& w : data.warnings()) result.add_warning(w);
  return result;
}

namespace {

void fisher_yates(std::vector<std::size_t>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    std::swap(v[i - 1], v[pick(rng)]);
  }
}

}  // namespace

Stream shuffle(std::shared_ptr<const Dataset> data, std::uint64_t seed) {
  std::vector<std::size_t> order(data->size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  fisher_yates(order, rng);
  return Stream(std::move(data), std::move(order));
}

Dataset resample_to_ir(const Dataset& data, double target_ir,
                       std::uint64_t seed) {
  if (!data.is_binary()) throw ConfigError("resample_to_ir needs binary data");
  if (!(target_ir >= 1.0)) {
    throw ConfigError("target IR must be >= 1, got " +
                      std::to_string(target_ir));
  }
  std::vector<std::size_t> neg, pos;
  for (std::size_t i = 0; i < data.size(); ++i) {
    (data[i].label == kPositive ? pos : neg).push_back(i);
  }
  const double n_neg = static_cast<double>(neg.size());
  const double n_pos = static_cast<double>(pos.size());

  std::vector<std::size_t>* sub = nullptr;
  std::size_t keep = 0;
  if (n_neg / n_pos >= target_ir) {
    sub = &neg;
    keep = static_cast<std::size_t>(std::llround(target_ir * n_pos));
  } else {
    sub = &pos;
    keep = static_cast<std::size_t>(std::llround(n_neg / target_ir));
    if (keep == 0) {
      std::ostringstream msg;
      msg << "target IR " << target_ir << " unreachable; max achievable IR is "
          << n_neg;
      throw ConfigError(msg.str());
    }
  }

  Rng rng(seed);
  fisher_yates(*sub, rng);
  sub->resize(keep);
  std::vector<std::size_t> kept = neg;
  kept.insert(kept.end(), pos.begin(), pos.end());
  std::sort(kept.begin(), kept.end());

  std::vector<LabeledInstance> out;
  out.reserve(kept.size());
  for (std::size_t i : kept) out.push_back(data[i]);
  std::ostringstream name;
  name << data.name() << "@ir" << target_ir;
  return Dataset(name.str(), std::move(out));
}

}  // namespace hgd
