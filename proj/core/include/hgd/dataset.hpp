#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hgd/instance.hpp"

namespace hgd {

// Immutable collection of instances with a fixed feature dimension and at
// least two classes. Construction validates both.
class Dataset {
 public:
  Dataset(std::string name, std::vector<LabeledInstance> instances);

  const std::string& name() const noexcept { return name_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return instances_.size(); }
  const LabeledInstance& operator[](std::size_t i) const {
    return instances_[i];
  }
  const std::vector<LabeledInstance>& instances() const noexcept {
    return instances_;
  }

  const std::map<int, std::size_t>& class_counts() const noexcept {
    return class_counts_;
  }
  std::size_t count(int label) const;
  std::size_t num_classes() const noexcept { return class_counts_.size(); }
  // True when every label is +1 or -1.
  bool is_binary() const;
  // N_neg / N_pos for binary data.
  double imbalance_ratio() const;

  const std::vector<std::string>& warnings() const noexcept {
    return warnings_;
  }
  void add_warning(std::string w) { warnings_.push_back(std::move(w)); }

 private:
  std::string name_;
  std::size_t dim_ = 0;
  std::vector<LabeledInstance> instances_;
  std::map<int, std::size_t> class_counts_;
  std::vector<std::string> warnings_;
};

// An ordered view over a shared dataset. Positions index the emission
// order; every entry refers to an existing instance.
class Stream {
 public:
  Stream(std::shared_ptr<const Dataset> data, std::vector<std::size_t> order);

  std::size_t size() const noexcept { return order_.size(); }
  bool empty() const noexcept { return order_.empty(); }
  const LabeledInstance& operator[](std::size_t i) const {
    return (*data_)[order_[i]];
  }
  std::size_t source_index(std::size_t i) const { return order_[i]; }
  const std::vector<std::size_t>& order() const noexcept { return order_; }
  const Dataset& dataset() const noexcept { return *data_; }
  std::size_t dim() const noexcept { return data_->dim(); }

 private:
  std::shared_ptr<const Dataset> data_;
  std::vector<std::size_t> order_;
};

// Identity order over the whole dataset.
Stream as_stream(std::shared_ptr<const Dataset> data);

struct CsvOptions {
  std::size_t label_column = 0;
  // Binary mode maps this value to +1 and the other value to -1. When
  // unset, labels must be non-negative integers (multiclass ids).
  std::optional<std::string> positive_label;
  bool header = false;
  char delimiter = ',';
};

Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options);

struct LibsvmOptions {
  // Declared dimension; the densified width is max(dimension, max index).
  std::optional<std::size_t> dimension;
};

Dataset load_libsvm(const std::filesystem::path& path,
                    const LibsvmOptions& options = {});

// Label in column 0, features after, full round-trip precision.
void write_csv(const Dataset& data, const std::filesystem::path& path,
               bool header = true);
void write_libsvm(const Dataset& data, const std::filesystem::path& path);

enum class NormalizeMethod { None, MinMax, ZScore };

NormalizeMethod parse_normalize_method(std::string_view name);
std::string_view to_string(NormalizeMethod method);

// Per-feature affine transform; constant features map to 0.
Dataset normalize(const Dataset& data, NormalizeMethod method);

// Fisher-Yates permutation driven by the seeded generator.
Stream shuffle(std::shared_ptr<const Dataset> data, std::uint64_t seed);

// Keeps every instance of one class and subsamples the other without
// replacement so that N_neg / N_pos rounds to target_ir. Relative order of
// kept instances is preserved. Throws ConfigError for unreachable targets.
Dataset resample_to_ir(const Dataset& data, double target_ir,
                       std::uint64_t seed);

}  // namespace hgd
