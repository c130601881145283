#pragma once

#include <span>
#include <vector>

namespace hgd {

// Binary label convention: +1 is the minority (positive) class, -1 the
// majority (negative) class. Multiclass streams use ids 0..C-1.
inline constexpr int kPositive = +1;
inline constexpr int kNegative = -1;

struct LabeledInstance {
  std::vector<double> features;
  int label = kNegative;
};

// Throws InputError if any entry is NaN or infinite.
void validate_features(std::span<const double> features);

inline bool is_binary_label(int label) {
  return label == kPositive || label == kNegative;
}

// Index into two-slot per-class arrays: negative -> 0, positive -> 1.
inline constexpr int binary_index(int label) { return label > 0 ? 1 : 0; }

double squared_norm(std::span<const double> x);
double dot(std::span<const double> a, std::span<const double> b);

}  // namespace hgd
