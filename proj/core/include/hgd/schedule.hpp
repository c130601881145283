#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hgd/dataset.hpp"

namespace hgd {

struct ConstantIr {
  double ir = 1.0;
  bool operator==(const ConstantIr&) const = default;
};
struct RampIr {
  double start = 1.0;
  double end = 1.0;
  bool operator==(const RampIr&) const = default;
};

struct IrSegment {
  std::size_t end_index = 0;  // 1-based, inclusive
  std::variant<ConstantIr, RampIr> ir;
  bool operator==(const IrSegment&) const = default;
};

// Imbalance ratio over emission positions. Segment k covers positions
// (end_{k-1}, end_k]; end indices strictly increase and every IR is >= 1.
class IrSchedule {
 public:
  explicit IrSchedule(std::vector<IrSegment> segments);

  // "1@6000,2.5@11000,4@15000" or "ramp:4..2@15000", mixable.
  static IrSchedule parse(std::string_view text);

  const std::vector<IrSegment>& segments() const noexcept { return segments_; }
  std::size_t length() const noexcept {
    return segments_.empty() ? 0 : segments_.back().end_index;
  }
  // Target IR at 1-based emission position t (ramps interpolate linearly).
  double ir_at(std::size_t t) const;
  std::size_t segment_of(std::size_t t) const;

  std::string to_string() const;
  bool operator==(const IrSchedule&) const = default;

 private:
  std::vector<IrSegment> segments_;
};

// Emits schedule.length() instances; position t is negative with
// probability ir/(1+ir). Each class is drawn without replacement in a
// seeded random order. Throws InfeasibleSchedule when a class runs out.
Stream schedule_stream(std::shared_ptr<const Dataset> data,
                       const IrSchedule& schedule, std::uint64_t seed);

struct GaussianClass {
  int label = 0;
  std::vector<double> mean;
  double sigma = 1.0;  // isotropic standard deviation
  double prior = 0.5;
};

struct GaussianMixtureSpec {
  std::string name = "gaussian";
  std::size_t dim = 2;
  std::vector<GaussianClass> classes;
  std::size_t n = 1000;
  std::uint64_t seed = 0;
};

// Two classes with means +/- separation * (1,...,1)/sqrt(d) and priors
// from the imbalance ratio (pos prior 1/(1+ir)).
GaussianMixtureSpec binary_gaussian_spec(std::size_t dim, std::size_t n,
                                         double ir, double sigma,
                                         double separation,
                                         std::uint64_t seed);

// C classes with means separation * e_c (requires dim >= C).
GaussianMixtureSpec multiclass_gaussian_spec(std::size_t dim, std::size_t n,
                                             std::vector<double> priors,
                                             double sigma, double separation,
                                             std::uint64_t seed);

// "d=10,n=10000,ir=19,sigma=0.5,sep=1,seed=0"; "priors=0.8/0.1/0.1" selects
// the multiclass layout.
GaussianMixtureSpec parse_synthetic_spec(std::string_view text);

// Exact per-class counts by largest-remainder rounding of priors * n;
// labels are shuffled then features drawn i.i.d. per class.
Dataset gen_gaussian_mixture(const GaussianMixtureSpec& spec);

// Largest-remainder apportionment of n over the given weights.
std::vector<std::size_t> apportion(std::size_t n,
                                   const std::vector<double>& weights);

}  // namespace hgd
