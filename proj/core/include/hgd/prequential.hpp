#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "hgd/dataset.hpp"
#include "hgd/methods.hpp"
#include "hgd/metrics.hpp"

namespace hgd {

struct EtaPolicy {
  enum class Kind { Constant, InverseSqrt };
  Kind kind = Kind::Constant;
  double eta0 = 0.3;  // constant value, or scale of 1/sqrt(t)

  static EtaPolicy constant(double eta) { return {Kind::Constant, eta}; }
  static EtaPolicy inverse_sqrt(double scale = 1.0) {
    return {Kind::InverseSqrt, scale};
  }
  // t is 1-based.
  double at(std::uint64_t t) const;
  bool operator==(const EtaPolicy&) const = default;
};

// count positions spread evenly over [1, n], always including n.
std::vector<std::uint64_t> even_checkpoints(std::uint64_t n,
                                            std::size_t count);

struct PrequentialOptions {
  EtaPolicy eta;
  std::vector<std::uint64_t> checkpoints;  // 1-based, ascending
  bool keep_steps = false;
};

struct Checkpoint {
  std::uint64_t t = 0;
  double gmeans = 0.0;
  double f1 = 0.0;
  std::optional<double> auc;
  std::optional<double> gi;
  std::optional<double> gi_weighted;
  std::optional<double> gi_raw;
  double cumulative_loss = 0.0;
  double tpr = 0.0;
  double tnr = 0.0;
};

struct BinaryRun {
  MetricLedger ledger;
  std::vector<GiEntry> gi_weighted_trace;
  std::vector<GiEntry> gi_raw_trace;
  std::vector<Checkpoint> checkpoints;
  std::vector<StepTrace> steps;

  double gii() const { return hgd::gii(ledger.gi_trace()); }
  double gii_weighted() const { return hgd::gii(gi_weighted_trace); }
  double gii_raw() const { return hgd::gii(gi_raw_trace); }
};

// Test-then-train over the stream: score, record, then learn. Throws
// EmptyStream for an empty stream.
BinaryRun run_prequential(BinaryMethod& method, const Stream& stream,
                          const PrequentialOptions& options);

struct MulticlassCheckpoint {
  std::uint64_t t = 0;
  double accuracy = 0.0;
  double gmeans = 0.0;
  double cumulative_loss = 0.0;
};

struct MulticlassRun {
  MulticlassLedger ledger{0};
  std::vector<MulticlassCheckpoint> checkpoints;
  std::vector<MulticlassStepTrace> steps;
};

MulticlassRun run_prequential(MulticlassMethod& method, const Stream& stream,
                              const PrequentialOptions& options);

}  // namespace hgd
