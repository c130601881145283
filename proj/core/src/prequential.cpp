#include "hgd/prequential.hpp"

#include <algorithm>
#include <cmath>

#include "hgd/error.hpp"

namespace hgd {

double EtaPolicy::at(std::uint64_t t) const {
  if (kind == Kind::Constant) return eta0;
  return eta0 / std::sqrt(static_cast<double>(std::max<std::uint64_t>(t, 1)));
}

std::vector<std::uint64_t> even_checkpoints(std::uint64_t n,
                                            std::size_t count) {
  std::vector<std::uint64_t> out;
  if (n == 0) return out;
  if (count == 0) count = 1;
  for (std::size_t k = 1; k <= count; ++k) {
    const auto t = static_cast<std::uint64_t>(std::llround(
        static_cast<double>(k) * static_cast<double>(n) / static_cast<double>(count)));
    const std::uint64_t c = std::clamp<std::uint64_t>(t, 1, n);
    if (out.empty() || out.back() < c) out.push_back(c);
  }
  if (out.back() != n) out.push_back(n);
  return out;
}

BinaryRun run_prequential(BinaryMethod& method, const Stream& stream,
                          const PrequentialOptions& options) {
  if (stream.empty()) throw EmptyStream("stream has no instances");
  BinaryRun run;
  run.gi_weighted_trace.reserve(stream.size());
  run.gi_raw_trace.reserve(stream.size());
  if (options.keep_steps) run.steps.reserve(stream.size());
  auto next_cp = options.checkpoints.begin();

  for (std::size_t i = 0; i < stream.size(); ++i) {
    const LabeledInstance& inst = stream[i];
    const std::uint64_t t = i + 1;
    const double s = method.score(inst.features);
    run.ledger.record_prediction(s, predicted_label(s), inst.label);
    run.ledger.require_scored(i);

    const StepTrace step = method.learn(inst, s, options.eta.at(t));
    run.ledger.record_loss(step.loss);
    const HarmonizerState& st = method.state();
    run.ledger.record_gi(t, st.gi());
    run.gi_weighted_trace.push_back({t, st.gi_weighted()});
    run.gi_raw_trace.push_back({t, st.gi_raw()});
    if (options.keep_steps) run.steps.push_back(step);

    while (next_cp != options.checkpoints.end() && *next_cp < t) ++next_cp;
    if (next_cp != options.checkpoints.end() && *next_cp == t) {
      const Confusion& c = run.ledger.confusion();
      Checkpoint cp;
      cp.t = t;
      cp.gmeans = gmeans(c);
      cp.f1 = f1(c);
      cp.auc = auc(run.ledger.scores());
      cp.gi = st.gi();
      cp.gi_weighted = st.gi_weighted();
      cp.gi_raw = st.gi_raw();
      cp.cumulative_loss = run.ledger.cumulative_loss();
      cp.tpr = true_positive_rate(c);
      cp.tnr = true_negative_rate(c);
      run.checkpoints.push_back(cp);
      ++next_cp;
    }
  }
  return run;
}

MulticlassRun run_prequential(MulticlassMethod& method, const Stream& stream,
                              const PrequentialOptions& options) {
  if (stream.empty()) throw EmptyStream("stream has no instances");
  MulticlassRun run{MulticlassLedger(method.learner().classes()), {}, {}};
  auto next_cp = options.checkpoints.begin();
  for (std::size_t i = 0; i < stream.size(); ++i) {
    const LabeledInstance& inst = stream[i];
    const std::uint64_t t = i + 1;
    if (inst.label < 0 ||
        static_cast<std::size_t>(inst.label) >= method.learner().classes()) {
      throw InputError("class id out of range for the softmax learner");
    }
    const std::vector<double> s = method.scores(inst.features);
    run.ledger.record_prediction(predicted_class(s), inst.label);
    run.ledger.require_scored(i);

    const MulticlassStepTrace step = method.learn(inst, options.eta.at(t));
    run.ledger.record_loss(step.loss);
    if (options.keep_steps) run.steps.push_back(step);

    while (next_cp != options.checkpoints.end() && *next_cp < t) ++next_cp;
    if (next_cp != options.checkpoints.end() && *next_cp == t) {
      run.checkpoints.push_back({t, run.ledger.accuracy(), run.ledger.gmeans(),
                                 run.ledger.cumulative_loss()});
      ++next_cp;
    }
  }
  return run;
}

}  // namespace hgd
