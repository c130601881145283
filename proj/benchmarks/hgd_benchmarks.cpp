#include <benchmark/benchmark.h>

#include <memory>
#include <random>
#include <vector>

#include "hgd/metrics.hpp"
#include "hgd/methods.hpp"
#include "hgd/oracle.hpp"
#include "hgd/prequential.hpp"
#include "hgd/schedule.hpp"

using namespace hgd;

namespace {

std::shared_ptr<const Dataset> gaussian(std::size_t d, std::size_t n, double ir) {
  return std::make_shared<const Dataset>(
      gen_gaussian_mixture(binary_gaussian_spec(d, n, ir, 2.0, 1.0, 0)));
}

void BM_MethodStep(benchmark::State& state, const char* id) {
  const std::size_t d = static_cast<std::size_t>(state.range(0));
  const auto data = gaussian(d, 20000, 19.0);
  auto method = make_binary_method(default_method_spec(id),
                                   BinaryLearner(LinearModel(d), LossKind::Hinge), 1);
  std::size_t i = 0;
  for (auto _ : state) {
    const LabeledInstance& inst = (*data)[i];
    benchmark::DoNotOptimize(method->learn(inst, method->score(inst.features), 0.3));
    if (++i == data->size()) i = 0;
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK_CAPTURE(BM_MethodStep, hgd, "hgd")->Arg(10)->Arg(50)->Arg(200);
BENCHMARK_CAPTURE(BM_MethodStep, ogd, "ogd")->Arg(50);
BENCHMARK_CAPTURE(BM_MethodStep, oor, "oor")->Arg(50);

void BM_KernelStep(benchmark::State& state) {
  const auto data = gaussian(10, static_cast<std::size_t>(state.range(0)), 9.0);
  for (auto _ : state) {
    HgdMethod m(BinaryLearner(KernelModel(10), LossKind::Hinge), HarmonizerState::static_ratio());
    for (const auto& inst : data->instances()) m.learn(inst, m.score(inst.features), 0.3);
    benchmark::DoNotOptimize(m.state().gi());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_KernelStep)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_Prequential(benchmark::State& state) {
  const auto data = gaussian(50, static_cast<std::size_t>(state.range(0)), 19.0);
  const Stream stream = as_stream(data);
  PrequentialOptions opt;
  opt.checkpoints = even_checkpoints(stream.size(), 20);
  for (auto _ : state) {
    HgdMethod m(BinaryLearner(LinearModel(50), LossKind::Hinge), HarmonizerState::static_ratio());
    benchmark::DoNotOptimize(run_prequential(m, stream, opt).gii());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Prequential)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_Auc(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<ScoreRecord> records(static_cast<std::size_t>(state.range(0)));
  for (auto& r : records) {
    r.label = n(rng) > 1.0 ? 1 : -1;
    r.score = n(rng) + 0.5 * r.label;
  }
  for (auto _ : state) benchmark::DoNotOptimize(auc(records));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Auc)->Arg(1000)->Arg(100000);

void BM_Oracle(benchmark::State& state) {
  const auto data = gaussian(20, static_cast<std::size_t>(state.range(0)), 9.0);
  const Stream stream = as_stream(data);
  for (auto _ : state) {
    benchmark::DoNotOptimize(batch_oracle(stream, LossKind::Hinge, LearnerFamily::Linear).objective);
  }
}
BENCHMARK(BM_Oracle)->Arg(5000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
