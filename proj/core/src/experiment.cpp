#include "hgd/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "hgd/error.hpp"
#include "format.hpp"
#include "hgd/rng.hpp"

namespace hgd {
namespace {

struct BuiltDataset {
  std::shared_ptr<const Dataset> data;
  std::string error;
};

struct StreamKey {
  std::size_t dataset;
  std::size_t seed;
};

std::uint64_t stream_seed(const ExperimentPlan& plan, const DatasetSpec& spec,
                          std::uint64_t seed) {
  return derive_seed(plan.master_seed, {stable_hash(spec.name), seed});
}

}  // namespace

Stream run_stream(const ExperimentPlan& plan, const DatasetSpec& spec,
                  const std::shared_ptr<const Dataset>& data, std::uint64_t seed) {
  const std::uint64_t s = stream_seed(plan, spec, seed);
  Stream stream = spec.schedule ? schedule_stream(data, *spec.schedule, s)
                                : shuffle(data, s);
  if (spec.limit && *spec.limit < stream.size()) {
    std::vector<std::size_t> order(stream.order().begin(),
                                   stream.order().begin() + *spec.limit);
    stream = Stream(data, std::move(order));
  }
  if (stream.empty()) throw EmptyStream("stream for '" + spec.name + "' is empty");
  return stream;
}

std::uint64_t run_method_seed(const ExperimentPlan& plan, const DatasetSpec& spec,
                              std::string_view method_id, std::uint64_t seed) {
  return derive_seed(stream_seed(plan, spec, seed), {stable_hash(method_id)});
}

namespace {

double realized_ir(const Stream& stream) {
  std::map<int, std::uint64_t> counts;
  for (std::size_t i = 0; i < stream.size(); ++i) ++counts[stream[i].label];
  if (counts.size() < 2) return NAN;
  if (stream.dataset().is_binary()) {
    const auto pos = counts[kPositive];
    return static_cast<double>(counts[kNegative]) / static_cast<double>(pos);
  }
  std::uint64_t lo = UINT64_MAX, hi = 0;
  for (const auto& [label, n] : counts) {
    lo = std::min(lo, n);
    hi = std::max(hi, n);
  }
  return static_cast<double>(hi) / static_cast<double>(lo);
}

BinaryLearner make_learner(const ExperimentPlan& plan, std::size_t dim) {
  if (plan.family == LearnerFamily::Kernel) {
    return BinaryLearner(KernelModel(dim, plan.kernel_gamma), plan.loss);
  }
  return BinaryLearner(LinearModel(dim), plan.loss);
}

std::string trace_name(const RunResult& r, std::string_view kind) {
  std::string name = r.dataset + "__" + r.method + "__s" + std::to_string(r.seed) +
                     "." + std::string(kind) + ".csv";
  for (char& c : name) {
    if (c == '/' || c == '\\' || c == ' ' || c == ':') c = '_';
  }
  return "traces/" + name;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  return out;
}

void write_binary_traces(const ExperimentPlan& plan, RunResult& r,
                         const BinaryRun& run, const RegretReport* regret) {
  const auto dir = plan.output_dir / "traces";
  std::filesystem::create_directories(dir);
  r.checkpoint_trace = trace_name(r, "checkpoints");
  auto out = open_output(plan.output_dir / r.checkpoint_trace);
  out << "t,gmeans,f1,auc,gi,gi_weighted,gi_raw,cumulative_loss,avg_regret,tpr,tnr\n";
  for (const auto& cp : run.checkpoints) {
    std::optional<double> avg;
    if (regret) {
      for (const auto& [t, v] : regret->avg_regret_trace) {
        if (t == cp.t) avg = v;
      }
    }
    out << cp.t << ',' << fmt_num(cp.gmeans) << ',' << fmt_num(cp.f1) << ','
        << fmt_opt(cp.auc) << ',' << fmt_opt(cp.gi) << ',' << fmt_opt(cp.gi_weighted)
        << ',' << fmt_opt(cp.gi_raw) << ',' << fmt_num(cp.cumulative_loss) << ','
        << fmt_opt(avg) << ',' << fmt_num(cp.tpr) << ',' << fmt_num(cp.tnr) << '\n';
  }
  if (plan.export_steps) {
    r.step_trace = trace_name(r, "steps");
    auto steps = open_output(plan.output_dir / r.step_trace);
    steps << "t,label,alpha,grad_norm_sq,loss,rho_max,gi\n";
    for (const auto& s : run.steps) {
      steps << s.t << ',' << s.label << ',' << fmt_num(s.alpha) << ','
            << fmt_num(s.grad_norm_sq) << ',' << fmt_num(s.loss) << ','
            << fmt_num(s.rho_max) << ',' << fmt_opt(s.gi) << '\n';
    }
  }
}

void write_multiclass_traces(const ExperimentPlan& plan, RunResult& r,
                             const MulticlassRun& run, const RegretReport* regret) {
  std::filesystem::create_directories(plan.output_dir / "traces");
  r.checkpoint_trace = trace_name(r, "checkpoints");
  auto out = open_output(plan.output_dir / r.checkpoint_trace);
  out << "t,accuracy,gmeans,cumulative_loss,avg_regret\n";
  for (const auto& cp : run.checkpoints) {
    std::optional<double> avg;
    if (regret) {
      for (const auto& [t, v] : regret->avg_regret_trace) {
        if (t == cp.t) avg = v;
      }
    }
    out << cp.t << ',' << fmt_num(cp.accuracy) << ',' << fmt_num(cp.gmeans) << ','
        << fmt_num(cp.cumulative_loss) << ',' << fmt_opt(avg) << '\n';
  }
  if (plan.export_steps) {
    r.step_trace = trace_name(r, "steps");
    auto steps = open_output(plan.output_dir / r.step_trace);
    steps << "t,label,alpha,grad_norm_sq,loss,rho_max\n";
    for (const auto& s : run.steps) {
      steps << s.t << ',' << s.label << ',' << fmt_num(s.alpha) << ','
            << fmt_num(s.grad_norm_sq) << ',' << fmt_num(s.loss) << ','
            << fmt_num(s.rho_max) << '\n';
    }
  }
}

struct OracleSlot {
  std::optional<OracleResult> result;
  std::string error;
};

void execute_run(const ExperimentPlan& plan, const RunOptions& options,
                 const DatasetSpec& spec, const std::shared_ptr<const Dataset>& data,
                 const MethodSpec& mspec, std::uint64_t seed,
                 const OracleSlot* oracle, RunResult& r) {
  const auto start = std::chrono::steady_clock::now();
  const Stream stream = run_stream(plan, spec, data, seed);
  const std::uint64_t n = stream.size();

  PrequentialOptions popts;
  popts.eta = plan.eta;
  popts.checkpoints = plan.checkpoint_indices.empty()
                          ? even_checkpoints(n, plan.checkpoint_count)
                          : plan.checkpoint_indices;
  popts.keep_steps = plan.export_steps;
  const std::uint64_t method_seed = run_method_seed(plan, spec, mspec.id, seed);

  RunMetrics& m = r.metrics;
  m.instances = n;
  m.realized_ir = realized_ir(stream);
  std::optional<RegretReport> rep;
  auto attach_regret = [&](std::span<const double> online) {
    if (!oracle) return;
    if (!oracle->result) throw Error("oracle failed: " + oracle->error);
    rep = regret(online, oracle->result->losses, popts.checkpoints);
    m.regret = rep->regret;
    m.oracle_cumulative_loss = rep->oracle_cum_loss;
  };

  if (plan.family == LearnerFamily::Softmax) {
    if (mspec.id != "ogd" && mspec.id != "hgd") {
      throw ConfigError("method '" + mspec.id + "' has no softmax variant");
    }
    MulticlassMethod method(SoftmaxLearner(data->num_classes(), data->dim()),
                            mspec.id == "ogd");
    const MulticlassRun run = run_prequential(method, stream, popts);
    m.accuracy = run.ledger.accuracy();
    m.gmeans = run.ledger.gmeans();
    m.f1 = run.ledger.macro_f1();
    m.cumulative_loss = run.ledger.cumulative_loss();
    attach_regret(run.ledger.losses());
    if (options.write_traces) write_multiclass_traces(plan, r, run, rep ? &*rep : nullptr);
  } else {
    if (!data->is_binary()) throw ConfigError("binary learners need a two-class dataset");
    auto method = make_binary_method(mspec, make_learner(plan, data->dim()), method_seed);
    const BinaryRun run = run_prequential(*method, stream, popts);
    const Confusion& c = run.ledger.confusion();
    m.auc = auc(run.ledger.scores());
    m.gmeans = gmeans(c);
    m.f1 = f1(c);
    m.accuracy = static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total());
    m.gii = run.gii();
    m.gii_weighted = run.gii_weighted();
    m.gii_raw = run.gii_raw();
    m.cumulative_loss = run.ledger.cumulative_loss();
    attach_regret(run.ledger.losses());
    if (options.write_traces) write_binary_traces(plan, r, run, rep ? &*rep : nullptr);
  }
  m.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

template <class F>
void parallel_for(std::size_t count, unsigned jobs, F&& body) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned j = 0; j < jobs; ++j) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

Dataset build_dataset(const DatasetSpec& spec, std::uint64_t master_seed) {
  Dataset data = std::visit(
      [&](const auto& src) -> Dataset {
        using T = std::decay_t<decltype(src)>;
        if constexpr (std::is_same_v<T, FileSource>) {
          return src.format == FileSource::Format::Csv ? load_csv(src.path, src.csv)
                                                       : load_libsvm(src.path, src.libsvm);
        } else {
          GaussianMixtureSpec g = src;
          g.seed = derive_seed(master_seed, {stable_hash("synthetic"), src.seed});
          return gen_gaussian_mixture(g);
        }
      },
      spec.source);
  if (spec.target_ir) {
    data = resample_to_ir(
        data, *spec.target_ir,
        derive_seed(master_seed, {stable_hash("resample"), stable_hash(spec.name)}));
  }
  if (spec.normalize != NormalizeMethod::None) data = normalize(data, spec.normalize);
  Dataset named(spec.name, data.instances());
  for (const auto& w : data.warnings()) named.add_warning(w);
  return named;
}

std::vector<RunResult> run_experiment(const ExperimentPlan& plan,
                                      const RunOptions& options) {
  std::vector<BuiltDataset> built(plan.datasets.size());
  parallel_for(plan.datasets.size(), options.jobs, [&](std::size_t i) {
    try {
      built[i].data = std::make_shared<const Dataset>(
          build_dataset(plan.datasets[i], plan.master_seed));
    } catch (const std::exception& e) {
      built[i].error = e.what();
    }
  });

  std::vector<OracleSlot> oracles;
  if (plan.compute_regret) {
    const std::size_t S = plan.seeds.size();
    oracles.resize(plan.datasets.size() * S);
    parallel_for(oracles.size(), options.jobs, [&](std::size_t k) {
      const std::size_t d = k / S;
      if (!built[d].data) {
        oracles[k].error = built[d].error;
        return;
      }
      try {
        const Stream s = run_stream(plan, plan.datasets[d], built[d].data, plan.seeds[k % S]);
        oracles[k].result = batch_oracle(s, plan.loss, plan.family);
      } catch (const std::exception& e) {
        oracles[k].error = e.what();
      }
    });
  }

  std::vector<RunResult> results;
  for (const auto& ds : plan.datasets) {
    for (const auto& ms : plan.methods) {
      for (std::uint64_t seed : plan.seeds) {
        RunResult r;
        r.dataset = ds.name;
        r.method = ms.id;
        r.seed = seed;
        results.push_back(std::move(r));
      }
    }
  }
  if (options.write_traces) std::filesystem::create_directories(plan.output_dir);

  const std::size_t M = plan.methods.size(), S = plan.seeds.size();
  parallel_for(results.size(), options.jobs, [&](std::size_t k) {
    const std::size_t d = k / (M * S), mi = (k / S) % M, si = k % S;
    RunResult& r = results[k];
    if (!built[d].data) {
      r.ok = false;
      r.error = built[d].error;
      return;
    }
    try {
      execute_run(plan, options, plan.datasets[d], built[d].data, plan.methods[mi],
                  plan.seeds[si], plan.compute_regret ? &oracles[d * S + si] : nullptr, r);
    } catch (const std::exception& e) {
      r.ok = false;
      r.error = e.what();
      r.metrics = RunMetrics{};
      r.checkpoint_trace.clear();
      r.step_trace.clear();
    }
  });
  return results;
}

}  // namespace hgd
