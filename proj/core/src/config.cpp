#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hgd/error.hpp"
#include "hgd/experiment.hpp"

namespace hgd {
namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(path, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) fail(path + "." + key, "unknown key");
  }
}

double get_number(const json& obj, const char* key, const std::string& path,
                  double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) fail(path + "." + key, "expected a number");
  return v.get<double>();
}

std::optional<double> get_opt_number(const json& obj, const char* key,
                                     const std::string& path) {
  if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
  return get_number(obj, key, path, 0.0);
}

std::uint64_t get_uint(const json& v, const std::string& path) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    fail(path, "expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::string get_string(const json& obj, const char* key, const std::string& path,
                       std::string fallback = {}) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_string()) fail(path + "." + key, "expected a string");
  return v.get<std::string>();
}

bool get_bool(const json& obj, const char* key, const std::string& path,
              bool fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_boolean()) fail(path + "." + key, "expected true or false");
  return v.get<bool>();
}

template <class F>
auto rethrow_at(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const UnknownMethod&) {
    throw;
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

DatasetSpec parse_dataset(const json& j, const std::string& path,
                          const std::filesystem::path& base_dir) {
  check_keys(j, path,
             {"name", "path", "format", "label_column", "positive_label",
              "header", "delimiter", "dimension", "synthetic", "target_ir",
              "schedule", "normalize", "limit"});
  DatasetSpec spec;
  const bool has_path = j.contains("path"), has_syn = j.contains("synthetic");
  if (has_path == has_syn) fail(path, "exactly one of 'path' or 'synthetic' is required");

  if (has_path) {
    FileSource src;
    src.path = get_string(j, "path", path);
    if (src.path.is_relative() && !base_dir.empty()) src.path = base_dir / src.path;
    std::string fmt = get_string(j, "format", path);
    if (fmt.empty()) {
      const auto ext = src.path.extension().string();
      fmt = ext == ".csv" ? "csv" : "libsvm";
    }
    if (fmt == "csv") {
      src.format = FileSource::Format::Csv;
    } else if (fmt == "libsvm") {
      src.format = FileSource::Format::Libsvm;
    } else {
      fail(path + ".format", "expected 'csv' or 'libsvm'");
    }
    if (j.contains("label_column")) {
      src.csv.label_column = get_uint(j.at("label_column"), path + ".label_column");
    }
    if (j.contains("positive_label")) {
      const json& v = j.at("positive_label");
      if (v.is_string()) {
        src.csv.positive_label = v.get<std::string>();
      } else if (v.is_number()) {
        src.csv.positive_label = v.dump();
      } else {
        fail(path + ".positive_label", "expected a string or number");
      }
    }
    src.csv.header = get_bool(j, "header", path, false);
    const std::string delim = get_string(j, "delimiter", path, ",");
    if (delim.size() != 1) fail(path + ".delimiter", "expected a single character");
    src.csv.delimiter = delim[0];
    if (j.contains("dimension")) {
      src.libsvm.dimension = get_uint(j.at("dimension"), path + ".dimension");
    }
    spec.name = src.path.stem().string();
    spec.source = std::move(src);
  } else {
    for (const char* k : {"format", "label_column", "positive_label", "header",
                          "delimiter", "dimension"}) {
      if (j.contains(k)) fail(path + "." + k, "only applies to file datasets");
    }
    const std::string text = get_string(j, "synthetic", path);
    GaussianMixtureSpec g =
        rethrow_at(path + ".synthetic", [&] { return parse_synthetic_spec(text); });
    spec.name = g.name;
    spec.source = std::move(g);
  }
  spec.name = get_string(j, "name", path, spec.name);
  if (spec.name.empty()) fail(path + ".name", "must not be empty");

  spec.target_ir = get_opt_number(j, "target_ir", path);
  if (spec.target_ir && !(*spec.target_ir >= 1.0)) fail(path + ".target_ir", "must be >= 1");
  if (j.contains("schedule")) {
    const std::string text = get_string(j, "schedule", path);
    spec.schedule = rethrow_at(path + ".schedule", [&] { return IrSchedule::parse(text); });
  }
  if (j.contains("normalize")) {
    const std::string text = get_string(j, "normalize", path);
    spec.normalize =
        rethrow_at(path + ".normalize", [&] { return parse_normalize_method(text); });
  }
  if (j.contains("limit")) spec.limit = get_uint(j.at("limit"), path + ".limit");
  return spec;
}

MethodSpec parse_method(const json& j, const std::string& path) {
  if (j.is_string()) return default_method_spec(j.get<std::string>());
  if (!j.is_object() || !j.contains("id") || !j.at("id").is_string()) {
    fail(path, "expected a method id or an object with an 'id'");
  }
  MethodSpec spec = default_method_spec(j.at("id").get<std::string>());
  const std::string& id = spec.id;
  if (id == "csogd-cost") {
    check_keys(j, path, {"id", "c_p", "c_n"});
    FixedCosts c;
    c.c_p = get_number(j, "c_p", path, c.c_p);
    c.c_n = get_number(j, "c_n", path, c.c_n);
    spec.costs = c;
    rethrow_at(path, [&] { validate(spec.costs); });
  } else if (id == "csogd-sum") {
    check_keys(j, path, {"id", "n_p", "n_n"});
    SumCosts c;
    c.n_p = get_number(j, "n_p", path, c.n_p);
    c.n_n = get_number(j, "n_n", path, c.n_n);
    spec.costs = c;
    rethrow_at(path, [&] { validate(spec.costs); });
  } else if (id == "our" || id == "oor" || id == "ohr") {
    check_keys(j, path, {"id", "rate_major", "rate_minor"});
    spec.resample.rate_major = get_opt_number(j, "rate_major", path);
    spec.resample.rate_minor = get_opt_number(j, "rate_minor", path);
    rethrow_at(path, [&] { validate(spec.resample); });
  } else if (id == "hgd-dynamic") {
    check_keys(j, path, {"id", "lambda"});
    spec.lambda = get_number(j, "lambda", path, spec.lambda);
    if (!(spec.lambda > 0.0 && spec.lambda < 1.0)) fail(path + ".lambda", "must lie in (0, 1)");
  } else {
    check_keys(j, path, {"id"});
  }
  return spec;
}

EtaPolicy parse_eta(const json& j, const std::string& path) {
  EtaPolicy eta;
  if (j.is_number()) {
    eta = EtaPolicy::constant(j.get<double>());
  } else {
    check_keys(j, path, {"policy", "value", "scale"});
    const std::string policy = get_string(j, "policy", path, "constant");
    if (policy == "constant") {
      if (j.contains("scale")) fail(path + ".scale", "only applies to inverse_sqrt");
      eta = EtaPolicy::constant(get_number(j, "value", path, 0.3));
    } else if (policy == "inverse_sqrt") {
      if (j.contains("value")) fail(path + ".value", "only applies to constant");
      eta = EtaPolicy::inverse_sqrt(get_number(j, "scale", path, 1.0));
    } else {
      fail(path + ".policy", "expected 'constant' or 'inverse_sqrt'");
    }
  }
  if (!(eta.eta0 > 0.0)) fail(path, "learning rate must be positive");
  return eta;
}

}  // namespace

ExperimentPlan parse_config_text(std::string_view text, std::string_view origin,
                                 const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string(origin) + ": malformed JSON: " + e.what());
  }
  const std::string top(origin);
  check_keys(root, top,
             {"datasets", "methods", "learner", "eta", "seeds", "master_seed",
              "checkpoints", "output_dir", "regret", "export_steps"});
  ExperimentPlan plan;

  if (!root.contains("datasets")) fail(top + ".datasets", "required key is missing");
  const json& ds = root.at("datasets");
  if (!ds.is_array() || ds.empty()) fail(top + ".datasets", "expected a non-empty list");
  std::set<std::string> names;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const std::string p = top + ".datasets[" + std::to_string(i) + "]";
    plan.datasets.push_back(parse_dataset(ds[i], p, base_dir));
    if (!names.insert(plan.datasets.back().name).second) {
      fail(p + ".name", "duplicate dataset name '" + plan.datasets.back().name + "'");
    }
  }

  if (!root.contains("methods")) fail(top + ".methods", "required key is missing");
  const json& ms = root.at("methods");
  if (ms.is_string()) {
    plan.methods.push_back(parse_method(ms, top + ".methods"));
  } else if (ms.is_array() && !ms.empty()) {
    std::set<std::string> ids;
    for (std::size_t i = 0; i < ms.size(); ++i) {
      const std::string p = top + ".methods[" + std::to_string(i) + "]";
      plan.methods.push_back(parse_method(ms[i], p));
      if (!ids.insert(plan.methods.back().id).second) {
        fail(p, "duplicate method '" + plan.methods.back().id + "'");
      }
    }
  } else {
    fail(top + ".methods", "expected a method id or a non-empty list");
  }

  if (root.contains("learner")) {
    const json& l = root.at("learner");
    const std::string p = top + ".learner";
    check_keys(l, p, {"family", "loss", "gamma"});
    const std::string family = get_string(l, "family", p, "linear");
    if (family == "linear") {
      plan.family = LearnerFamily::Linear;
    } else if (family == "kernel") {
      plan.family = LearnerFamily::Kernel;
    } else if (family == "softmax") {
      plan.family = LearnerFamily::Softmax;
    } else {
      fail(p + ".family", "expected 'linear', 'kernel' or 'softmax'");
    }
    const std::string fallback = plan.family == LearnerFamily::Softmax ? "softmax" : "hinge";
    const std::string loss = get_string(l, "loss", p, fallback);
    plan.loss = rethrow_at(p + ".loss", [&] { return parse_loss_kind(loss); });
    if ((plan.family == LearnerFamily::Softmax) != (plan.loss == LossKind::MulticlassSoftmax)) {
      fail(p + ".loss", "the softmax loss goes with the softmax family only");
    }
    if (l.contains("gamma") && plan.family != LearnerFamily::Kernel) {
      fail(p + ".gamma", "only applies to the kernel family");
    }
    plan.kernel_gamma = get_number(l, "gamma", p, 0.0);
  }
  if (plan.family == LearnerFamily::Softmax) {
    for (std::size_t i = 0; i < plan.methods.size(); ++i) {
      const auto& id = plan.methods[i].id;
      if (id != "ogd" && id != "hgd") {
        fail(top + ".methods[" + std::to_string(i) + "]",
             "method '" + id + "' has no softmax variant");
      }
    }
  }

  if (root.contains("eta")) plan.eta = parse_eta(root.at("eta"), top + ".eta");

  if (root.contains("seeds")) {
    const json& s = root.at("seeds");
    const std::string p = top + ".seeds";
    plan.seeds.clear();
    if (s.is_array()) {
      for (std::size_t i = 0; i < s.size(); ++i) {
        plan.seeds.push_back(get_uint(s[i], p + "[" + std::to_string(i) + "]"));
      }
    } else {
      const std::uint64_t n = get_uint(s, p);
      for (std::uint64_t k = 0; k < n; ++k) plan.seeds.push_back(k);
    }
    if (plan.seeds.empty()) fail(p, "at least one seed is required");
  }
  if (root.contains("master_seed")) {
    plan.master_seed = get_uint(root.at("master_seed"), top + ".master_seed");
  }
  if (root.contains("checkpoints")) {
    const json& c = root.at("checkpoints");
    const std::string p = top + ".checkpoints";
    if (c.is_array()) {
      for (std::size_t i = 0; i < c.size(); ++i) {
        const std::uint64_t t = get_uint(c[i], p + "[" + std::to_string(i) + "]");
        if (t == 0 || (!plan.checkpoint_indices.empty() && t <= plan.checkpoint_indices.back())) {
          fail(p, "indices must be positive and strictly increasing");
        }
        plan.checkpoint_indices.push_back(t);
      }
    } else {
      plan.checkpoint_count = get_uint(c, p);
      if (plan.checkpoint_count == 0) fail(p, "must be positive");
    }
  }
  plan.output_dir = get_string(root, "output_dir", top, plan.output_dir.string());
  plan.compute_regret = get_bool(root, "regret", top, false);
  if (plan.compute_regret && plan.family == LearnerFamily::Kernel) {
    fail(top + ".regret", "regret needs a linear or softmax learner");
  }
  plan.export_steps = get_bool(root, "export_steps", top, false);
  return plan;
}

ExperimentPlan parse_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path.string(), path.parent_path());
}

}  // namespace hgd
