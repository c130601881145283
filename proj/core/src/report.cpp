#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "format.hpp"
#include "hgd/error.hpp"
#include "hgd/experiment.hpp"
#include "hgd/normalize_table.hpp"

namespace hgd {
namespace {

using json = nlohmann::json;

json num(std::optional<double> v) {
  return v && std::isfinite(*v) ? json(*v) : json(nullptr);
}

std::optional<double> opt(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

json run_to_json(const RunResult& r, bool include_timing) {
  const RunMetrics& m = r.metrics;
  json j = {{"dataset", r.dataset},
            {"method", r.method},
            {"seed", r.seed},
            {"ok", r.ok},
            {"error", r.error},
            {"instances", m.instances},
            {"realized_ir", num(m.realized_ir)},
            {"auc", num(m.auc)},
            {"gmeans", m.gmeans},
            {"f1", m.f1},
            {"accuracy", m.accuracy},
            {"gii", num(m.gii)},
            {"gii_weighted", num(m.gii_weighted)},
            {"gii_raw", num(m.gii_raw)},
            {"cumulative_loss", m.cumulative_loss},
            {"regret", num(m.regret)},
            {"oracle_cumulative_loss", num(m.oracle_cumulative_loss)},
            {"checkpoint_trace", r.checkpoint_trace},
            {"step_trace", r.step_trace}};
  if (include_timing) j["wall_time_s"] = m.wall_time_s;
  return j;
}

RunResult run_from_json(const json& j) {
  RunResult r;
  r.dataset = j.at("dataset").get<std::string>();
  r.method = j.at("method").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.ok = j.at("ok").get<bool>();
  r.error = j.at("error").get<std::string>();
  RunMetrics& m = r.metrics;
  m.instances = j.at("instances").get<std::uint64_t>();
  m.realized_ir = opt(j, "realized_ir").value_or(NAN);
  m.auc = opt(j, "auc");
  m.gmeans = j.at("gmeans").get<double>();
  m.f1 = j.at("f1").get<double>();
  m.accuracy = j.at("accuracy").get<double>();
  m.gii = opt(j, "gii");
  m.gii_weighted = opt(j, "gii_weighted");
  m.gii_raw = opt(j, "gii_raw");
  m.cumulative_loss = j.at("cumulative_loss").get<double>();
  m.regret = opt(j, "regret");
  m.oracle_cumulative_loss = opt(j, "oracle_cumulative_loss");
  m.wall_time_s = opt(j, "wall_time_s").value_or(0.0);
  r.checkpoint_trace = j.value("checkpoint_trace", "");
  r.step_trace = j.value("step_trace", "");
  return r;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  return out;
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw IoError("cannot create output directory '" + dir.string() + "'");
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::optional<double> metric_of(const RunResult& r, std::string_view name) {
  const RunMetrics& m = r.metrics;
  if (name == "auc") return m.auc;
  if (name == "gmeans") return m.gmeans;
  if (name == "f1") return m.f1;
  if (name == "accuracy") return m.accuracy;
  if (name == "gii") return m.gii;
  if (name == "gii_weighted") return m.gii_weighted;
  if (name == "gii_raw") return m.gii_raw;
  if (name == "cumulative_loss") return m.cumulative_loss;
  if (name == "regret") return m.regret;
  return std::nullopt;
}

const std::vector<std::string> kSummaryMetrics = {
    "auc", "gmeans", "f1", "accuracy", "gii", "gii_weighted", "gii_raw",
    "cumulative_loss", "regret"};
const std::vector<std::string> kTableMetrics = {"auc", "gmeans", "f1", "gii"};

struct Stat {
  std::optional<double> mean;
  std::optional<double> std;
};

struct Group {
  std::string dataset;
  std::string method;
  std::size_t runs = 0;
  std::size_t failed = 0;
  std::map<std::string, Stat> stats;
};

std::vector<Group> summarise(const std::vector<RunResult>& results,
                             std::vector<std::string>& datasets,
                             std::vector<std::string>& methods) {
  std::vector<Group> groups;
  std::map<std::pair<std::string, std::string>, std::vector<const RunResult*>> members;
  for (const auto& r : results) {
    if (std::find(datasets.begin(), datasets.end(), r.dataset) == datasets.end()) {
      datasets.push_back(r.dataset);
    }
    if (std::find(methods.begin(), methods.end(), r.method) == methods.end()) {
      methods.push_back(r.method);
    }
    auto& list = members[{r.dataset, r.method}];
    if (list.empty()) groups.push_back({r.dataset, r.method, 0, 0, {}});
    list.push_back(&r);
  }
  for (Group& g : groups) {
    const auto& list = members[{g.dataset, g.method}];
    g.runs = list.size();
    for (const auto* r : list) g.failed += r->ok ? 0 : 1;
    for (const auto& name : kSummaryMetrics) {
      std::vector<double> xs;
      for (const auto* r : list) {
        if (!r->ok) continue;
        const auto v = metric_of(*r, name);
        if (v && std::isfinite(*v)) xs.push_back(*v);
      }
      Stat s;
      if (!xs.empty()) {
        double sum = 0.0;
        for (double x : xs) sum += x;
        const double mean = sum / static_cast<double>(xs.size());
        double ss = 0.0;
        for (double x : xs) ss += (x - mean) * (x - mean);
        s.mean = mean;
        s.std = xs.size() > 1 ? std::sqrt(ss / static_cast<double>(xs.size() - 1)) : 0.0;
      }
      g.stats[name] = s;
    }
  }
  return groups;
}

MetricTable metric_table(const std::vector<Group>& groups,
                         const std::vector<std::string>& datasets,
                         const std::vector<std::string>& methods,
                         const std::string& metric) {
  MetricTable t;
  t.rows = datasets;
  t.columns = methods;
  t.values.assign(datasets.size(), std::vector<double>(methods.size(), NAN));
  for (const Group& g : groups) {
    const auto r = std::find(datasets.begin(), datasets.end(), g.dataset) - datasets.begin();
    const auto c = std::find(methods.begin(), methods.end(), g.method) - methods.begin();
    t.values[r][c] = g.stats.at(metric).mean.value_or(NAN);
  }
  return t;
}

void write_table_csv(const std::filesystem::path& path, const MetricTable& t,
                     const std::string& footer_name, const std::vector<double>& footer) {
  auto out = open_output(path);
  out << "dataset";
  for (const auto& c : t.columns) out << ',' << csv_field(c);
  out << '\n';
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    out << csv_field(t.rows[r]);
    for (double v : t.values[r]) out << ',' << fmt_opt(v);
    out << '\n';
  }
  out << footer_name;
  for (double v : footer) out << ',' << fmt_opt(v);
  out << '\n';
}

json table_json(const MetricTable& t) {
  json values = json::array();
  for (const auto& row : t.values) {
    json jr = json::array();
    for (double v : row) jr.push_back(num(v));
    values.push_back(jr);
  }
  return {{"rows", t.rows}, {"columns", t.columns}, {"values", values}};
}

json vec_json(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(num(x));
  return out;
}

void write_timing_csv(const std::vector<RunResult>& results,
                      const std::filesystem::path& path) {
  auto out = open_output(path);
  out << "dataset,method,seed,wall_time_s\n";
  for (const auto& r : results) {
    out << csv_field(r.dataset) << ',' << csv_field(r.method) << ',' << r.seed << ','
        << fmt_num(r.metrics.wall_time_s) << '\n';
  }
}

}  // namespace

ReportFormat parse_report_format(std::string_view name) {
  if (name == "csv") return ReportFormat::Csv;
  if (name == "json") return ReportFormat::Json;
  throw ConfigError("unknown report format '" + std::string(name) + "'");
}

std::string results_to_json(const std::vector<RunResult>& results, bool include_timing) {
  json arr = json::array();
  for (const auto& r : results) arr.push_back(run_to_json(r, include_timing));
  return arr.dump(2) + "\n";
}

std::vector<RunResult> results_from_json(std::string_view text) {
  std::vector<RunResult> out;
  try {
    const json arr = json::parse(text);
    if (!arr.is_array()) throw InputError("run list must be a JSON array");
    for (const auto& j : arr) out.push_back(run_from_json(j));
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed run list: ") + e.what());
  }
  return out;
}

void write_runs(const std::vector<RunResult>& results, const std::filesystem::path& dir) {
  ensure_dir(dir);
  open_output(dir / "runs.json") << results_to_json(results, false);
  write_timing_csv(results, dir / "timing.csv");
}

std::vector<RunResult> read_runs(const std::filesystem::path& dir) {
  std::ifstream in(dir / "runs.json", std::ios::binary);
  if (!in) throw IoError("cannot read '" + (dir / "runs.json").string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  std::vector<RunResult> results = results_from_json(buf.str());

  std::ifstream timing(dir / "timing.csv");
  std::string line;
  if (timing && std::getline(timing, line)) {
    std::map<std::tuple<std::string, std::string, std::uint64_t>, double> times;
    while (std::getline(timing, line)) {
      std::vector<std::string> cells;
      std::stringstream ls(line);
      std::string cell;
      while (std::getline(ls, cell, ',')) cells.push_back(cell);
      if (cells.size() != 4) continue;
      try {
        times[{cells[0], cells[1], std::stoull(cells[2])}] = std::stod(cells[3]);
      } catch (const std::exception&) {
        continue;
      }
    }
    for (auto& r : results) {
      const auto it = times.find({r.dataset, r.method, r.seed});
      if (it != times.end()) r.metrics.wall_time_s = it->second;
    }
  }
  return results;
}

void emit_report(const std::vector<RunResult>& results, const std::filesystem::path& dir,
                 ReportFormat format) {
  ensure_dir(dir);
  std::vector<std::string> datasets, methods;
  const std::vector<Group> groups = summarise(results, datasets, methods);

  std::map<std::string, NormalizedTable> tables;
  for (const auto& m : kTableMetrics) {
    tables.emplace(m, normalize_across_methods(metric_table(groups, datasets, methods, m),
                                               metric_sense(m)));
  }

  if (format == ReportFormat::Csv) {
    {
      auto out = open_output(dir / "runs.csv");
      out << "dataset,method,seed,ok,error,instances,realized_ir,auc,gmeans,f1,accuracy,"
             "gii,gii_weighted,gii_raw,cumulative_loss,regret,oracle_cumulative_loss,"
             "checkpoint_trace\n";
      for (const auto& r : results) {
        const RunMetrics& m = r.metrics;
        out << csv_field(r.dataset) << ',' << csv_field(r.method) << ',' << r.seed << ','
            << (r.ok ? 1 : 0) << ',' << csv_field(r.error) << ',' << m.instances << ','
            << fmt_opt(m.realized_ir) << ',' << fmt_opt(m.auc) << ',' << fmt_num(m.gmeans)
            << ',' << fmt_num(m.f1) << ',' << fmt_num(m.accuracy) << ',' << fmt_opt(m.gii)
            << ',' << fmt_opt(m.gii_weighted) << ',' << fmt_opt(m.gii_raw) << ','
            << fmt_num(m.cumulative_loss) << ',' << fmt_opt(m.regret) << ','
            << fmt_opt(m.oracle_cumulative_loss) << ',' << csv_field(r.checkpoint_trace)
            << '\n';
      }
    }
    {
      auto out = open_output(dir / "summary.csv");
      out << "dataset,method,runs,failed";
      for (const auto& m : kSummaryMetrics) out << ',' << m << "_mean," << m << "_std";
      out << '\n';
      for (const Group& g : groups) {
        out << csv_field(g.dataset) << ',' << csv_field(g.method) << ',' << g.runs << ','
            << g.failed;
        for (const auto& m : kSummaryMetrics) {
          const Stat& s = g.stats.at(m);
          out << ',' << fmt_opt(s.mean) << ',' << fmt_opt(s.std);
        }
        out << '\n';
      }
    }
    for (const auto& [m, t] : tables) {
      write_table_csv(dir / ("normalized_" + m + ".csv"), t.normalized, "mean",
                      t.mean_normalized);
      write_table_csv(dir / ("rank_" + m + ".csv"), t.ranks, "mean_rank", t.mean_rank);
    }
    {
      auto out = open_output(dir / "table.csv");
      out << "method";
      for (const auto& m : kTableMetrics) out << ',' << m << ',' << m << "_rank";
      out << '\n';
      for (std::size_t c = 0; c < methods.size(); ++c) {
        out << csv_field(methods[c]);
        for (const auto& m : kTableMetrics) {
          const auto& t = tables.at(m);
          out << ',' << fmt_opt(t.mean_normalized[c]) << ',' << fmt_opt(t.mean_rank[c]);
        }
        out << '\n';
      }
    }
    write_timing_csv(results, dir / "timing.csv");
  } else {
    json summary = json::array();
    for (const Group& g : groups) {
      json stats = json::object();
      for (const auto& m : kSummaryMetrics) {
        const Stat& s = g.stats.at(m);
        stats[m] = {{"mean", num(s.mean)}, {"std", num(s.std)}};
      }
      summary.push_back({{"dataset", g.dataset}, {"method", g.method}, {"runs", g.runs},
                         {"failed", g.failed}, {"metrics", stats}});
    }
    json jt = json::object();
    for (const auto& [m, t] : tables) {
      jt[m] = {{"normalized", table_json(t.normalized)},
               {"ranks", table_json(t.ranks)},
               {"mean_normalized", vec_json(t.mean_normalized)},
               {"mean_rank", vec_json(t.mean_rank)}};
    }
    json runs = json::array();
    for (const auto& r : results) runs.push_back(run_to_json(r, false));
    const json report = {{"methods", methods}, {"datasets", datasets}, {"runs", runs},
                         {"summary", summary}, {"tables", jt}};
    open_output(dir / "report.json") << report.dump(2) << '\n';
    json timing = json::array();
    for (const auto& r : results) {
      timing.push_back({{"dataset", r.dataset}, {"method", r.method}, {"seed", r.seed},
                        {"wall_time_s", r.metrics.wall_time_s}});
    }
    open_output(dir / "timing.json") << timing.dump(2) << '\n';
  }
}

}  // namespace hgd
