#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <string>

#include "hgd/error.hpp"
#include "hgd/rng.hpp"
#include "hgd/schedule.hpp"

namespace hgd {
namespace {

void fisher_yates(std::vector<std::size_t>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    std::swap(v[i - 1], v[pick(rng)]);
  }
}

}  // namespace

Stream schedule_stream(std::shared_ptr<const Dataset> data,
                       const IrSchedule& schedule, std::uint64_t seed) {
  if (!data->is_binary()) throw ConfigError("schedules need binary data");
  std::vector<std::size_t> neg, pos;
  for (std::size_t i = 0; i < data->size(); ++i) {
    ((*data)[i].label == kPositive ? pos : neg).push_back(i);
  }
  Rng rng(seed);
  fisher_yates(neg, rng);
  fisher_yates(pos, rng);

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::size_t> order;
  order.reserve(schedule.length());
  std::size_t next_neg = 0, next_pos = 0;
  for (std::size_t t = 1; t <= schedule.length(); ++t) {
    const double ir = schedule.ir_at(t);
    const bool negative = unit(rng) < ir / (1.0 + ir);
    std::vector<std::size_t>& pool = negative ? neg : pos;
    std::size_t& next = negative ? next_neg : next_pos;
    if (next >= pool.size()) {
      const std::size_t seg = schedule.segment_of(t);
      std::ostringstream msg;
      msg << "schedule segment " << seg << " infeasible: "
          << (negative ? "negative" : "positive")
          << " instances exhausted at position " << t << " (have "
          << pool.size() << ")";
      throw InfeasibleSchedule(msg.str(), seg);
    }
    order.push_back(pool[next++]);
  }
  return Stream(std::move(data), std::move(order));
}

std::vector<std::size_t> apportion(std::size_t n,
                                   const std::vector<double>& weights) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  std::vector<std::size_t> counts(weights.size());
  std::vector<std::pair<double, std::size_t>> remainders;
  std::size_t assigned = 0;
  for (std::size_t c = 0; c < weights.size(); ++c) {
    const double exact = static_cast<double>(n) * weights[c] / total;
    counts[c] = static_cast<std::size_t>(std::floor(exact));
    assigned += counts[c];
    remainders.emplace_back(exact - std::floor(exact), c);
  }
  // Largest remainder first; ties go to the lower class index.
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t k = 0; assigned < n; ++k, ++assigned) {
    ++counts[remainders[k % remainders.size()].second];
  }
  return counts;
}

GaussianMixtureSpec binary_gaussian_spec(std::size_t dim, std::size_t n,
                                         double ir, double sigma,
                                         double separation,
                                         std::uint64_t seed) {
  if (dim == 0) throw ConfigError("synthetic dimension must be positive");
  if (!(ir > 0.0)) throw ConfigError("synthetic IR must be positive");
  GaussianMixtureSpec spec;
  spec.dim = dim;
  spec.n = n;
  spec.seed = seed;
  const double m = separation / std::sqrt(static_cast<double>(dim));
  const double p_pos = 1.0 / (1.0 + ir);
  spec.classes.push_back({kNegative, std::vector<double>(dim, -m), sigma, 1.0 - p_pos});
  spec.classes.push_back({kPositive, std::vector<double>(dim, m), sigma, p_pos});
  std::ostringstream name;
  name << "gauss-d" << dim << "-ir" << ir;
  spec.name = name.str();
  return spec;
}

GaussianMixtureSpec multiclass_gaussian_spec(std::size_t dim, std::size_t n,
                                             std::vector<double> priors,
                                             double sigma, double separation,
                                             std::uint64_t seed) {
  if (priors.size() < 2) throw ConfigError("need at least two class priors");
  if (dim < priors.size()) {
    throw ConfigError("multiclass synthetic needs dim >= number of classes");
  }
  GaussianMixtureSpec spec;
  spec.dim = dim;
  spec.n = n;
  spec.seed = seed;
  for (std::size_t c = 0; c < priors.size(); ++c) {
    std::vector<double> mean(dim, 0.0);
    mean[c] = separation;
    spec.classes.push_back({static_cast<int>(c), std::move(mean), sigma, priors[c]});
  }
  spec.name = "gauss-mc" + std::to_string(priors.size());
  return spec;
}

namespace {

double to_number(std::string_view key, std::string_view value) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError("synthetic spec: bad value '" + std::string(value) +
                      "' for '" + std::string(key) + "'");
  }
  return v;
}

}  // namespace

GaussianMixtureSpec parse_synthetic_spec(std::string_view text) {
  std::map<std::string, std::string, std::less<>> kv;
  std::string_view rest = text;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("synthetic spec item '" + std::string(item) +
                        "' is not key=value");
    }
    kv[std::string(item.substr(0, eq))] = std::string(item.substr(eq + 1));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  static const char* known[] = {"d", "n", "ir", "priors", "sigma", "sep", "seed", "name"};
  for (const auto& [k, v] : kv) {
    if (std::find(std::begin(known), std::end(known), k) == std::end(known)) {
      throw ConfigError("synthetic spec: unknown key '" + k + "'");
    }
  }
  auto num = [&](const char* key, double fallback) {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : to_number(key, it->second);
  };
  const auto dim = static_cast<std::size_t>(num("d", 10));
  const auto n = static_cast<std::size_t>(num("n", 10000));
  const double sigma = num("sigma", 1.0);
  const double sep = num("sep", 1.0);
  const auto seed = static_cast<std::uint64_t>(num("seed", 0));

  GaussianMixtureSpec spec;
  if (auto it = kv.find("priors"); it != kv.end()) {
    std::vector<double> priors;
    std::string_view p = it->second;
    while (true) {
      const auto slash = p.find('/');
      priors.push_back(to_number("priors", p.substr(0, slash)));
      if (slash == std::string_view::npos) break;
      p = p.substr(slash + 1);
    }
    spec = multiclass_gaussian_spec(dim, n, std::move(priors), sigma, sep, seed);
  } else {
    spec = binary_gaussian_spec(dim, n, num("ir", 1.0), sigma, sep, seed);
  }
  if (auto it = kv.find("name"); it != kv.end()) spec.name = it->second;
  return spec;
}

Dataset gen_gaussian_mixture(const GaussianMixtureSpec& spec) {
  if (spec.classes.size() < 2) throw ConfigError("mixture needs two classes");
  std::vector<double> priors;
  for (const auto& c : spec.classes) {
    if (!(c.sigma > 0.0)) throw ConfigError("mixture variance must be positive");
    if (c.mean.size() != spec.dim) throw ConfigError("mixture mean has wrong dimension");
    priors.push_back(c.prior);
  }
  const double psum = std::accumulate(priors.begin(), priors.end(), 0.0);
  if (std::abs(psum - 1.0) > 1e-9) throw ConfigError("mixture priors must sum to 1");

  const std::vector<std::size_t> counts = apportion(spec.n, priors);
  std::vector<std::size_t> which;
  which.reserve(spec.n);
  for (std::size_t c = 0; c < counts.size(); ++c) which.insert(which.end(), counts[c], c);

  Rng rng(spec.seed);
  fisher_yates(which, rng);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<LabeledInstance> out;
  out.reserve(spec.n);
  for (std::size_t c : which) {
    const GaussianClass& cls = spec.classes[c];
    LabeledInstance inst;
    inst.label = cls.label;
    inst.features.resize(spec.dim);
    for (std::size_t j = 0; j < spec.dim; ++j) {
      inst.features[j] = cls.mean[j] + cls.sigma * normal(rng);
    }
    out.push_back(std::move(inst));
  }
  return Dataset(spec.name, std::move(out));
}

}  // namespace hgd
