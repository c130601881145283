#include <cmath>
#include <random>

#include "doctest.h"
#include "hgd/baselines.hpp"
#include "hgd/error.hpp"
#include "hgd/methods.hpp"
#include "test_support.hpp"

using namespace hgd;

namespace {

BinaryLearner linear(std::size_t d) { return BinaryLearner(LinearModel(d), LossKind::Hinge); }

void drive(BinaryMethod& m, const LabeledInstance& inst, double eta = 0.3) {
  m.learn(inst, m.score(inst.features), eta);
}

}  // namespace

TEST_CASE("poisson repeat counts") {
  Rng rng(7);
  CHECK_THROWS_AS(poisson_repeat_count(0.0, rng), ConfigError);
  CHECK_THROWS_AS(poisson_repeat_count(-1.0, rng), ConfigError);

  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) sum += poisson_repeat_count(3.0, rng);
  CHECK(std::abs(sum / n - 3.0) <= 0.03);

  int zeros = 0;
  for (int i = 0; i < 10000; ++i) zeros += poisson_repeat_count(1e-6, rng) == 0;
  CHECK(zeros >= 9990);

  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) {
    CHECK(poisson_repeat_count(2.5, a) == poisson_repeat_count(2.5, b));
  }
  // Large rates use the library sampler.
  double big = 0.0;
  for (int i = 0; i < 2000; ++i) big += poisson_repeat_count(800.0, rng);
  CHECK(std::abs(big / 2000 - 800.0) < 3.0);
}

TEST_CASE("zero loss leaves every baseline's model unchanged") {
  const LabeledInstance inst{{1.0, 1.0}, +1};
  BinaryLearner l(LinearModel({2.0, 2.0}, 0.0), LossKind::Hinge);
  const auto before = std::get<LinearModel>(l.model());
  ogd_step(l, inst, l.score(inst.features), 0.3);
  CHECK(std::get<LinearModel>(l.model()) == before);
  csogd_step(l, inst, l.score(inst.features), 0.3, FixedCosts{}, HarmonizerState::static_ratio());
  CHECK(std::get<LinearModel>(l.model()) == before);
}

TEST_CASE("balanced fixed costs and unit-weight HGD reduce to OGD") {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto data = test::random_binary(1000, 5, 0.2, seed);
    OgdMethod ogd(linear(5));
    CsogdMethod cs(linear(5), FixedCosts{0.5, 0.5});
    HgdMethod unit(linear(5), HarmonizerState::static_ratio(), true);
    std::size_t diverged = 0;
    for (const auto& inst : data->instances()) {
      drive(ogd, inst);
      drive(cs, inst);
      drive(unit, inst);
      const auto& w = std::get<LinearModel>(ogd.learner().model());
      diverged += !(std::get<LinearModel>(cs.learner().model()) == w);
      diverged += !(std::get<LinearModel>(unit.learner().model()) == w);
    }
    CHECK(diverged == 0);
  }
}

TEST_CASE("fixed cost multipliers") {
  const auto counts = HarmonizerState::static_ratio();
  const FixedCosts fc{0.95, 0.05};
  CHECK(cost_multiplier(fc, +1, counts) == doctest::Approx(1.9));
  CHECK(cost_multiplier(fc, -1, counts) == doctest::Approx(0.1));

  // Equal raw gradients: positive delta is 19 times the negative delta.
  BinaryLearner pos(LinearModel(2), LossKind::Hinge), neg(LinearModel(2), LossKind::Hinge);
  const LabeledInstance p{{1.0, 2.0}, +1}, n{{-1.0, -2.0}, -1};
  csogd_step(pos, p, 0.0, 0.3, fc, counts);
  csogd_step(neg, n, 0.0, 0.3, fc, counts);
  const auto& wp = std::get<LinearModel>(pos.model());
  const auto& wn = std::get<LinearModel>(neg.model());
  CHECK(wp.weights()[0] / wn.weights()[0] == doctest::Approx(19.0));
  CHECK(wp.bias() / -wn.bias() == doctest::Approx(19.0));
}

TEST_CASE("sum cost multipliers follow the running class fractions") {
  auto counts = HarmonizerState::static_ratio();
  const SumCosts sc{};
  CHECK(cost_multiplier(sc, +1, counts) == 1.0);
  for (int i = 0; i < 900; ++i) counts.record_step(-1, 1, 1, 1);
  CHECK(cost_multiplier(sc, +1, counts) == 1.0);
  for (int i = 0; i < 100; ++i) counts.record_step(+1, 1, 1, 1);
  CHECK(cost_multiplier(sc, +1, counts) == doctest::Approx(5.0));
  CHECK(cost_multiplier(sc, -1, counts) == doctest::Approx(0.5 / 0.9));
}

TEST_CASE("cost scheme validation") {
  CHECK_THROWS_AS(validate(CostScheme{FixedCosts{0.9, 0.2}}), ConfigError);
  CHECK_THROWS_AS(validate(CostScheme{FixedCosts{1.0, 0.0}}), ConfigError);
  CHECK_THROWS_AS(validate(CostScheme{SumCosts{0.0, 1.0}}), ConfigError);
  CHECK_NOTHROW(validate(CostScheme{FixedCosts{0.7, 0.3}}));
  CHECK_THROWS_AS(validate(ResampleScheme{ResampleKind::Under, 1.5, std::nullopt}), ConfigError);
  CHECK_THROWS_AS(validate(ResampleScheme{ResampleKind::Over, std::nullopt, 0.5}), ConfigError);
}

TEST_CASE("resample rates") {
  auto counts = HarmonizerState::static_ratio();
  const ResampleScheme over{ResampleKind::Over, std::nullopt, std::nullopt};
  const ResampleScheme under{ResampleKind::Under, std::nullopt, std::nullopt};
  const ResampleScheme hybrid{ResampleKind::Hybrid, std::nullopt, std::nullopt};
  CHECK(*resample_rate(over, +1, counts) == 1.0);
  for (int i = 0; i < 40; ++i) counts.record_step(-1, 1, 1, 1);
  for (int i = 0; i < 10; ++i) counts.record_step(+1, 1, 1, 1);
  CHECK(*resample_rate(over, +1, counts) == 4.0);
  CHECK_FALSE(resample_rate(over, -1, counts).has_value());
  CHECK(*resample_rate(under, -1, counts) == 0.25);
  CHECK_FALSE(resample_rate(under, +1, counts).has_value());
  CHECK(*resample_rate(hybrid, +1, counts) == 2.0);
  CHECK(*resample_rate(hybrid, -1, counts) == 0.5);
  const ResampleScheme fixed{ResampleKind::Hybrid, 0.3, 7.0};
  CHECK(*resample_rate(fixed, +1, counts) == 7.0);
  CHECK(*resample_rate(fixed, -1, counts) == 0.3);
}

TEST_CASE("unit Poisson rates are not the identity") {
  const auto data = test::random_binary(2000, 3, 0.5, 3);
  for (auto kind : {ResampleKind::Under, ResampleKind::Over}) {
    ResampleMethod m(linear(3), ResampleScheme{kind, 1.0, 1.0}, 5);
    int non_single = 0;
    for (const auto& inst : data->instances()) {
      const StepTrace s = m.learn(inst, m.score(inst.features), 0.3);
      non_single += s.alpha != 1.0;
    }
    CHECK(non_single > 300);
  }
}

TEST_CASE("auto over-sampling repeats minority instances at the running ratio") {
  const auto data = test::random_binary(30000, 3, 1.0 / 11.0, 9);
  ResampleMethod m(linear(3), ResampleScheme{ResampleKind::Over, std::nullopt, std::nullopt}, 1);
  double minority_repeats = 0.0, majority_steps = 0.0;
  int late_pos = 0;
  double late_sum = 0.0;
  std::size_t t = 0;
  for (const auto& inst : data->instances()) {
    const StepTrace s = m.learn(inst, m.score(inst.features), 0.3);
    ++t;
    if (inst.label > 0) {
      minority_repeats += s.alpha;
      if (t > 5000) {
        late_sum += s.alpha;
        ++late_pos;
      }
    } else {
      CHECK(s.alpha == 1.0);
      majority_steps += 1.0;
    }
  }
  CHECK(late_sum / late_pos == doctest::Approx(10.0).epsilon(0.05));
  // Expected update counts per class agree within 5%.
  CHECK(std::abs(minority_repeats / majority_steps - 1.0) < 0.05);
}

TEST_CASE("auto rates on a balanced stream give equal update mass") {
  const auto data = test::random_binary(10000, 3, 0.5, 10);
  for (auto kind : {ResampleKind::Under, ResampleKind::Over, ResampleKind::Hybrid}) {
    ResampleMethod m(linear(3), ResampleScheme{kind, std::nullopt, std::nullopt}, 2);
    double steps[2] = {0, 0};
    for (const auto& inst : data->instances()) {
      steps[binary_index(inst.label)] += m.learn(inst, m.score(inst.features), 0.3).alpha;
    }
    CHECK(std::abs(steps[1] / steps[0] - 1.0) < 0.05);
  }
}

TEST_CASE("baselines are deterministic for a fixed seed") {
  const auto data = test::random_binary(1500, 4, 0.15, 6);
  for (auto id : known_method_ids()) {
    auto a = make_binary_method(default_method_spec(id), linear(4), 99);
    auto b = make_binary_method(default_method_spec(id), linear(4), 99);
    for (const auto& inst : data->instances()) {
      drive(*a, inst);
      drive(*b, inst);
    }
    CHECK(std::get<LinearModel>(a->learner().model()) ==
          std::get<LinearModel>(b->learner().model()));
    CHECK(a->id() == id);
  }
}

TEST_CASE("method registry") {
  CHECK(known_method_ids().size() == 8);
  CHECK(is_known_method("hgd-dynamic"));
  CHECK_FALSE(is_known_method("xyz"));
  try {
    default_method_spec("xyz");
    FAIL("expected UnknownMethod");
  } catch (const UnknownMethod& e) {
    CHECK(e.id() == "xyz");
  }
  const auto cs = default_method_spec("csogd-cost");
  CHECK(std::get<FixedCosts>(cs.costs).c_p == 0.95);
  CHECK(std::holds_alternative<SumCosts>(default_method_spec("csogd-sum").costs));
  CHECK(default_method_spec("our").resample.kind == ResampleKind::Under);
  CHECK(default_method_spec("ohr").resample.kind == ResampleKind::Hybrid);
  MethodSpec bad = default_method_spec("csogd-cost");
  bad.costs = SumCosts{};
  CHECK_THROWS_AS(make_binary_method(bad, linear(2), 0), ConfigError);
}
