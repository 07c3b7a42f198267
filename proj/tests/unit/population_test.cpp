#include <gtest/gtest.h>

#include "generators.hpp"
#include "stochrel/builders.hpp"
#include "stochrel/queueing.hpp"

namespace stochrel {
namespace {

TEST(RateExpr, EvaluatesExamples) {
  const Point x{3, 5};
  EXPECT_EQ(parse_rate("2").evaluate(x), 2);
  EXPECT_EQ(parse_rate("1/2 * x[1]").evaluate(x), rational(3, 2));
  EXPECT_EQ(parse_rate("x[2] - x[1] * 2").evaluate(x), -1);
  EXPECT_EQ(parse_rate("min(x[1], x[2]) + max(1, 0)").evaluate(x), 4);
  EXPECT_EQ(parse_rate("ind(x[1] < x[2])").evaluate(x), 1);
  EXPECT_EQ(parse_rate("ind(x[1] >= x[2])").evaluate(x), 0);
  EXPECT_EQ(parse_rate("ind(x[1] == 3) * (7/10)").evaluate(x), rational(7, 10));
  EXPECT_EQ(parse_rate("  (1 + 2) * 3 ").evaluate(x), 9);
  EXPECT_EQ(parse_rate("1 - 2 - 3").evaluate(x), -4);
  EXPECT_EQ(parse_rate("x[2]").max_index(), 2u);
  EXPECT_EQ(parse_rate("4/6").evaluate(x), rational(2, 3));
}

TEST(RateExpr, RejectsMalformedInput) {
  for (const char* bad : {"", "1 +", "x[0]", "x[1", "0.5", "1/0", "min(1)", "ind(1)", "ind(1 <> 2)", "foo(1)", "(1", "1 2", "x[-1]"}) {
    EXPECT_THROW(parse_rate(bad), ParseError) << bad;
  }
  try {
    parse_rate("1 + * 2");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position, 4u);
  }
  EXPECT_THROW(parse_rate("x[3]").evaluate(Point{1, 2}), Error);
}

// Property: print-parse round trip preserves the tree.
TEST(RateExpr, RoundTrip) {
  std::mt19937_64 rng(71);
  for (int t = 0; t < 500; ++t) {
    auto e = testing::random_rate_expr(rng);
    auto back = parse_rate(e.to_string());
    ASSERT_EQ(back, e) << e.to_string();
    ASSERT_EQ(back.to_string(), e.to_string());
  }
  for (const char* src : {"1 - (2 - 3)", "(1 + 2) * 3", "1 - 2 + 3", "min(x[1] - 1, 2) * max(0, x[2])",
                          "ind(x[1] + 1 <= 2 * x[2])"}) {
    auto e = parse_rate(src);
    EXPECT_EQ(parse_rate(e.to_string()), e) << src;
    EXPECT_EQ(parse_rate(e.to_string()).evaluate(Point{2, 3}), e.evaluate(Point{2, 3})) << src;
  }
}

TEST(PopulationModel, ValidationErrors) {
  PopulationModel m;
  m.m = 2;
  m.box = Box{{0, 0}, {2, 2}};
  m.rates[{1, 1}] = parse_rate("1");
  EXPECT_THROW(m.validate(), Error);
  m.rates.clear();
  m.rates[{0, 3}] = parse_rate("1");
  EXPECT_THROW(m.validate(), Error);
  m.rates.clear();
  m.rates[{0, 1}] = parse_rate("x[3]");
  EXPECT_THROW(m.validate(), Error);
  m.rates.clear();
  m.rates[{0, 1}] = parse_rate("1 - x[1]");
  EXPECT_THROW(m.validate(), Error);
  m.rates.clear();
  m.rates[{0, 1}] = parse_rate("x[1]");
  m.box = Box{{0}, {2}};
  EXPECT_THROW(m.validate(), Error);
}

TEST(PopulationModel, DisplacementAndTruncation) {
  EXPECT_EQ(displacement({0, 2}, 2), (Point{0, 1}));
  EXPECT_EQ(displacement({1, 0}, 2), (Point{-1, 0}));
  EXPECT_EQ(displacement({2, 1}, 3), (Point{1, -1, 0}));
  PopulationModel m;
  m.m = 1;
  m.box = Box{{0}, {2}};
  m.rates[{0, 1}] = parse_rate("3");
  m.rates[{1, 0}] = parse_rate("x[1]");
  m.validate();
  EXPECT_EQ(m.rate({0, 1}, Point{2}), 0);
  EXPECT_EQ(m.rate({0, 1}, Point{1}), 3);
  EXPECT_EQ(m.rate({1, 0}, Point{0}), 0);
  auto q = to_rate_kernel(m);
  EXPECT_EQ(q.q(0), 3);
  EXPECT_EQ(q.q(1), 4);
  EXPECT_EQ(q.q(2), 2);
  EXPECT_EQ(q.rate(1, 0), 1);
  EXPECT_EQ(q.rate(1, 2), 3);
}

TEST(PopulationModel, QueueingModelRates) {
  auto models = queueing_models(rational(2, 5), rational(3, 10), 4);
  const auto& lb = models.load_balanced;
  const auto& ind = models.independent;
  EXPECT_EQ(lb.rate({0, 1}, Point{0, 1}), rational(7, 10));
  EXPECT_EQ(lb.rate({0, 2}, Point{0, 1}), 0);
  EXPECT_EQ(lb.rate({0, 1}, Point{1, 1}), rational(2, 5));
  EXPECT_EQ(lb.rate({0, 2}, Point{1, 1}), rational(3, 10));
  EXPECT_EQ(lb.rate({0, 1}, Point{4, 4}), 0);
  EXPECT_EQ(ind.rate({0, 2}, Point{3, 0}), rational(3, 10));
  EXPECT_EQ(ind.rate({0, 1}, Point{4, 0}), 0);
  EXPECT_EQ(ind.rate({1, 0}, Point{0, 2}), 0);
  EXPECT_EQ(ind.rate({2, 0}, Point{0, 2}), 1);
  EXPECT_THROW(queueing_models(1, rational(1, 2), 4), Error);
  EXPECT_THROW(queueing_models(rational(1, 2), rational(1, 2), 1), Error);
}

// Property: the index-subset criterion agrees with the flow test on random models.
TEST(PopulationCheck, AgreesWithCtPreserves) {
  std::mt19937_64 rng(72);
  int positives = 0;
  const std::vector<RelationKind> kinds{RelationKind::coordinatewise_leq, RelationKind::sum_leq,
                                        RelationKind::weak_majorization, RelationKind::equality};
  for (int t = 0; t < 150; ++t) {
    auto m1 = testing::random_population_model(rng, 2);
    auto m2 = testing::random_population_model(rng, 2);
    auto s = m1.space();
    const auto kind = kinds[static_cast<std::size_t>(t) % kinds.size()];
    RelationParams params;
    params.coords = {1, 2};
    auto r = build_relation(kind, s, s, params);
    auto rep = population_check(r, m1, m2);
    auto flow = ct_preserves(r, to_rate_kernel(m1, s), to_rate_kernel(m2, s));
    ASSERT_EQ(rep.preserved, flow.preserved) << t;
    EXPECT_FALSE(rep.used_fallback);
    positives += rep.preserved;
  }
  EXPECT_GT(positives, 3);
}

// Property: faster service and slower arrivals on the left preserve the coordinatewise order.
TEST(PopulationCheck, OrderedIndependentColoniesArePreserved) {
  std::mt19937_64 rng(76);
  for (int t = 0; t < 40; ++t) {
    auto [m1, m2] = testing::random_ordered_pair(rng, 3);
    auto s = m1.space();
    auto leq = coordinatewise_leq_relation(s, s, {1, 2});
    ASSERT_TRUE(population_check(leq, m1, m2).preserved);
    ASSERT_TRUE(ct_preserves(leq, to_rate_kernel(m1, s), to_rate_kernel(m2, s)).preserved);
    ASSERT_TRUE(partial_order_check({1, 2}, m1, m2).preserved);
  }
}

TEST(PopulationCheck, RecoversPreservedSingleQueueOrder) {
  PopulationModel fast, slow;
  for (auto* m : {&fast, &slow}) {
    m->m = 1;
    m->box = Box{{0}, {5}};
    m->rates[{1, 0}] = parse_rate("ind(x[1] > 0)");
  }
  fast.rates[{0, 1}] = parse_rate("1/3");
  slow.rates[{0, 1}] = parse_rate("1/2");
  auto s = fast.space();
  auto leq = coordinatewise_leq_relation(s, s, {1});
  EXPECT_TRUE(population_check(leq, fast, slow).preserved);
  auto bad = population_check(leq, slow, fast);
  EXPECT_FALSE(bad.preserved);
  ASSERT_FALSE(bad.failures.empty());
  EXPECT_TRUE(leq.contains(bad.failures[0].left, bad.failures[0].right));
}

TEST(PopulationCheck, QueueingPairFailsCoordinatewiseOrder) {
  auto models = queueing_models(rational(2, 5), rational(3, 10), 5);
  auto s = models.load_balanced.space();
  auto rep = population_check(coordinatewise_leq_relation(s, s, {1, 2}), models.load_balanced, models.independent);
  EXPECT_FALSE(rep.preserved);
  EXPECT_FALSE(rep.failures.empty());
}

TEST(PopulationCheck, LargeDimensionFallsBack) {
  PopulationModel m;
  m.m = 4;
  m.box = Box{{0, 0, 0, 0}, {1, 1, 1, 1}};
  m.rates[{0, 1}] = parse_rate("1");
  m.rates[{4, 0}] = parse_rate("x[4]");
  auto s = m.space();
  auto rep = population_check(equality_relation(s, s), m, m);
  EXPECT_TRUE(rep.used_fallback);
  EXPECT_TRUE(rep.preserved);
}

// Property: the per-colony criterion equals the generic check under <=_M.
TEST(PartialOrderCheck, AgreesWithPopulationCheck) {
  std::mt19937_64 rng(73);
  const std::vector<std::vector<std::size_t>> coord_sets{{}, {1}, {2}, {1, 2}};
  int positives = 0;
  for (int t = 0; t < 200; ++t) {
    auto m1 = testing::random_population_model(rng, 2, 0.5);
    auto m2 = testing::random_population_model(rng, 2, 0.5);
    const auto& coords = coord_sets[static_cast<std::size_t>(t) % coord_sets.size()];
    auto s = m1.space();
    auto r = coordinatewise_leq_relation(s, s, coords);
    auto po = partial_order_check(coords, m1, m2);
    ASSERT_EQ(po.preserved, population_check(r, m1, m2).preserved) << t;
    positives += po.preserved;
  }
  EXPECT_GT(positives, 10);
}

TEST(PartialOrderCheck, EmptyCoordinateSetIsAlwaysPreserved) {
  std::mt19937_64 rng(74);
  auto m1 = testing::random_population_model(rng, 2);
  auto m2 = testing::random_population_model(rng, 2);
  EXPECT_TRUE(partial_order_check({}, m1, m2).preserved);
}

TEST(PartialOrderCheck, RejectsUnsharedCoordinate) {
  std::mt19937_64 rng(75);
  auto m1 = testing::random_population_model(rng, 2);
  EXPECT_THROW(partial_order_check({3}, m1, m1), Error);
  EXPECT_THROW(partial_order_check({0}, m1, m1), Error);
}

}  // namespace
}  // namespace stochrel
