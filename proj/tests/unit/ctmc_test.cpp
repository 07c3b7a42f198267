#include <gtest/gtest.h>

#include "generators.hpp"
#include "stochrel/builders.hpp"
#include "stochrel/ctmc.hpp"

namespace stochrel {
namespace {

RateKernel birth_death(const SpacePtr& s, const Rational& up, const Rational& down) {
  const auto n = s->size();
  std::vector<std::vector<Rational>> q(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i + 1 < n; ++i) q[i][i + 1] = up;
  for (std::size_t i = 1; i < n; ++i) q[i][i - 1] = down;
  return RateKernel::from_rates(s, q);
}

TEST(RateKernel, FromRatesSplitsTotalAndJump) {
  auto s = testing::labelled_space(3);
  auto q = RateKernel::from_rates(s, {{7, 1, 2}, {0, 0, 0}, {rational(1, 2), 0, 9}});
  EXPECT_EQ(q.q(0), 3);
  EXPECT_EQ(q.jump().at(0, 2), rational(2, 3));
  EXPECT_EQ(q.q(1), 0);
  EXPECT_EQ(q.jump().at(1, 1), 1);
  EXPECT_EQ(q.rate(2, 0), rational(1, 2));
  EXPECT_EQ(q.rate(0, StateSet{1, 2}), 3);
  EXPECT_THROW(RateKernel::from_rates(s, {{0, -1, 0}, {0, 0, 0}, {0, 0, 0}}), Error);
}

TEST(Uniformize, ZeroRatesGiveDiracRows) {
  auto s = testing::labelled_space(3);
  auto zero = RateKernel::from_rates(s, std::vector<std::vector<Rational>>(3, std::vector<Rational>(3, Rational(0))));
  auto u = uniformize(zero, zero);
  for (std::size_t x1 = 0; x1 < 3; ++x1) {
    for (std::size_t x2 = 0; x2 < 3; ++x2) {
      EXPECT_EQ(u.qbar(x1, x2), 1);
      EXPECT_EQ(u.hat_p1(x1, x2), Dist::dirac(s, x1));
      EXPECT_EQ(u.hat_p2(x1, x2), Dist::dirac(s, x2));
    }
  }
}

TEST(Uniformize, TwoStateByHand) {
  auto s = testing::labelled_space(2);
  auto q1 = RateKernel::from_rates(s, {{0, 2}, {1, 0}});
  auto q2 = RateKernel::from_rates(s, {{0, rational(1, 2)}, {3, 0}});
  auto u = uniformize(q1, q2);
  // x = (0, 1): qbar = 1 + 2 + 3 = 6.
  EXPECT_EQ(u.qbar(0, 1), 6);
  EXPECT_EQ(u.hat_p1(0, 1)[1], rational(2, 6));
  EXPECT_EQ(u.hat_p1(0, 1)[0], rational(4, 6));
  EXPECT_EQ(u.hat_p2(0, 1)[0], rational(3, 6));
  EXPECT_EQ(u.hat_p2(0, 1)[1], rational(3, 6));
}

// Property: rows are stochastic and qbar * hatP_i(x, {y}) = Q_i(x_i, {y}) off the diagonal.
TEST(Uniformize, RateIdentityOnRandomKernels) {
  std::mt19937_64 rng(51);
  for (int t = 0; t < 50; ++t) {
    auto s1 = testing::labelled_space(4, "a");
    auto s2 = testing::labelled_space(3, "b");
    auto q1 = testing::random_rate_kernel(rng, s1, 0.5);
    auto q2 = testing::random_rate_kernel(rng, s2, 0.5);
    auto u = uniformize(q1, q2);
    auto k1 = u.hat_kernel1();
    auto k2 = u.hat_kernel2();
    for (std::size_t x1 = 0; x1 < 4; ++x1) {
      for (std::size_t x2 = 0; x2 < 3; ++x2) {
        const auto h1 = u.hat_p1(x1, x2);
        const auto h2 = u.hat_p2(x1, x2);
        EXPECT_EQ(h1, k1.row_dist(x1 * 3 + x2));
        for (std::size_t y = 0; y < 4; ++y) {
          if (y != x1) EXPECT_EQ(u.qbar(x1, x2) * h1[y], q1.rate(x1, y));
        }
        for (std::size_t y = 0; y < 3; ++y) {
          if (y != x2) EXPECT_EQ(u.qbar(x1, x2) * h2[y], q2.rate(x2, y));
        }
        EXPECT_EQ(h2, k2.row_dist(x1 * 3 + x2));
      }
    }
  }
}

TEST(CtPreserves, EqualKernelsPreserveEquality) {
  std::mt19937_64 rng(52);
  auto s = testing::labelled_space(5);
  auto q = testing::random_rate_kernel(rng, s, 0.5);
  EXPECT_TRUE(ct_preserves(equality_relation(s, s), q, q).preserved);
}

TEST(CtPreserves, OrderedBirthDeathQueues) {
  auto s = make_space(StateSpace::range(0, 6));
  auto leq = coordinatewise_leq_relation(s, s, {1});
  auto fast = birth_death(s, rational(1, 3), 1);
  auto slow = birth_death(s, rational(1, 2), rational(2, 3));
  EXPECT_TRUE(ct_preserves(leq, fast, slow).preserved);
  EXPECT_TRUE(ct_subset_test(leq, fast, slow));
  EXPECT_FALSE(ct_preserves(leq, slow, fast).preserved);
  EXPECT_FALSE(ct_subset_test(leq, slow, fast));
}

// Property: uniformized flow test equals the countable-space subset criterion.
TEST(CtPreserves, AgreesWithSubsetCriterion) {
  std::mt19937_64 rng(53);
  int positives = 0;
  for (int t = 0; t < 400; ++t) {
    const auto n1 = static_cast<std::size_t>(testing::uniform_int(rng, 1, 5));
    const auto n2 = static_cast<std::size_t>(testing::uniform_int(rng, 1, 5));
    auto s1 = testing::labelled_space(n1, "a");
    auto s2 = testing::labelled_space(n2, "b");
    auto r = testing::random_relation(rng, s1, s2, 0.6);
    auto q1 = testing::random_rate_kernel(rng, s1, 0.4);
    auto q2 = testing::random_rate_kernel(rng, s2, 0.4);
    const bool flow = ct_preserves(r, q1, q2).preserved;
    ASSERT_EQ(flow, ct_subset_test(r, q1, q2));
    positives += flow;
  }
  EXPECT_GT(positives, 20);
}

TEST(CtSubsetTest, ZeroRatesAreVacuouslyPreserved) {
  std::mt19937_64 rng(54);
  auto s = testing::labelled_space(4);
  auto zero = RateKernel::from_rates(s, std::vector<std::vector<Rational>>(4, std::vector<Rational>(4, Rational(0))));
  auto r = testing::random_relation(rng, s, s, 0.5);
  EXPECT_TRUE(ct_subset_test(r, zero, zero));
  EXPECT_TRUE(ct_preserves(r, zero, zero).preserved);
}

TEST(CtSubsetTest, ViolationWitnessIsReal) {
  auto s = make_space(StateSpace::range(0, 3));
  auto leq = coordinatewise_leq_relation(s, s, {1});
  auto v = ct_subset_violation(leq, birth_death(s, 1, 1), birth_death(s, rational(1, 2), 1));
  ASSERT_TRUE(v.has_value());
  ASSERT_TRUE(leq.contains(v->left, v->right));
  EXPECT_TRUE(v->right_inequality);
  auto q1 = birth_death(s, 1, 1);
  auto q2 = birth_death(s, rational(1, 2), 1);
  EXPECT_GT(q1.rate(v->left, v->set), q2.rate(v->right, conjugate_set(leq, v->set, Side::right)));
}

// For order relations, upper and lower sets suffice.
TEST(CtSubsetTest, OrderSetsGiveSameAnswer) {
  std::mt19937_64 rng(55);
  auto s = make_space(StateSpace::grid(Box{{0, 0}, {1, 1}}));
  auto leq = coordinatewise_leq_relation(s, s, {1, 2});
  for (int t = 0; t < 300; ++t) {
    auto q1 = testing::random_rate_kernel(rng, s, 0.4);
    auto q2 = testing::random_rate_kernel(rng, s, 0.4);
    ASSERT_EQ(ct_subset_test(leq, q1, q2, SubsetFamily::all), ct_subset_test(leq, q1, q2, SubsetFamily::order_sets));
  }
}

TEST(CtSubsetTest, RejectsLargeSpaces) {
  auto s = testing::labelled_space(21);
  auto q = birth_death(s, 1, 1);
  EXPECT_THROW(ct_subset_test(equality_relation(s, s), q, q), Error);
}

TEST(CtSubrelation, PreservedRelationGivesSingleStep) {
  auto s = make_space(StateSpace::range(0, 5));
  auto leq = coordinatewise_leq_relation(s, s, {1});
  auto trace = ct_subrelation(leq, birth_death(s, rational(1, 3), 1), birth_death(s, rational(1, 2), 1));
  EXPECT_EQ(trace.steps.size(), 1u);
  EXPECT_TRUE(trace.converged);
}

// Property: same iterates as the discrete subrelation on materialized hat kernels
// (relation lifted to the product space on the left, S2 on the right).
TEST(CtSubrelation, DecreasingAndFixedPointPreserved) {
  std::mt19937_64 rng(56);
  for (int t = 0; t < 100; ++t) {
    auto s = testing::labelled_space(4);
    auto r = testing::random_relation(rng, s, s, 0.6);
    auto q1 = testing::random_rate_kernel(rng, s, 0.5);
    auto q2 = testing::random_rate_kernel(rng, s, 0.5);
    auto a = ct_subrelation(r, q1, q2, {RecheckStrategy::all_pairs, std::nullopt});
    auto b = ct_subrelation(r, q1, q2, {RecheckStrategy::worklist, std::nullopt});
    ASSERT_EQ(a.steps.size(), b.steps.size());
    for (std::size_t k = 0; k < a.steps.size(); ++k) ASSERT_EQ(a.steps[k], b.steps[k]);
    for (std::size_t k = 0; k + 1 < a.steps.size(); ++k) EXPECT_TRUE(is_subset(a.steps[k + 1], a.steps[k]));
    EXPECT_TRUE(ct_preserves(a.fixed_point(), q1, q2).preserved);
    EXPECT_TRUE(ct_subset_test(a.fixed_point(), q1, q2));
    // Independent recomputation of each step via the materialized hat kernels.
    auto u = uniformize(q1, q2);
    auto k1 = u.hat_kernel1();
    auto k2 = u.hat_kernel2();
    for (std::size_t k = 0; k + 1 < a.steps.size(); ++k) {
      const auto& cur = a.steps[k];
      Relation next(s, s);
      for (auto [x1, x2] : cur.pairs()) {
        if (st_related(cur, k1.row_dist(x1 * 4 + x2), k2.row_dist(x1 * 4 + x2)).related) next.set(x1, x2);
      }
      ASSERT_EQ(next, a.steps[k + 1]);
    }
  }
}

TEST(CtCoupling, SimulatedPathsStayInRelation) {
  std::mt19937_64 rng(57);
  auto s = make_space(StateSpace::range(0, 5));
  auto leq = coordinatewise_leq_relation(s, s, {1});
  auto q1 = birth_death(s, rational(1, 3), 1);
  auto q2 = birth_death(s, rational(1, 2), rational(2, 3));
  auto c = ct_coupling(leq, q1, q2);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::mt19937_64 sim(seed);
    auto path = simulate_ct_coupling(c, 2, 3, 2000, sim);
    double last = 0;
    for (const auto& p : path) {
      ASSERT_TRUE(leq.contains(p.left, p.right));
      ASSERT_GE(p.time, last);
      last = p.time;
    }
  }
  // Rates per product state are the uniformization clock.
  auto u = uniformize(q1, q2);
  EXPECT_EQ(c.rate[2 * 6 + 3], u.qbar(2, 3));
}

TEST(CtCoupling, NonPreservingInputThrows) {
  auto s = make_space(StateSpace::range(0, 3));
  auto leq = coordinatewise_leq_relation(s, s, {1});
  EXPECT_THROW(ct_coupling(leq, birth_death(s, 1, 1), birth_death(s, rational(1, 2), 1)), NotPreservedError);
}

}  // namespace
}  // namespace stochrel
