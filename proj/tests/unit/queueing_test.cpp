#include <gtest/gtest.h>

#include <algorithm>

#include "stochrel/builders.hpp"
#include "stochrel/queueing.hpp"

namespace stochrel {
namespace {

TEST(Alpha, Examples) {
  EXPECT_EQ(alpha_eval(0, Point{2, 3}), 5);
  EXPECT_EQ(alpha_eval(2, Point{2, 3}), 3);
  EXPECT_EQ(alpha_eval(1, Point{4, 4}), 7);
  EXPECT_EQ(alpha_eval(9, Point{-1, -2}), -1);
}

TEST(Alpha, PointwisePropertiesOnGrid) {
  auto rep = alpha_properties(-5, 15, 5);
  EXPECT_TRUE(rep.passes());
  EXPECT_EQ(rep.points_checked, 21u * 21u * 6u);
  ASSERT_EQ(rep.checks_per_item.size(), 6u);
  for (auto c : rep.checks_per_item) EXPECT_GT(c, 0u);
}

TEST(ClosedForm, Examples) {
  EXPECT_TRUE(queueing_closed_form(0, Point{1, 1}, Point{0, 2}));
  // With n = 0 the second condition reads max(x) <= |y| when y >= 0.
  EXPECT_TRUE(queueing_closed_form(0, Point{0, 2}, Point{1, 1}));
  EXPECT_FALSE(queueing_closed_form(1, Point{0, 2}, Point{1, 1}));
  EXPECT_FALSE(queueing_closed_form(2, Point{0, 2}, Point{1, 1}));
  EXPECT_TRUE(queueing_closed_form(1, Point{0, 3}, Point{1, 3}));
  EXPECT_FALSE(queueing_closed_form(0, Point{3, 0}, Point{1, 1}));
}

// Property: the closed-form relations decrease in n and all contain weak majorization.
TEST(ClosedForm, AntitoneInN) {
  for (std::int64_t n = 0; n < 8; ++n) {
    for (std::int64_t a = 0; a <= 8; ++a) {
      for (std::int64_t b = 0; b <= 8; ++b) {
        for (std::int64_t c = 0; c <= 8; ++c) {
          for (std::int64_t d = 0; d <= 8; ++d) {
            const Point x{a, b}, y{c, d};
            if (queueing_closed_form(n + 1, x, y)) ASSERT_TRUE(queueing_closed_form(n, x, y));
            if (weakly_majorized(x, y)) ASSERT_TRUE(queueing_closed_form(n, x, y));
            if (n == 7 && std::min(c, d) <= n + 1) ASSERT_EQ(queueing_closed_form(n + 1, x, y), weakly_majorized(x, y));
          }
        }
      }
    }
  }
}

TEST(Reproduce, SmallCapacityMatchesOnSafeRegion) {
  auto rep = reproduce_queueing(rational(2, 5), rational(3, 10), 10, 3, 6);
  ASSERT_EQ(rep.iterates.size(), 4u);
  for (const auto& it : rep.iterates) {
    EXPECT_TRUE(it.match()) << "n=" << it.n;
    EXPECT_EQ(it.safe_limit, 10 - static_cast<std::int64_t>(it.n) - 1);
    EXPECT_GT(it.safe_pairs_checked, 0u);
  }
  EXPECT_TRUE(rep.converged);
}

TEST(Reproduce, SymmetricArrivals) {
  auto rep = reproduce_queueing(rational(1, 2), rational(1, 2), 9, 2, 5);
  for (const auto& it : rep.iterates) EXPECT_TRUE(it.match()) << "n=" << it.n;
}

TEST(Reproduce, RejectsSmallCapacity) {
  EXPECT_THROW(reproduce_queueing(rational(2, 5), rational(3, 10), 6, 3), Error);
}

}  // namespace
}  // namespace stochrel
