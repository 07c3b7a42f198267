#include "stochrel/queueing.hpp"

#include <algorithm>

#include "stochrel/builders.hpp"

namespace stochrel {

QueueingModels queueing_models(const Rational& lambda1, const Rational& lambda2, std::int64_t cap) {
  if (lambda1 <= 0 || lambda1 >= 1 || lambda2 <= 0 || lambda2 >= 1) throw Error("arrival rates must lie in (0,1)");
  if (cap < 2) throw Error("capacity must be at least 2");
  const std::string l1 = to_string(lambda1);
  const std::string l2 = to_string(lambda2);
  const std::string both = to_string(lambda1 + lambda2);
  Box box{{0, 0}, {cap, cap}};

  QueueingModels out;
  out.independent.m = 2;
  out.independent.box = box;
  out.independent.rates = {
      {{0, 1}, parse_rate(l1)},
      {{0, 2}, parse_rate(l2)},
      {{1, 0}, parse_rate("ind(x[1] > 0)")},
      {{2, 0}, parse_rate("ind(x[2] > 0)")},
  };
  out.load_balanced.m = 2;
  out.load_balanced.box = box;
  out.load_balanced.rates = {
      {{0, 1}, parse_rate(both + "*ind(x[1] < x[2]) + " + l1 + "*ind(x[1] == x[2])")},
      {{0, 2}, parse_rate(both + "*ind(x[1] > x[2]) + " + l2 + "*ind(x[1] == x[2])")},
      {{1, 0}, parse_rate("ind(x[1] > 0)")},
      {{2, 0}, parse_rate("ind(x[2] > 0)")},
  };
  return out;
}

Rational alpha_eval(std::int64_t n, const Point& x) {
  return Rational(static_cast<long>(std::max({x[0], x[1], x[0] + x[1] - n})));
}

bool queueing_closed_form(std::int64_t n, const Point& x, const Point& y) {
  const auto sx = x[0] + x[1];
  const auto sy = y[0] + y[1];
  const auto slack = std::max<std::int64_t>(std::min(y[0], y[1]) - n, 0);
  return sx <= sy && std::max(x[0], x[1]) <= std::max(y[0], y[1]) + slack;
}

AlphaReport alpha_properties(std::int64_t lo, std::int64_t hi, std::int64_t n_max) {
  AlphaReport rep;
  rep.lo = lo;
  rep.hi = hi;
  rep.n_max = n_max;
  rep.checks_per_item.assign(6, 0);
  auto a = [](std::int64_t n, std::int64_t x1, std::int64_t x2) { return std::max({x1, x2, x1 + x2 - n}); };
  auto fail = [&](int item, std::int64_t n, std::int64_t x1, std::int64_t x2, int k) {
    rep.violations.push_back({item, n, {x1, x2}, k});
  };
  for (std::int64_t n = 0; n <= n_max; ++n) {
    for (std::int64_t x1 = lo; x1 <= hi; ++x1) {
      for (std::int64_t x2 = lo; x2 <= hi; ++x2) {
        ++rep.points_checked;
        const std::int64_t s = x1 + x2;
        // (i)
        ++rep.checks_per_item[0];
        if (a(n, x1, x2) != s - std::min({x1, x2, n})) fail(1, n, x1, x2, 0);
        // (ii)
        for (int k = 1; k <= 2; ++k) {
          ++rep.checks_per_item[1];
          const auto lhs = k == 1 ? a(n, x1 - 1, x2) : a(n, x1, x2 - 1);
          if (lhs > a(n + 1, x1, x2)) fail(2, n, x1, x2, k);
        }
        // (iii)
        ++rep.checks_per_item[2];
        {
          const bool lhs = a(n, x1 + 1, x2) > a(n, x1, x2 + 1);
          const bool rhs = x1 > std::max(x2, s - n);
          if (lhs != rhs) fail(3, n, x1, x2, 0);
        }
        // (iv)
        ++rep.checks_per_item[3];
        {
          const bool lhs = a(n, x1 - 1, x2) < a(n, x1, x2 - 1);
          const bool rhs = x1 > std::max(x2, s - n - 1);
          if (lhs != rhs) fail(4, n, x1, x2, 0);
        }
        // (v) and (vi)
        for (int k = 1; k <= 2; ++k) {
          const std::int64_t xk = k == 1 ? x1 : x2;
          if (xk == std::max(x1, x2)) {
            ++rep.checks_per_item[4];
            const auto up = k == 1 ? a(n, x1 + 1, x2) : a(n, x1, x2 + 1);
            if (!(up > a(n, x1, x2))) fail(5, n, x1, x2, k);
          }
          if (xk == std::min(x1, x2)) {
            ++rep.checks_per_item[5];
            const auto down = k == 1 ? a(n, x1 - 1, x2) : a(n, x1, x2 - 1);
            if (down != a(n + 1, x1, x2)) fail(6, n, x1, x2, k);
          }
        }
      }
    }
  }
  return rep;
}

namespace {

constexpr std::size_t kMaxDiffs = 20;

std::int64_t max_coord(const Point& p) { return *std::max_element(p.begin(), p.end()); }

WmComparison compare_with_wm(const Relation& r, std::size_t n, std::int64_t limit) {
  WmComparison out;
  out.n = n;
  out.limit = limit;
  const auto& s1 = r.left();
  const auto& s2 = r.right();
  for (std::size_t i = 0; i < s1.size(); ++i) {
    if (max_coord(s1.point(i)) > limit) continue;
    for (std::size_t j = 0; j < s2.size(); ++j) {
      if (max_coord(s2.point(j)) > limit) continue;
      ++out.pairs_checked;
      const bool computed = r.contains(i, j);
      if (computed != weakly_majorized(s1.point(i), s2.point(j))) {
        ++out.mismatches;
        if (out.diffs.size() < kMaxDiffs) out.diffs.push_back({s1.point(i), s2.point(j), computed});
      }
    }
  }
  return out;
}

}  // namespace

bool QueueingReport::all_match() const {
  return std::all_of(iterates.begin(), iterates.end(), [](const IterateMatch& m) { return m.match(); });
}

QueueingReport reproduce_queueing(const Rational& lambda1, const Rational& lambda2, std::int64_t cap,
                                  std::size_t n_max, std::int64_t wm_limit) {
  if (cap < static_cast<std::int64_t>(n_max) + 4) throw Error("capacity must be at least n_max + 4");
  const auto models = queueing_models(lambda1, lambda2, cap);
  const auto space = models.independent.space();
  const auto q_lb = to_rate_kernel(models.load_balanced, space);
  const auto q_ind = to_rate_kernel(models.independent, space);
  const auto r_sum = sum_leq_relation(space, space);
  const auto trace = ct_subrelation(r_sum, q_lb, q_ind);

  QueueingReport rep;
  rep.lambda1 = lambda1;
  rep.lambda2 = lambda2;
  rep.cap = cap;
  rep.n_max = n_max;
  rep.converged = trace.converged;
  rep.fixed_point_step = trace.steps.size() - 1;

  for (std::size_t n = 0; n <= n_max; ++n) {
    const Relation& it = trace.iterate(n);
    IterateMatch m;
    m.n = n;
    m.safe_limit = cap - static_cast<std::int64_t>(n) - 1;
    m.iterate_pairs = it.count();
    for (std::size_t i = 0; i < space->size(); ++i) {
      const Point& x = space->point(i);
      const bool x_safe = max_coord(x) <= m.safe_limit;
      for (std::size_t j = 0; j < space->size(); ++j) {
        const Point& y = space->point(j);
        const bool safe = x_safe && max_coord(y) <= m.safe_limit;
        const bool computed = it.contains(i, j);
        const bool expected = queueing_closed_form(static_cast<std::int64_t>(n), x, y);
        if (safe) ++m.safe_pairs_checked;
        if (computed == expected) continue;
        if (safe) {
          ++m.safe_mismatches;
          if (m.diffs.size() < kMaxDiffs) m.diffs.push_back({x, y, computed});
        } else {
          ++m.outside_mismatches;
        }
      }
    }
    rep.iterates.push_back(std::move(m));
  }
  rep.fixed_point_vs_wm = compare_with_wm(trace.fixed_point(), rep.fixed_point_step, cap - static_cast<std::int64_t>(n_max) - 1);
  rep.iterate_vs_wm = compare_with_wm(trace.iterate(n_max), n_max, wm_limit);
  return rep;
}

}  // namespace stochrel
