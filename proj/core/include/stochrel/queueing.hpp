#pragma once

#include <string>
#include <vector>

#include "stochrel/population.hpp"

namespace stochrel {

/// Two parallel unit-rate queues with arrival rates lambda1, lambda2 on [0,N]^2:
/// independent routing, and join-the-shortest-queue load balancing.
struct QueueingModels {
  PopulationModel load_balanced;
  PopulationModel independent;
};

QueueingModels queueing_models(const Rational& lambda1, const Rational& lambda2, std::int64_t cap);

/// alpha_n(x) = max(x1, x2, |x| - n) on Z^2.
Rational alpha_eval(std::int64_t n, const Point& x);

/// |x| <= |y| and max(x) <= max(y) + (min(y) - n)^+.
bool queueing_closed_form(std::int64_t n, const Point& x, const Point& y);

struct AlphaViolation {
  int item;  // 1..6
  std::int64_t n;
  Point x;
  int k;     // coordinate involved, 0 when not applicable
};

struct AlphaReport {
  std::int64_t lo = 0, hi = 0, n_max = 0;
  std::size_t points_checked = 0;
  std::vector<std::size_t> checks_per_item;  // 6 entries
  std::vector<AlphaViolation> violations;
  bool passes() const { return violations.empty(); }
};

/// Checks the six pointwise properties of alpha_n on [lo,hi]^2 for n = 0..n_max.
AlphaReport alpha_properties(std::int64_t lo, std::int64_t hi, std::int64_t n_max);

struct PairDiff {
  Point x;
  Point y;
  bool computed;  // membership in the computed iterate
};

struct IterateMatch {
  std::size_t n = 0;
  std::int64_t safe_limit = 0;  // all coordinates <= safe_limit
  std::size_t iterate_pairs = 0;
  std::size_t safe_pairs_checked = 0;
  std::size_t safe_mismatches = 0;
  std::size_t outside_mismatches = 0;
  std::vector<PairDiff> diffs;  // first few safe-region mismatches
  bool match() const { return safe_mismatches == 0; }
};

struct WmComparison {
  std::size_t n = 0;
  std::int64_t limit = 0;
  std::size_t pairs_checked = 0;
  std::size_t mismatches = 0;
  std::vector<PairDiff> diffs;
  bool match() const { return mismatches == 0; }
};

struct QueueingReport {
  Rational lambda1, lambda2;
  std::int64_t cap = 0;
  std::size_t n_max = 0;
  std::vector<IterateMatch> iterates;
  bool converged = false;
  std::size_t fixed_point_step = 0;
  /// Fixed point against weak majorization on the safe region of n_max.
  WmComparison fixed_point_vs_wm;
  /// Iterate n_max against weak majorization on max-coordinate <= wm_limit.
  WmComparison iterate_vs_wm;
  bool all_match() const;
};

/// Runs the continuous-time subrelation iteration from R^sum for the
/// load-balanced (left) and independent (right) models and compares the
/// iterates with the closed form.
QueueingReport reproduce_queueing(const Rational& lambda1, const Rational& lambda2, std::int64_t cap,
                                  std::size_t n_max, std::int64_t wm_limit = 20);

}  // namespace stochrel
