#pragma once

#include <optional>
#include <vector>

#include "stochrel/preservation.hpp"

namespace stochrel {

/// R^(0) ⊋ R^(1) ⊋ ... ⊋ R^(k) with R^(k) the fixed point (when converged).
/// removed[n] holds the pairs dropped from steps[n] to get steps[n+1].
struct SubrelationTrace {
  std::vector<Relation> steps;
  std::vector<std::vector<PairFailure>> removed;
  bool converged = false;

  const Relation& fixed_point() const { return steps.back(); }
  /// R^(n); once the fixed point is reached every later iterate equals it.
  const Relation& iterate(std::size_t n) const { return steps[std::min(n, steps.size() - 1)]; }
};

enum class RecheckStrategy {
  /// Re-test every surviving pair each round.
  all_pairs,
  /// Re-test only pairs whose row supports touched a removed pair.
  worklist,
};

struct SubrelationOptions {
  RecheckStrategy strategy = RecheckStrategy::worklist;
  /// Stop after this many rounds even without convergence.
  std::optional<std::size_t> max_steps;
};

/// Discrete-time subrelation iteration R^(n+1) = {x in R^(n) : P1(x1,.) ~st P2(x2,.) w.r.t. R^(n)}.
SubrelationTrace subrelation(const Relation& r, const Kernel& p1, const Kernel& p2, const SubrelationOptions& opts = {});

}  // namespace stochrel
