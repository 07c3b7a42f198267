#pragma once

#include <optional>
#include <vector>

#include "stochrel/ctmc.hpp"

namespace stochrel {

/// Exact solves are used up to this many states; larger chains fall back to
/// floating-point power iteration and are reported as approximate.
inline constexpr std::size_t kExactStationaryLimit = 2500;

/// Exact pi with pi G = 0 (off-diagonal rates of Q), sum pi = 1.
/// Throws on reducible chains.
Dist stationary(const RateKernel& q);
/// Exact pi with pi P = pi, sum pi = 1. Throws on reducible chains.
Dist stationary(const Kernel& p);

struct ApproxStationary {
  std::vector<double> pi;
  double residual = 0;
  std::size_t iterations = 0;
  bool converged = false;
};
ApproxStationary stationary_approx(const RateKernel& q, double tolerance = 1e-12, std::size_t max_iterations = 10'000'000);
ApproxStationary stationary_approx(const Kernel& p, double tolerance = 1e-12, std::size_t max_iterations = 10'000'000);

/// True when the positive-rate (resp. positive-probability) graph is strongly connected.
bool irreducible(const RateKernel& q);
bool irreducible(const Kernel& p);

struct StationaryComparison {
  /// True when the maximal preserved subrelation R* is nonempty, so that the
  /// comparison is backed by a preserved relation.
  bool conclusive = false;
  std::size_t iterations = 0;
  std::optional<Relation> r_star;
  bool approximate = false;
  std::optional<Dist> pi1, pi2;
  /// Direct flow decision under the original relation on the computed laws.
  std::optional<StDecision> decision;
  /// Decision under R* (only when conclusive).
  std::optional<StDecision> decision_r_star;
  std::optional<ApproxStationary> approx_pi1, approx_pi2;
  std::optional<ApproxDecision> approx_decision;

  bool related() const {
    return decision ? decision->related : (approx_decision ? approx_decision->related : false);
  }
  /// Related under R*, hence under R, with R* preserved by the chains.
  bool certified() const { return conclusive && decision_r_star && decision_r_star->related; }
};

/// Stationary laws compared directly under r and through the maximal
/// preserved subrelation R* of r.
/// `approximate` forces the floating-point path regardless of size.
StationaryComparison compare_stationary(const Relation& r, const RateKernel& q1, const RateKernel& q2,
                                        bool approximate = false);
StationaryComparison compare_stationary(const Relation& r, const Kernel& p1, const Kernel& p2, bool approximate = false);

}  // namespace stochrel
