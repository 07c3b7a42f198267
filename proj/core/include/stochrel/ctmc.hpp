#pragma once

#include <random>
#include <vector>

#include "stochrel/subrelation.hpp"

namespace stochrel {

/// Rate kernel Q(x, dy) = q(x) P(x, dy) on a finite space.
class RateKernel {
 public:
  RateKernel(std::vector<Rational> q, Kernel jump);
  /// From an off-diagonal rate matrix; diagonal entries are ignored. Rows
  /// with zero total rate get a Dirac jump kernel.
  static RateKernel from_rates(SpacePtr space, const std::vector<std::vector<Rational>>& rates);
  static RateKernel from_sparse_rates(SpacePtr space, std::vector<KernelRow> rates);

  const StateSpace& space() const { return jump_.from(); }
  const SpacePtr& space_ptr() const { return jump_.from_ptr(); }
  std::size_t size() const { return q_.size(); }
  const Rational& q(std::size_t x) const { return q_[x]; }
  const std::vector<Rational>& q() const { return q_; }
  const Kernel& jump() const { return jump_; }

  /// Q(x, {y}) = q(x) P(x, {y}), including a possible self-jump component.
  Rational rate(std::size_t x, std::size_t y) const;
  /// Q(x, B)
  Rational rate(std::size_t x, const StateSet& set) const;

 private:
  std::vector<Rational> q_;
  Kernel jump_;
};

/// Local uniformization with the state-dependent clock qbar(x) = 1 + q1(x1) + q2(x2).
class UniformizedPair {
 public:
  UniformizedPair(const RateKernel& q1, const RateKernel& q2);

  Rational qbar(std::size_t x1, std::size_t x2) const { return 1 + q1_.q(x1) + q2_.q(x2); }
  /// hat P_1((x1, x2), .) as a distribution on S1.
  Dist hat_p1(std::size_t x1, std::size_t x2) const;
  /// hat P_2((x1, x2), .) as a distribution on S2.
  Dist hat_p2(std::size_t x1, std::size_t x2) const;
  /// Materialized kernels from the product space; only for small spaces.
  Kernel hat_kernel1() const;
  Kernel hat_kernel2() const;
  SpacePtr product_space() const;

 private:
  RateKernel q1_;
  RateKernel q2_;
};

UniformizedPair uniformize(const RateKernel& q1, const RateKernel& q2);

/// hat P_1(x,.) ~st hat P_2(x,.) for every x in r.
PreservationReport ct_preserves(const Relation& r, const RateKernel& q1, const RateKernel& q2);

enum class SubsetFamily {
  all,
  /// Upper sets for the right inequality, lower sets for the left one (order relations).
  order_sets,
};

struct CtSubsetViolation {
  std::size_t left;
  std::size_t right;
  /// true: Q1(x1,B1) > Q2(x2,B1^→); false: Q1(x1,B2^←) < Q2(x2,B2).
  bool right_inequality;
  StateSet set;
};

/// Rate-kernel subset criterion for countable spaces, |S1|, |S2| <= 20.
std::optional<CtSubsetViolation> ct_subset_violation(const Relation& r, const RateKernel& q1, const RateKernel& q2,
                                                     SubsetFamily family = SubsetFamily::all);
bool ct_subset_test(const Relation& r, const RateKernel& q1, const RateKernel& q2,
                    SubsetFamily family = SubsetFamily::all);

/// Subrelation iteration driven by the uniformized kernels.
SubrelationTrace ct_subrelation(const Relation& r, const RateKernel& q1, const RateKernel& q2,
                                const SubrelationOptions& opts = {});

/// Markovian coupling: jump rate qbar(x) and jump kernel coupling the hat
/// kernels, supported in r on r.
struct CtCoupling {
  std::vector<Rational> rate;  // qbar per product state
  CouplingKernel jump;
};
CtCoupling ct_coupling(const Relation& r, const RateKernel& q1, const RateKernel& q2);

struct CtPathPoint {
  double time;
  std::size_t left;
  std::size_t right;
};
/// Standard jump construction: exponential holding times with rate qbar,
/// self-loops kept as events.
std::vector<CtPathPoint> simulate_ct_coupling(const CtCoupling& c, std::size_t x1, std::size_t x2, std::size_t jumps,
                                              std::mt19937_64& rng);

}  // namespace stochrel
