#pragma once

#include <optional>
#include <vector>

#include "stochrel/kernel.hpp"

namespace stochrel {

/// A related pair whose rows are not stochastically related, with the
/// violating set B (mu(B) > nu(B^→)) read from the minimum cut.
struct PairFailure {
  std::size_t left;
  std::size_t right;
  StateSet violating_set;
};

struct PreservationReport {
  bool preserved = true;
  std::size_t pairs_checked = 0;
  std::vector<PairFailure> failures;
};

/// x1 ~ x2 in r  ==>  P1(x1,.) ~st P2(x2,.) with respect to r_target.
PreservationReport preserves(const Relation& r, const Relation& r_target, const Kernel& p1, const Kernel& p2);
/// Same with r_target = r (kernels on S1 and S2).
PreservationReport preserves(const Relation& r, const Kernel& p1, const Kernel& p2);

/// Probability kernel on S1 x S2 coupling P1 and P2 row by row.
class CouplingKernel {
 public:
  CouplingKernel(SpacePtr from_left, SpacePtr from_right, SpacePtr to_left, SpacePtr to_right,
                 std::vector<CouplingMatrix> rows);

  std::size_t from_left_size() const { return from_left_->size(); }
  std::size_t from_right_size() const { return from_right_->size(); }
  const StateSpace& to_left() const { return *to_left_; }
  const StateSpace& to_right() const { return *to_right_; }

  const CouplingMatrix& row(std::size_t x1, std::size_t x2) const { return rows_.at(x1 * from_right_->size() + x2); }
  /// Draws (y1, y2) from the row of (x1, x2).
  std::pair<std::size_t, std::size_t> sample(std::size_t x1, std::size_t x2, std::mt19937_64& rng) const;

 private:
  SpacePtr from_left_;
  SpacePtr from_right_;
  SpacePtr to_left_;
  SpacePtr to_right_;
  std::vector<CouplingMatrix> rows_;
};

/// Raised when a coupling construction meets a related pair whose rows are
/// not stochastically related.
class NotPreservedError : public Error {
 public:
  NotPreservedError(std::size_t left, std::size_t right, StateSet violating);
  std::size_t left;
  std::size_t right;
  StateSet violating_set;
};

/// Coupling P of (P1, P2) with P(x, r_target) = 1 for x in r: witness couplings
/// on r, product couplings elsewhere.
CouplingKernel build_coupling_kernel(const Relation& r, const Relation& r_target, const Kernel& p1, const Kernel& p2);

/// Path of a coupled chain driven by `kernel`, including the start state.
std::vector<std::pair<std::size_t, std::size_t>> simulate_coupling(const CouplingKernel& kernel, std::size_t x1,
                                                                   std::size_t x2, std::size_t steps,
                                                                   std::mt19937_64& rng);

}  // namespace stochrel
