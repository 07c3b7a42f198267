#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "stochrel/coupling.hpp"

namespace stochrel {

/// Sparse row of a probability kernel: (target state, probability), sorted by state.
struct KernelEntry {
  std::size_t state;
  Rational prob;
};
using KernelRow = std::vector<KernelEntry>;

/// Row-stochastic probability kernel between finite spaces.
class Kernel {
 public:
  /// Throws unless every row is nonnegative and sums to exactly one.
  Kernel(SpacePtr from, SpacePtr to, std::vector<KernelRow> rows);
  static Kernel from_dense(SpacePtr from, SpacePtr to, const std::vector<std::vector<Rational>>& rows);
  static Kernel identity(SpacePtr space);

  const StateSpace& from() const { return *from_; }
  const StateSpace& to() const { return *to_; }
  const SpacePtr& from_ptr() const { return from_; }
  const SpacePtr& to_ptr() const { return to_; }
  std::size_t size() const { return rows_.size(); }

  const KernelRow& row(std::size_t x) const { return rows_.at(x); }
  Rational at(std::size_t x, std::size_t y) const;
  Dist row_dist(std::size_t x) const;
  std::vector<std::vector<Rational>> dense() const;

  /// Samples a successor of x; only states with positive mass can be drawn.
  std::size_t sample(std::size_t x, std::mt19937_64& rng) const;

  friend bool operator==(const Kernel& a, const Kernel& b);

 private:
  SpacePtr from_;
  SpacePtr to_;
  std::vector<KernelRow> rows_;
};

/// mu P
Dist push(const Dist& mu, const Kernel& p);
/// Kernel composition PQ.
Kernel compose(const Kernel& p, const Kernel& q);

/// Index of a draw from explicit nonnegative weights.
std::size_t sample_index(const std::vector<Rational>& weights, std::mt19937_64& rng);

}  // namespace stochrel
