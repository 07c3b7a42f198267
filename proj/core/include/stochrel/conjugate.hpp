#pragma once

#include <vector>

#include "stochrel/relation.hpp"

namespace stochrel {

/// Which conjugate to take. `right` maps subsets/functions of the left
/// space to the right space (B -> B^→), `left` goes the other way.
enum class Side { left, right };

/// Nonnegative rational function on a finite state space.
class RealFn {
 public:
  RealFn(SpacePtr space, std::vector<Rational> values);

  static RealFn indicator(SpacePtr space, const StateSet& set);

  const StateSpace& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }
  const std::vector<Rational>& values() const { return values_; }
  const Rational& operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }

  /// {x : f(x) > r}
  StateSet strict_level_set(const Rational& r) const;

  friend bool operator==(const RealFn&, const RealFn&) = default;

 private:
  SpacePtr space_;
  std::vector<Rational> values_;
};

/// B^→ = ∪_{x∈B} {y : x ~ y} for Side::right, B^← mirrored for Side::left.
StateSet conjugate_set(const Relation& r, const StateSet& set, Side side);

/// f^→(y) = max_{x ~ y} f(x), 0 when y has no related state (and mirrored).
RealFn conjugate_fn(const Relation& r, const RealFn& f, Side side);

}  // namespace stochrel
