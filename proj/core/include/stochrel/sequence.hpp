#pragma once

#include <functional>
#include <map>
#include <random>
#include <vector>

#include "stochrel/preservation.hpp"

namespace stochrel {

using History = std::vector<std::size_t>;

/// Conditional law of the next state given the history so far.
using HistoryKernel = std::function<Dist(const History&)>;

/// Coupled law of two finite-horizon sequences, supported on paths that are
/// related coordinatewise.
class SequenceCoupling {
 public:
  struct PathPair {
    History left;
    History right;
    friend auto operator<=>(const PathPair&, const PathPair&) = default;
  };

  SequenceCoupling(std::size_t horizon, std::map<PathPair, Rational> law);

  std::size_t horizon() const { return horizon_; }
  const std::map<PathPair, Rational>& law() const { return law_; }
  std::map<History, Rational> left_law() const;
  std::map<History, Rational> right_law() const;
  /// Mass of the coordinatewise relation R^h.
  Rational mass_on(const Relation& r) const;
  PathPair sample(std::mt19937_64& rng) const;

 private:
  std::size_t horizon_;
  std::map<PathPair, Rational> law_;
};

/// Histories related coordinatewise whose conditional laws are not
/// stochastically related (the sufficient condition fails there).
class SequenceHypothesisError : public Error {
 public:
  SequenceHypothesisError(History left, History right);
  History left;
  History right;
};

/// Builds the coupled law lambda_h by chaining per-step witness couplings
/// starting from `initial` (supported in r). General history dependence is
/// accepted for horizon <= 4.
SequenceCoupling seq_coupling(const Relation& r, const CouplingMatrix& initial, const HistoryKernel& p,
                              const HistoryKernel& q, std::size_t horizon);

/// Markov case: the conditional laws depend on the last state only.
SequenceCoupling seq_coupling(const Relation& r, const CouplingMatrix& initial, const Kernel& p1, const Kernel& p2,
                              std::size_t horizon);

/// Law of (X_1, ..., X_h) for a Markov chain with initial law mu.
std::map<History, Rational> chain_law(const Dist& mu, const Kernel& p, std::size_t horizon);

}  // namespace stochrel
