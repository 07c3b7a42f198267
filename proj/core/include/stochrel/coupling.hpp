#pragma once

#include <optional>
#include <tuple>
#include <vector>

#include "stochrel/conjugate.hpp"
#include "stochrel/relation.hpp"

namespace stochrel {

/// Exact probability distribution on a finite space.
class Dist {
 public:
  /// Throws when a mass is negative or the total differs from 1.
  Dist(SpacePtr space, std::vector<Rational> mass);

  static Dist dirac(SpacePtr space, std::size_t state);
  static Dist uniform(SpacePtr space);

  const StateSpace& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }
  const std::vector<Rational>& mass() const { return mass_; }
  const Rational& operator[](std::size_t i) const { return mass_[i]; }
  std::size_t size() const { return mass_.size(); }

  Rational measure(const StateSet& set) const;
  StateSet support() const;
  Rational expectation(const std::vector<Rational>& f) const;

  friend bool operator==(const Dist& a, const Dist& b) { return a.mass_ == b.mass_ && a.space() == b.space(); }

 private:
  SpacePtr space_;
  std::vector<Rational> mass_;
};

/// Joint distribution on S1 x S2, stored sparsely by nonzero entry.
class CouplingMatrix {
 public:
  struct Entry {
    std::size_t left;
    std::size_t right;
    Rational mass;
  };

  CouplingMatrix(std::size_t n1, std::size_t n2, std::vector<Entry> entries);

  static CouplingMatrix product(const Dist& mu, const Dist& nu);

  std::size_t left_size() const { return n1_; }
  std::size_t right_size() const { return n2_; }
  const std::vector<Entry>& entries() const { return entries_; }
  Rational at(std::size_t i, std::size_t j) const;

  std::vector<Rational> left_marginal() const;
  std::vector<Rational> right_marginal() const;
  bool supported_in(const Relation& r) const;
  /// Exact check of both marginals.
  bool couples(const Dist& mu, const Dist& nu) const;

 private:
  std::size_t n1_;
  std::size_t n2_;
  std::vector<Entry> entries_;
};

/// Outcome of a stochastic-relatedness decision. Exactly one witness is set.
struct StDecision {
  bool related = false;
  std::optional<CouplingMatrix> coupling;
  /// B with mu(B) > nu(B^→).
  std::optional<StateSet> violating_set;
};

/// Exact decision of mu ~st nu through transportation max-flow.
StDecision st_related(const Relation& r, const Dist& mu, const Dist& nu);

/// Brute force over all 2^n1 subsets B of the left space: mu(B) <= nu(B^→).
/// Requires n1 <= 20.
bool subset_oracle(const Relation& r, const Dist& mu, const Dist& nu);
/// As subset_oracle, returning the first violating subset in mask order.
std::optional<StateSet> subset_oracle_violation(const Relation& r, const Dist& mu, const Dist& nu);

/// The single inequality sum f dmu <= sum f^→ dnu (a necessary condition).
bool functional_test(const Relation& r, const Dist& mu, const Dist& nu, const RealFn& f);

/// For an order relation on one space: mu(B) <= nu(B) for every upper set
/// B (B^→ = B). Enumerates subsets, n <= 20.
bool upper_set_test(const Relation& order, const Dist& mu, const Dist& nu);

/// Floating-point decision, labelled approximate: related when the max-flow
/// reaches 1 - tolerance.
struct ApproxDecision {
  bool related = false;
  double flow_value = 0;
  std::vector<std::tuple<std::size_t, std::size_t, double>> coupling;
  StateSet violating_set;
};
ApproxDecision st_related_approx(const Relation& r, const std::vector<double>& mu, const std::vector<double>& nu,
                                 double tolerance = 1e-9);

}  // namespace stochrel
