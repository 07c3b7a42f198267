#pragma once

#include <vector>

#include "stochrel/preservation.hpp"

namespace stochrel {

struct HiddenMarkovReport {
  /// R' = {(x1, x2) : f1(x1) ~ f2(x2)} on the hidden spaces.
  Relation induced;
  PreservationReport preservation;
  bool passes() const { return preservation.preserved; }
};

/// Compares Y_i = f_i(X_i) for Markov X_i with kernels P_i on the hidden
/// spaces. f_i are index maps from the hidden spaces into the spaces of r.
HiddenMarkovReport hidden_markov_check(const Relation& r, const std::vector<std::size_t>& f1,
                                       const std::vector<std::size_t>& f2, const Kernel& p1, const Kernel& p2);

/// Subset form: P1(x1, f1^{-1}(B)) <= P2(x2, f2^{-1}(B^→)) for all f1(x1) ~ f2(x2)
/// and all B in the observed left space (n <= 20).
bool induced_kernel_subset_test(const Relation& r, const std::vector<std::size_t>& f1,
                                const std::vector<std::size_t>& f2, const Kernel& p1, const Kernel& p2);

/// Image law mu ∘ f^{-1} on `target`.
Dist image_dist(const Dist& mu, const std::vector<std::size_t>& f, SpacePtr target);

}  // namespace stochrel
