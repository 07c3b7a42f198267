#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "stochrel/ctmc.hpp"
#include "stochrel/rate_expr.hpp"

namespace stochrel {

/// Index pair (i, j) of a move x -> x - e_i + e_j; index 0 is the outside world.
using MoveIndex = std::pair<std::size_t, std::size_t>;

/// Markov population process on a truncated integer box. A move whose target
/// leaves the box has rate zero.
struct PopulationModel {
  std::size_t m = 0;
  Box box;
  std::map<MoveIndex, RateExpr> rates;

  /// Throws on bad indices, box dimension mismatch or a negative rate at an in-box state.
  void validate() const;
  SpacePtr space() const;
  /// alpha_{i,j}(x) after truncation.
  Rational rate(const MoveIndex& move, const Point& x) const;
  /// x + e_{i,j}
  Point target(const MoveIndex& move, const Point& x) const;
};

/// e_{i,j} = -e_i + e_j in Z^m, with e_0 = 0.
Point displacement(const MoveIndex& move, std::size_t m);

/// Q(x, {x + e_{i,j}}) = alpha_{i,j}(x) on the box grid.
RateKernel to_rate_kernel(const PopulationModel& model);
RateKernel to_rate_kernel(const PopulationModel& model, const SpacePtr& space);

struct PopulationFailure {
  std::size_t left;
  std::size_t right;
  /// true: sum over U exceeds the sum over U_→(x, y); false: V inequality fails.
  bool right_inequality;
  std::vector<MoveIndex> moves;
};

struct PopulationReport {
  bool preserved = true;
  std::size_t pairs_checked = 0;
  /// Set when m was too large for subset enumeration and ct_preserves decided instead.
  bool used_fallback = false;
  std::vector<PopulationFailure> failures;
};

/// Index-subset criterion for population processes (m <= 3 on both sides).
/// r must relate the box grids of model1 and model2.
PopulationReport population_check(const Relation& r, const PopulationModel& model1, const PopulationModel& model2);

struct PartialOrderFailure {
  std::size_t left;
  std::size_t right;
  std::size_t colony;  // k
  bool upper;          // true: arrival-side inequality over I, false: departure side over J
  std::vector<std::size_t> indices;
};

struct PartialOrderReport {
  bool preserved = true;
  std::size_t pairs_checked = 0;
  std::vector<PartialOrderFailure> failures;
};

/// Per-colony criterion for the order x <=_M y (coords are 1-based).
PartialOrderReport partial_order_check(const std::vector<std::size_t>& coords, const PopulationModel& model1,
                                       const PopulationModel& model2);

}  // namespace stochrel
