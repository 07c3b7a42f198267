#pragma once

#include <functional>
#include <string>
#include <vector>

#include "stochrel/relation.hpp"

namespace stochrel {

enum class RelationKind {
  equality,
  full,
  epsilon_distance,
  coordinatewise_leq,
  sum_leq,
  weak_majorization,
  from_pairs,
  from_predicate_table,
};

RelationKind parse_relation_kind(const std::string& name);
std::string to_string(RelationKind kind);

struct RelationParams {
  Rational epsilon = 0;
  /// 1-based coordinates for coordinatewise_leq.
  std::vector<std::size_t> coords;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  /// n1 x n2 table of 0/1 entries.
  std::vector<std::vector<int>> table;
};

Relation build_relation(RelationKind kind, SpacePtr left, SpacePtr right, const RelationParams& params = {});

/// {(x, x)} on a common space; the label sets of both sides must agree.
Relation equality_relation(SpacePtr left, SpacePtr right);
Relation full_relation(SpacePtr left, SpacePtr right);
/// |x - y| <= epsilon on one-dimensional integer spaces.
Relation epsilon_distance_relation(SpacePtr left, SpacePtr right, const Rational& epsilon);
/// x_i <= y_i for every (1-based) i in coords.
Relation coordinatewise_leq_relation(SpacePtr left, SpacePtr right, const std::vector<std::size_t>& coords);
/// |x| <= |y| with |x| the coordinate sum.
Relation sum_leq_relation(SpacePtr left, SpacePtr right);
/// Weak majorization: partial sums of decreasingly sorted coordinates of x
/// are dominated by those of y. On Z^2 this is |x| <= |y| and x1∨x2 <= y1∨y2.
Relation weak_majorization_relation(SpacePtr left, SpacePtr right);
Relation relation_from_pairs(SpacePtr left, SpacePtr right, const std::vector<std::pair<std::size_t, std::size_t>>& pairs);
Relation relation_from_table(SpacePtr left, SpacePtr right, const std::vector<std::vector<int>>& table);
Relation relation_from_predicate(SpacePtr left, SpacePtr right,
                                 const std::function<bool(std::size_t, std::size_t)>& related);

bool weakly_majorized(const Point& x, const Point& y);

}  // namespace stochrel
