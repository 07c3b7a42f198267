#include "stochrel/builders.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace stochrel {

RelationKind parse_relation_kind(const std::string& name) {
  if (name == "equality") return RelationKind::equality;
  if (name == "full") return RelationKind::full;
  if (name == "epsilon_distance") return RelationKind::epsilon_distance;
  if (name == "coordinatewise_leq") return RelationKind::coordinatewise_leq;
  if (name == "sum_leq") return RelationKind::sum_leq;
  if (name == "weak_majorization") return RelationKind::weak_majorization;
  if (name == "from_pairs") return RelationKind::from_pairs;
  if (name == "from_predicate_table") return RelationKind::from_predicate_table;
  throw Error("unknown relation kind '" + name + "'");
}

std::string to_string(RelationKind kind) {
  switch (kind) {
    case RelationKind::equality: return "equality";
    case RelationKind::full: return "full";
    case RelationKind::epsilon_distance: return "epsilon_distance";
    case RelationKind::coordinatewise_leq: return "coordinatewise_leq";
    case RelationKind::sum_leq: return "sum_leq";
    case RelationKind::weak_majorization: return "weak_majorization";
    case RelationKind::from_pairs: return "from_pairs";
    case RelationKind::from_predicate_table: return "from_predicate_table";
  }
  return "unknown";
}

Relation relation_from_predicate(SpacePtr left, SpacePtr right,
                                 const std::function<bool(std::size_t, std::size_t)>& related) {
  Relation r(std::move(left), std::move(right));
  for (std::size_t i = 0; i < r.left_size(); ++i) {
    for (std::size_t j = 0; j < r.right_size(); ++j) {
      if (related(i, j)) r.set(i, j);
    }
  }
  return r;
}

Relation equality_relation(SpacePtr left, SpacePtr right) {
  Relation r(left, right);
  for (std::size_t i = 0; i < left->size(); ++i) {
    if (auto j = right->find(left->label(i))) r.set(i, *j);
  }
  return r;
}

Relation full_relation(SpacePtr left, SpacePtr right) {
  return relation_from_predicate(std::move(left), std::move(right), [](std::size_t, std::size_t) { return true; });
}

namespace {

void require_points(const StateSpace& s, const char* what) {
  if (!s.has_points()) throw Error(std::string(what) + " requires integer-labelled states");
}

std::int64_t coord_sum(const Point& p) { return std::accumulate(p.begin(), p.end(), std::int64_t{0}); }

}  // namespace

Relation epsilon_distance_relation(SpacePtr left, SpacePtr right, const Rational& epsilon) {
  if (epsilon < 0) throw Error("epsilon must be nonnegative");
  require_points(*left, "epsilon_distance");
  require_points(*right, "epsilon_distance");
  if (left->dims() != 1 || right->dims() != 1) throw Error("epsilon_distance requires one-dimensional states");
  const auto& l = *left;
  const auto& rt = *right;
  return relation_from_predicate(left, right, [&](std::size_t i, std::size_t j) {
    const Rational d = Rational(std::abs(l.point(i)[0] - rt.point(j)[0]));
    return d <= epsilon;
  });
}

Relation coordinatewise_leq_relation(SpacePtr left, SpacePtr right, const std::vector<std::size_t>& coords) {
  require_points(*left, "coordinatewise_leq");
  require_points(*right, "coordinatewise_leq");
  const auto shared = std::min(left->dims(), right->dims());
  for (auto c : coords) {
    if (c < 1 || c > shared) throw Error("coordinate set is not a subset of the shared coordinates");
  }
  const auto& l = *left;
  const auto& rt = *right;
  return relation_from_predicate(left, right, [&](std::size_t i, std::size_t j) {
    for (auto c : coords) {
      if (l.point(i)[c - 1] > rt.point(j)[c - 1]) return false;
    }
    return true;
  });
}

Relation sum_leq_relation(SpacePtr left, SpacePtr right) {
  require_points(*left, "sum_leq");
  require_points(*right, "sum_leq");
  std::vector<std::int64_t> s1(left->size()), s2(right->size());
  for (std::size_t i = 0; i < s1.size(); ++i) s1[i] = coord_sum(left->point(i));
  for (std::size_t j = 0; j < s2.size(); ++j) s2[j] = coord_sum(right->point(j));
  return relation_from_predicate(left, right, [&](std::size_t i, std::size_t j) { return s1[i] <= s2[j]; });
}

bool weakly_majorized(const Point& x, const Point& y) {
  Point a = x, b = y;
  std::sort(a.begin(), a.end(), std::greater<>());
  std::sort(b.begin(), b.end(), std::greater<>());
  const auto n = std::max(a.size(), b.size());
  a.resize(n, 0);
  b.resize(n, 0);
  std::int64_t pa = 0, pb = 0;
  for (std::size_t k = 0; k < n; ++k) {
    pa += a[k];
    pb += b[k];
    if (pa > pb) return false;
  }
  return true;
}

Relation weak_majorization_relation(SpacePtr left, SpacePtr right) {
  require_points(*left, "weak_majorization");
  require_points(*right, "weak_majorization");
  if (left->dims() != right->dims()) throw Error("weak_majorization requires equal dimensions");
  const auto& l = *left;
  const auto& rt = *right;
  return relation_from_predicate(left, right,
                                 [&](std::size_t i, std::size_t j) { return weakly_majorized(l.point(i), rt.point(j)); });
}

Relation relation_from_pairs(SpacePtr left, SpacePtr right, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  Relation r(std::move(left), std::move(right));
  for (auto [i, j] : pairs) r.set(i, j);
  return r;
}

Relation relation_from_table(SpacePtr left, SpacePtr right, const std::vector<std::vector<int>>& table) {
  if (table.size() != left->size()) throw Error("predicate table has the wrong number of rows");
  for (const auto& row : table) {
    if (row.size() != right->size()) throw Error("predicate table has the wrong number of columns");
  }
  return relation_from_predicate(std::move(left), std::move(right),
                                 [&](std::size_t i, std::size_t j) { return table[i][j] != 0; });
}

Relation build_relation(RelationKind kind, SpacePtr left, SpacePtr right, const RelationParams& params) {
  switch (kind) {
    case RelationKind::equality: return equality_relation(left, right);
    case RelationKind::full: return full_relation(left, right);
    case RelationKind::epsilon_distance: return epsilon_distance_relation(left, right, params.epsilon);
    case RelationKind::coordinatewise_leq: return coordinatewise_leq_relation(left, right, params.coords);
    case RelationKind::sum_leq: return sum_leq_relation(left, right);
    case RelationKind::weak_majorization: return weak_majorization_relation(left, right);
    case RelationKind::from_pairs: return relation_from_pairs(left, right, params.pairs);
    case RelationKind::from_predicate_table: return relation_from_table(left, right, params.table);
  }
  throw Error("unknown relation kind");
}

}  // namespace stochrel
