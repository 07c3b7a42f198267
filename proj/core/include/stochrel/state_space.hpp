#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "stochrel/rational.hpp"

namespace stochrel {

using Point = std::vector<std::int64_t>;

/// Axis-aligned integer box [lo_k, hi_k] per coordinate.
struct Box {
  std::vector<std::int64_t> lo;
  std::vector<std::int64_t> hi;

  std::size_t dims() const { return lo.size(); }
  bool contains(const Point& p) const;
  std::size_t volume() const;
};

/// Ordered finite set of distinct labelled states. Grid spaces additionally
/// carry the integer coordinates of every state.
class StateSpace {
 public:
  StateSpace() = default;
  explicit StateSpace(std::vector<std::string> labels);
  explicit StateSpace(std::vector<Point> points);

  /// Lexicographic enumeration of the box, last coordinate fastest.
  static StateSpace grid(const Box& box);
  /// {0, 1, ..., n-1} as one-dimensional integer points.
  static StateSpace range(std::int64_t lo, std::int64_t hi);

  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<std::size_t> find(const std::string& label) const;
  std::size_t index_of(const std::string& label) const;

  bool has_points() const { return !points_.empty(); }
  const Point& point(std::size_t i) const;
  std::size_t dims() const;
  std::optional<std::size_t> find(const Point& p) const;
  const std::optional<Box>& box() const { return box_; }

  friend bool operator==(const StateSpace& a, const StateSpace& b) { return a.labels_ == b.labels_; }

 private:
  void build_index();

  std::vector<std::string> labels_;
  std::vector<Point> points_;
  std::optional<Box> box_;
  std::unordered_map<std::string, std::size_t> index_;
};

std::string point_label(const Point& p);

/// Indices of the product space S1 x S2, row-major over the left space.
inline std::size_t pair_index(std::size_t i, std::size_t j, std::size_t n2) { return i * n2 + j; }

}  // namespace stochrel
