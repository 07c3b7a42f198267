#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "stochrel/state_space.hpp"

namespace stochrel {

using SpacePtr = std::shared_ptr<const StateSpace>;

inline SpacePtr make_space(StateSpace s) { return std::make_shared<const StateSpace>(std::move(s)); }

/// Sorted list of state indices.
using StateSet = std::vector<std::size_t>;

/// Binary relation between two finite state spaces, stored as a dense bit
/// matrix (row-major over the left space, each row padded to whole words).
class Relation {
 public:
  Relation(SpacePtr left, SpacePtr right);

  const StateSpace& left() const { return *left_; }
  const StateSpace& right() const { return *right_; }
  const SpacePtr& left_ptr() const { return left_; }
  const SpacePtr& right_ptr() const { return right_; }
  std::size_t left_size() const { return n1_; }
  std::size_t right_size() const { return n2_; }

  bool contains(std::size_t i, std::size_t j) const {
    return (bits_[i * words_ + (j >> 6)] >> (j & 63)) & 1u;
  }
  void set(std::size_t i, std::size_t j, bool value = true);

  std::size_t count() const;
  bool empty() const { return count() == 0; }

  /// Pairs in lexicographic order of (left index, right index).
  std::vector<std::pair<std::size_t, std::size_t>> pairs() const;
  void for_each_pair(const std::function<void(std::size_t, std::size_t)>& fn) const;

  /// Right states related to left state i.
  StateSet row(std::size_t i) const;
  /// Left states related to right state j.
  StateSet column(std::size_t j) const;

  const std::uint64_t* row_words(std::size_t i) const { return bits_.data() + i * words_; }
  std::size_t words_per_row() const { return words_; }

  bool same_spaces(const Relation& other) const;

  friend bool operator==(const Relation& a, const Relation& b);

 private:
  SpacePtr left_;
  SpacePtr right_;
  std::size_t n1_ = 0;
  std::size_t n2_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

Relation intersect(const Relation& a, const Relation& b);
bool is_subset(const Relation& a, const Relation& b);

/// Restriction to the sub-grids of both (grid) spaces lying inside the boxes.
Relation restrict_to_box(const Relation& r, const Box& left_box, const Box& right_box);

/// R' = {(x', y') : (phi1(x'), phi2(y')) in R}, with phi_i total maps given
/// as index tables from the new spaces into the spaces of R.
Relation induced(const Relation& r, SpacePtr left, const std::vector<std::size_t>& phi1, SpacePtr right,
                 const std::vector<std::size_t>& phi2);

/// Coordinatewise relation between sequences: xs[t] ~ ys[t] for every t.
bool related_coordinatewise(const Relation& r, const std::vector<std::size_t>& xs, const std::vector<std::size_t>& ys);

}  // namespace stochrel
