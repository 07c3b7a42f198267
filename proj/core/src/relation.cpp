#include "stochrel/relation.hpp"

#include <bit>

namespace stochrel {

Relation::Relation(SpacePtr left, SpacePtr right)
    : left_(std::move(left)), right_(std::move(right)) {
  if (!left_ || !right_) throw Error("relation requires both state spaces");
  n1_ = left_->size();
  n2_ = right_->size();
  words_ = (n2_ + 63) / 64;
  bits_.assign(n1_ * words_, 0);
}

void Relation::set(std::size_t i, std::size_t j, bool value) {
  if (i >= n1_ || j >= n2_) throw Error("relation index out of range");
  auto& w = bits_[i * words_ + (j >> 6)];
  const std::uint64_t mask = std::uint64_t{1} << (j & 63);
  if (value) {
    w |= mask;
  } else {
    w &= ~mask;
  }
}

std::size_t Relation::count() const {
  std::size_t c = 0;
  for (auto w : bits_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

void Relation::for_each_pair(const std::function<void(std::size_t, std::size_t)>& fn) const {
  for (std::size_t i = 0; i < n1_; ++i) {
    for (std::size_t w = 0; w < words_; ++w) {
      auto word = bits_[i * words_ + w];
      while (word) {
        const auto b = static_cast<std::size_t>(std::countr_zero(word));
        fn(i, w * 64 + b);
        word &= word - 1;
      }
    }
  }
}

std::vector<std::pair<std::size_t, std::size_t>> Relation::pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  out.reserve(count());
  for_each_pair([&](std::size_t i, std::size_t j) { out.emplace_back(i, j); });
  return out;
}

StateSet Relation::row(std::size_t i) const {
  if (i >= n1_) throw Error("relation index out of range");
  StateSet out;
  for (std::size_t w = 0; w < words_; ++w) {
    auto word = bits_[i * words_ + w];
    while (word) {
      out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(word)));
      word &= word - 1;
    }
  }
  return out;
}

StateSet Relation::column(std::size_t j) const {
  if (j >= n2_) throw Error("relation index out of range");
  StateSet out;
  for (std::size_t i = 0; i < n1_; ++i) {
    if (contains(i, j)) out.push_back(i);
  }
  return out;
}

bool Relation::same_spaces(const Relation& other) const {
  return (left_ == other.left_ || *left_ == *other.left_) && (right_ == other.right_ || *right_ == *other.right_);
}

bool operator==(const Relation& a, const Relation& b) { return a.same_spaces(b) && a.bits_ == b.bits_; }

Relation intersect(const Relation& a, const Relation& b) {
  if (!a.same_spaces(b)) throw Error("relation space mismatch");
  Relation out(a.left_ptr(), a.right_ptr());
  a.for_each_pair([&](std::size_t i, std::size_t j) {
    if (b.contains(i, j)) out.set(i, j);
  });
  return out;
}

bool is_subset(const Relation& a, const Relation& b) {
  if (!a.same_spaces(b)) throw Error("relation space mismatch");
  for (std::size_t i = 0; i < a.left_size(); ++i) {
    const auto* wa = a.row_words(i);
    const auto* wb = b.row_words(i);
    for (std::size_t w = 0; w < a.words_per_row(); ++w) {
      if (wa[w] & ~wb[w]) return false;
    }
  }
  return true;
}

Relation restrict_to_box(const Relation& r, const Box& left_box, const Box& right_box) {
  if (!r.left().has_points() || !r.right().has_points()) throw Error("restrict_to_box requires grid spaces");
  auto left = make_space(StateSpace::grid(left_box));
  auto right = make_space(StateSpace::grid(right_box));
  std::vector<std::size_t> map1(left->size()), map2(right->size());
  for (std::size_t i = 0; i < left->size(); ++i) {
    auto idx = r.left().find(left->point(i));
    if (!idx) throw Error("box is not contained in the left space");
    map1[i] = *idx;
  }
  for (std::size_t j = 0; j < right->size(); ++j) {
    auto idx = r.right().find(right->point(j));
    if (!idx) throw Error("box is not contained in the right space");
    map2[j] = *idx;
  }
  return induced(r, left, map1, right, map2);
}

Relation induced(const Relation& r, SpacePtr left, const std::vector<std::size_t>& phi1, SpacePtr right,
                 const std::vector<std::size_t>& phi2) {
  if (phi1.size() != left->size() || phi2.size() != right->size()) throw Error("induced: map is not total");
  for (auto v : phi1) {
    if (v >= r.left_size()) throw Error("induced: map leaves the left space");
  }
  for (auto v : phi2) {
    if (v >= r.right_size()) throw Error("induced: map leaves the right space");
  }
  Relation out(std::move(left), std::move(right));
  for (std::size_t i = 0; i < phi1.size(); ++i) {
    for (std::size_t j = 0; j < phi2.size(); ++j) {
      if (r.contains(phi1[i], phi2[j])) out.set(i, j);
    }
  }
  return out;
}

bool related_coordinatewise(const Relation& r, const std::vector<std::size_t>& xs, const std::vector<std::size_t>& ys) {
  if (xs.size() != ys.size()) return false;
  for (std::size_t t = 0; t < xs.size(); ++t) {
    if (!r.contains(xs[t], ys[t])) return false;
  }
  return true;
}

}  // namespace stochrel
