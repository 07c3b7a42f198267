#include "stochrel/conjugate.hpp"

#include <algorithm>

namespace stochrel {

RealFn::RealFn(SpacePtr space, std::vector<Rational> values) : space_(std::move(space)), values_(std::move(values)) {
  if (!space_ || values_.size() != space_->size()) throw Error("function size does not match its space");
  for (const auto& v : values_) {
    if (v < 0) throw Error("conjugates are defined for nonnegative functions only");
  }
}

RealFn RealFn::indicator(SpacePtr space, const StateSet& set) {
  std::vector<Rational> v(space->size(), Rational(0));
  for (auto i : set) {
    if (i >= v.size()) throw Error("state index out of range");
    v[i] = 1;
  }
  return RealFn(std::move(space), std::move(v));
}

StateSet RealFn::strict_level_set(const Rational& r) const {
  StateSet out;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] > r) out.push_back(i);
  }
  return out;
}

StateSet conjugate_set(const Relation& r, const StateSet& set, Side side) {
  const std::size_t from_size = side == Side::right ? r.left_size() : r.right_size();
  const std::size_t to_size = side == Side::right ? r.right_size() : r.left_size();
  std::vector<char> hit(to_size, 0);
  for (auto s : set) {
    if (s >= from_size) throw Error("conjugate_set: index out of range");
    if (side == Side::right) {
      for (auto j : r.row(s)) hit[j] = 1;
    } else {
      for (std::size_t i = 0; i < to_size; ++i) {
        if (r.contains(i, s)) hit[i] = 1;
      }
    }
  }
  StateSet out;
  for (std::size_t k = 0; k < to_size; ++k) {
    if (hit[k]) out.push_back(k);
  }
  return out;
}

RealFn conjugate_fn(const Relation& r, const RealFn& f, Side side) {
  const bool right = side == Side::right;
  const auto& from = right ? r.left() : r.right();
  if (!(f.space() == from)) throw Error("conjugate_fn: function lives on the wrong space");
  const std::size_t to_size = right ? r.right_size() : r.left_size();
  std::vector<Rational> out(to_size, Rational(0));
  for (std::size_t t = 0; t < to_size; ++t) {
    for (std::size_t s = 0; s < f.size(); ++s) {
      const bool rel = right ? r.contains(s, t) : r.contains(t, s);
      if (rel && f[s] > out[t]) out[t] = f[s];
    }
  }
  return RealFn(right ? r.right_ptr() : r.left_ptr(), std::move(out));
}

}  // namespace stochrel
