#pragma once

// Shared machinery for pairwise stochastic checks: integer-scaled row
// providers and the generic preservation / subrelation loops.

#include <algorithm>
#include <type_traits>

#include "stochrel/kernel.hpp"
#include "stochrel/parallel.hpp"
#include "stochrel/subrelation.hpp"
#include "stochrel/transport.hpp"

namespace stochrel::detail {

template <class W>
W from_big(const BigInt& v) {
  if constexpr (std::is_same_v<W, BigInt>) {
    return v;
  } else {
    return *to_int64(v);
  }
}

/// Largest integer the int64 path accepts for a row total.
inline const BigInt& int64_total_limit() {
  static const BigInt limit = BigInt(1) << 60;
  return limit;
}

template <class W>
struct RowPair {
  WeightedStates<W> left;
  WeightedStates<W> right;
  W total{0};

  void clear() {
    left.states.clear();
    left.weights.clear();
    right.states.clear();
    right.weights.clear();
  }
};

/// Rows P1(x1,.) and P2(x2,.) scaled by the common denominator of both kernels.
template <class W>
class DiscreteRows {
 public:
  DiscreteRows(const Kernel& p1, const Kernel& p2, const BigInt& scale) : total_(from_big<W>(scale)) {
    load(p1, scale, left_);
    load(p2, scale, right_);
  }

  void fill(std::size_t x1, std::size_t x2, RowPair<W>& out) const {
    out.left = left_[x1];
    out.right = right_[x2];
    out.total = total_;
  }
  const std::vector<std::uint32_t>& left_support(std::size_t x1) const { return left_[x1].states; }
  const std::vector<std::uint32_t>& right_support(std::size_t x2) const { return right_[x2].states; }
  std::size_t left_sources() const { return left_.size(); }
  std::size_t right_sources() const { return right_.size(); }

  static BigInt scale_for(const Kernel& p1, const Kernel& p2) {
    std::vector<Rational> all;
    for (const Kernel* k : {&p1, &p2}) {
      for (std::size_t x = 0; x < k->size(); ++x) {
        for (const auto& e : k->row(x)) all.push_back(e.prob);
      }
    }
    return common_denominator(all);
  }

 private:
  static void load(const Kernel& p, const BigInt& scale, std::vector<WeightedStates<W>>& rows) {
    rows.resize(p.size());
    for (std::size_t x = 0; x < p.size(); ++x) {
      for (const auto& e : p.row(x)) {
        rows[x].push(static_cast<std::uint32_t>(e.state), from_big<W>(scale_to_integer(e.prob, scale)));
      }
    }
  }

  std::vector<WeightedStates<W>> left_;
  std::vector<WeightedStates<W>> right_;
  W total_;
};

template <class W, class Rows>
TransportResult<W> check_pair(const Relation& target, const Rows& rows, std::size_t x1, std::size_t x2, bool witness,
                              RowPair<W>& scratch) {
  scratch.clear();
  rows.fill(x1, x2, scratch);
  return solve_transport<W>(target, scratch.left, scratch.right, scratch.total, witness);
}

/// Checks every pair of `pairs` against `target`; returns failures in input order.
template <class W, class Rows>
std::vector<PairFailure> failing_pairs(const Relation& target, const Rows& rows,
                                       const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  std::vector<char> failed(pairs.size(), 0);
  std::vector<StateSet> witness(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t b, std::size_t e) {
    RowPair<W> scratch;
    for (std::size_t k = b; k < e; ++k) {
      auto res = check_pair<W>(target, rows, pairs[k].first, pairs[k].second, false, scratch);
      if (!res.related) {
        failed[k] = 1;
        witness[k] = check_pair<W>(target, rows, pairs[k].first, pairs[k].second, true, scratch).violating;
      }
    }
  });
  std::vector<PairFailure> out;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    if (failed[k]) out.push_back({pairs[k].first, pairs[k].second, std::move(witness[k])});
  }
  return out;
}

template <class W, class Rows>
PreservationReport preserves_with(const Relation& source, const Relation& target, const Rows& rows) {
  PreservationReport rep;
  const auto pairs = source.pairs();
  rep.pairs_checked = pairs.size();
  rep.failures = failing_pairs<W>(target, rows, pairs);
  rep.preserved = rep.failures.empty();
  return rep;
}

template <class W, class Rows>
SubrelationTrace subrelation_with(const Relation& r, const Rows& rows, const SubrelationOptions& opts) {
  SubrelationTrace trace;
  trace.steps.push_back(r);
  const std::size_t n1 = r.left_size();
  const std::size_t n2 = r.right_size();

  std::vector<std::vector<std::uint32_t>> pred_left, pred_right;
  if (opts.strategy == RecheckStrategy::worklist) {
    pred_left.resize(n1);
    pred_right.resize(n2);
    for (std::size_t x1 = 0; x1 < rows.left_sources(); ++x1) {
      for (auto a : rows.left_support(x1)) pred_left[a].push_back(static_cast<std::uint32_t>(x1));
    }
    for (std::size_t x2 = 0; x2 < rows.right_sources(); ++x2) {
      for (auto b : rows.right_support(x2)) pred_right[b].push_back(static_cast<std::uint32_t>(x2));
    }
  }

  auto candidates = r.pairs();
  std::vector<char> mark;
  while (!opts.max_steps || trace.removed.size() < *opts.max_steps) {
    const Relation& current = trace.steps.back();
    auto removed = failing_pairs<W>(current, rows, candidates);
    if (removed.empty()) {
      trace.converged = true;
      break;
    }
    Relation next = current;
    for (const auto& f : removed) next.set(f.left, f.right, false);

    if (opts.strategy == RecheckStrategy::worklist) {
      mark.assign(n1 * n2, 0);
      for (const auto& f : removed) {
        for (auto x1 : pred_left[f.left]) {
          for (auto x2 : pred_right[f.right]) {
            if (next.contains(x1, x2)) mark[x1 * n2 + x2] = 1;
          }
        }
      }
      candidates.clear();
      for (std::size_t k = 0; k < mark.size(); ++k) {
        if (mark[k]) candidates.emplace_back(k / n2, k % n2);
      }
    } else {
      candidates = next.pairs();
    }

    trace.steps.push_back(std::move(next));
    trace.removed.push_back(std::move(removed));
  }
  return trace;
}

}  // namespace stochrel::detail
