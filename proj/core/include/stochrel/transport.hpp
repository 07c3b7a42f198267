#pragma once

// Transportation feasibility on a bipartite network
//   source -> a (cap = left weight) -> b (cap = total, iff a ~ b) -> sink (cap = right weight)
// solved with shortest-augmenting-path (Dinic) max-flow. The capacity type is
// a template parameter so the same code runs on int64, GMP integers and doubles.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <tuple>
#include <vector>

#include "stochrel/relation.hpp"

namespace stochrel {

template <class W>
struct WeightedStates {
  std::vector<std::uint32_t> states;
  std::vector<W> weights;

  void push(std::uint32_t s, W w) {
    states.push_back(s);
    weights.push_back(std::move(w));
  }
  std::size_t size() const { return states.size(); }
};

template <class W>
class MaxFlow {
 public:
  explicit MaxFlow(std::size_t nodes, W zero_tol = W(0)) : adj_(nodes), tol_(std::move(zero_tol)) {}

  std::size_t add_edge(std::size_t u, std::size_t v, W cap) {
    const std::size_t id = to_.size();
    to_.push_back(v);
    cap_.push_back(std::move(cap));
    adj_[u].push_back(id);
    to_.push_back(u);
    cap_.push_back(W(0));
    adj_[v].push_back(id + 1);
    original_.push_back(cap_[id]);
    original_.push_back(W(0));
    return id;
  }

  W run(std::size_t s, std::size_t t) {
    W total(0);
    while (bfs(s, t)) {
      it_.assign(adj_.size(), 0);
      while (true) {
        W pushed = dfs(s, t, W(-1));
        if (!(pushed > tol_)) break;
        total += pushed;
      }
    }
    return total;
  }

  /// Flow currently routed through the forward edge `id`.
  W flow(std::size_t id) const { return original_[id] - cap_[id]; }

  /// Nodes reachable from `s` in the final residual graph (source side of a min cut).
  std::vector<char> reachable(std::size_t s) const {
    std::vector<char> seen(adj_.size(), 0);
    std::vector<std::size_t> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      auto u = stack.back();
      stack.pop_back();
      for (auto e : adj_[u]) {
        if (cap_[e] > tol_ && !seen[to_[e]]) {
          seen[to_[e]] = 1;
          stack.push_back(to_[e]);
        }
      }
    }
    return seen;
  }

 private:
  bool bfs(std::size_t s, std::size_t t) {
    level_.assign(adj_.size(), -1);
    std::vector<std::size_t> queue{s};
    level_[s] = 0;
    for (std::size_t h = 0; h < queue.size(); ++h) {
      auto u = queue[h];
      for (auto e : adj_[u]) {
        if (cap_[e] > tol_ && level_[to_[e]] < 0) {
          level_[to_[e]] = level_[u] + 1;
          queue.push_back(to_[e]);
        }
      }
    }
    return level_[t] >= 0;
  }

  // limit < 0 means unbounded.
  W dfs(std::size_t u, std::size_t t, const W& limit) {
    if (u == t) return limit;
    for (auto& i = it_[u]; i < adj_[u].size(); ++i) {
      const auto e = adj_[u][i];
      const auto v = to_[e];
      if (!(cap_[e] > tol_) || level_[v] != level_[u] + 1) continue;
      W want = (limit < W(0) || cap_[e] < limit) ? cap_[e] : limit;
      W got = dfs(v, t, want);
      if (got > tol_) {
        cap_[e] -= got;
        cap_[e ^ 1] += got;
        return got;
      }
    }
    return W(0);
  }

  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::size_t> to_;
  std::vector<W> cap_;
  std::vector<W> original_;
  std::vector<int> level_;
  std::vector<std::size_t> it_;
  W tol_;
};

template <class W>
struct TransportResult {
  bool related = false;
  W flow_value{0};
  /// (left state, right state, mass) on relation edges, lexicographic order.
  std::vector<std::tuple<std::uint32_t, std::uint32_t, W>> flows;
  /// Left states on the source side of the minimum cut (only when unrelated).
  StateSet violating;
};

/// Decides whether the two weighted supports (equal totals `total`) admit a
/// transport plan supported in `r`. `slack` is the accepted deficit
/// (0 for exact arithmetic).
template <class W>
TransportResult<W> solve_transport(const Relation& r, const WeightedStates<W>& left, const WeightedStates<W>& right,
                                   const W& total, bool want_witness, const W& slack = W(0), const W& zero_tol = W(0)) {
  const std::size_t n_l = left.size();
  const std::size_t n_r = right.size();
  const std::size_t source = n_l + n_r;
  const std::size_t sink = source + 1;
  MaxFlow<W> g(n_l + n_r + 2, zero_tol);
  for (std::size_t a = 0; a < n_l; ++a) g.add_edge(source, a, left.weights[a]);
  for (std::size_t b = 0; b < n_r; ++b) g.add_edge(n_l + b, sink, right.weights[b]);
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> middle;
  for (std::size_t a = 0; a < n_l; ++a) {
    for (std::size_t b = 0; b < n_r; ++b) {
      if (r.contains(left.states[a], right.states[b])) middle.emplace_back(a, b, g.add_edge(a, n_l + b, total));
    }
  }
  TransportResult<W> res;
  res.flow_value = g.run(source, sink);
  res.related = !(res.flow_value + slack < total);
  if (!want_witness) return res;
  if (res.related) {
    for (auto [a, b, e] : middle) {
      W f = g.flow(e);
      if (f > zero_tol) res.flows.emplace_back(left.states[a], right.states[b], std::move(f));
    }
    std::sort(res.flows.begin(), res.flows.end(), [](const auto& x, const auto& y) {
      return std::tie(std::get<0>(x), std::get<1>(x)) < std::tie(std::get<0>(y), std::get<1>(y));
    });
  } else {
    const auto seen = g.reachable(source);
    for (std::size_t a = 0; a < n_l; ++a) {
      if (seen[a]) res.violating.push_back(left.states[a]);
    }
    std::sort(res.violating.begin(), res.violating.end());
  }
  return res;
}

}  // namespace stochrel
