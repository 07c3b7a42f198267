#include "stochrel/stationary.hpp"

#include <cmath>
#include <map>

namespace stochrel {

namespace {

using SparseRow = std::map<std::size_t, Rational>;

bool strongly_connected(const std::vector<std::vector<std::size_t>>& out) {
  const std::size_t n = out.size();
  std::vector<std::vector<std::size_t>> in(n);
  for (std::size_t u = 0; u < n; ++u) {
    for (auto v : out[u]) in[v].push_back(u);
  }
  auto reach_all = [n](const std::vector<std::vector<std::size_t>>& g) {
    std::vector<char> seen(n, 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
      auto u = stack.back();
      stack.pop_back();
      for (auto v : g[u]) {
        if (!seen[v]) {
          seen[v] = 1;
          ++count;
          stack.push_back(v);
        }
      }
    }
    return count == n;
  };
  return reach_all(out) && reach_all(in);
}

std::vector<std::vector<std::size_t>> graph_of(const Kernel& p, const std::vector<Rational>* q) {
  std::vector<std::vector<std::size_t>> g(p.size());
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (q && (*q)[x] == 0) continue;
    for (const auto& e : p.row(x)) {
      if (e.state != x) g[x].push_back(e.state);
    }
  }
  return g;
}

/// Solves pi A = 0 with sum pi = 1, where A is given by rows (A[x][y]).
/// Transposes to equations over columns, replaces the last one with the
/// normalization and runs sparse Gaussian elimination.
std::vector<Rational> solve_balance(const std::vector<SparseRow>& a) {
  const std::size_t n = a.size();
  std::vector<SparseRow> eq(n);
  for (std::size_t x = 0; x < n; ++x) {
    for (const auto& [y, v] : a[x]) {
      if (v != 0) eq[y][x] = v;
    }
  }
  std::vector<Rational> rhs(n, Rational(0));
  eq[n - 1].clear();
  for (std::size_t x = 0; x < n; ++x) eq[n - 1][x] = 1;
  rhs[n - 1] = 1;

  std::vector<std::size_t> pivot_row(n);
  std::vector<char> used(n, 0);
  // Column-by-column elimination; pick the unused row with the fewest entries.
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t best = n;
    for (std::size_t r = 0; r < n; ++r) {
      if (used[r]) continue;
      auto it = eq[r].find(col);
      if (it == eq[r].end() || it->second == 0) continue;
      if (best == n || eq[r].size() < eq[best].size()) best = r;
    }
    if (best == n) throw Error("singular balance system: chain has no unique stationary distribution");
    used[best] = 1;
    pivot_row[col] = best;
    const Rational inv = 1 / eq[best][col];
    for (auto& [k, v] : eq[best]) v *= inv;
    rhs[best] *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == best) continue;
      auto it = eq[r].find(col);
      if (it == eq[r].end()) continue;
      const Rational f = it->second;
      eq[r].erase(it);
      if (f == 0) continue;
      for (const auto& [k, v] : eq[best]) {
        if (k == col) continue;
        auto& target = eq[r][k];
        target -= f * v;
        if (target == 0) eq[r].erase(k);
      }
      rhs[r] -= f * rhs[best];
    }
  }
  std::vector<Rational> pi(n);
  for (std::size_t col = 0; col < n; ++col) pi[col] = rhs[pivot_row[col]];
  return pi;
}

}  // namespace

bool irreducible(const RateKernel& q) { return strongly_connected(graph_of(q.jump(), &q.q())); }
bool irreducible(const Kernel& p) {
  if (!(p.from() == p.to())) return false;
  return strongly_connected(graph_of(p, nullptr));
}

Dist stationary(const RateKernel& q) {
  if (!irreducible(q)) throw Error("reducible chain: no unique stationary distribution");
  const std::size_t n = q.size();
  std::vector<SparseRow> gen(n);
  for (std::size_t x = 0; x < n; ++x) {
    Rational out = 0;
    for (const auto& e : q.jump().row(x)) {
      if (e.state == x) continue;
      const Rational r = q.q(x) * e.prob;
      gen[x][e.state] += r;
      out += r;
    }
    gen[x][x] -= out;
  }
  return Dist(q.space_ptr(), solve_balance(gen));
}

Dist stationary(const Kernel& p) {
  if (!irreducible(p)) throw Error("reducible chain: no unique stationary distribution");
  const std::size_t n = p.size();
  std::vector<SparseRow> a(n);
  for (std::size_t x = 0; x < n; ++x) {
    for (const auto& e : p.row(x)) a[x][e.state] += e.prob;
    a[x][x] -= 1;
  }
  return Dist(p.from_ptr(), solve_balance(a));
}

namespace {

ApproxStationary power_iterate(const std::vector<std::vector<std::pair<std::size_t, double>>>& rows, double tolerance,
                               std::size_t max_iterations) {
  const std::size_t n = rows.size();
  ApproxStationary out;
  out.pi.assign(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n);
  for (std::size_t it = 0; it < max_iterations; ++it) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t x = 0; x < n; ++x) {
      for (const auto& [y, p] : rows[x]) next[y] += out.pi[x] * p;
    }
    double res = 0, total = 0;
    for (std::size_t x = 0; x < n; ++x) {
      res += std::abs(next[x] - out.pi[x]);
      total += next[x];
    }
    for (auto& v : next) v /= total;
    out.pi.swap(next);
    out.iterations = it + 1;
    out.residual = res;
    if (res < tolerance) {
      out.converged = true;
      break;
    }
  }
  return out;
}

}  // namespace

ApproxStationary stationary_approx(const RateKernel& q, double tolerance, std::size_t max_iterations) {
  double lambda = 0;
  for (const auto& v : q.q()) lambda = std::max(lambda, v.get_d());
  lambda = lambda * 1.05 + 1e-9;
  std::vector<std::vector<std::pair<std::size_t, double>>> rows(q.size());
  for (std::size_t x = 0; x < q.size(); ++x) {
    double out = 0;
    for (const auto& e : q.jump().row(x)) {
      if (e.state == x) continue;
      const double r = Rational(q.q(x) * e.prob).get_d() / lambda;
      rows[x].emplace_back(e.state, r);
      out += r;
    }
    rows[x].emplace_back(x, 1.0 - out);
  }
  return power_iterate(rows, tolerance, max_iterations);
}

ApproxStationary stationary_approx(const Kernel& p, double tolerance, std::size_t max_iterations) {
  std::vector<std::vector<std::pair<std::size_t, double>>> rows(p.size());
  for (std::size_t x = 0; x < p.size(); ++x) {
    // Lazy chain (P + I) / 2 has the same stationary law and avoids periodicity.
    rows[x].emplace_back(x, 0.5);
    for (const auto& e : p.row(x)) rows[x].emplace_back(e.state, 0.5 * e.prob.get_d());
  }
  return power_iterate(rows, tolerance, max_iterations);
}

namespace {

template <class Chain>
StationaryComparison compare_impl(const Relation& r, const Chain& c1, const Chain& c2, const SubrelationTrace& trace,
                                  bool approximate) {
  StationaryComparison out;
  out.iterations = trace.steps.size() - 1;
  const Relation& star = trace.fixed_point();
  out.conclusive = trace.converged && !star.empty();
  if (out.conclusive) out.r_star = star;
  if (!approximate && c1.size() <= kExactStationaryLimit && c2.size() <= kExactStationaryLimit) {
    out.pi1 = stationary(c1);
    out.pi2 = stationary(c2);
    out.decision = st_related(r, *out.pi1, *out.pi2);
    if (out.conclusive) out.decision_r_star = st_related(star, *out.pi1, *out.pi2);
  } else {
    out.approximate = true;
    out.approx_pi1 = stationary_approx(c1);
    out.approx_pi2 = stationary_approx(c2);
    out.approx_decision = st_related_approx(r, out.approx_pi1->pi, out.approx_pi2->pi);
  }
  return out;
}

}  // namespace

StationaryComparison compare_stationary(const Relation& r, const RateKernel& q1, const RateKernel& q2,
                                        bool approximate) {
  if (!irreducible(q1) || !irreducible(q2)) throw Error("reducible chain: no unique stationary distribution");
  return compare_impl(r, q1, q2, ct_subrelation(r, q1, q2), approximate);
}

StationaryComparison compare_stationary(const Relation& r, const Kernel& p1, const Kernel& p2, bool approximate) {
  if (!irreducible(p1) || !irreducible(p2)) throw Error("reducible chain: no unique stationary distribution");
  return compare_impl(r, p1, p2, subrelation(r, p1, p2), approximate);
}

}  // namespace stochrel
