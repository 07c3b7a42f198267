#include "stochrel/population.hpp"

#include <algorithm>
#include <bit>

#include "stochrel/builders.hpp"

namespace stochrel {

Point displacement(const MoveIndex& move, std::size_t m) {
  Point d(m, 0);
  if (move.first > 0) d[move.first - 1] -= 1;
  if (move.second > 0) d[move.second - 1] += 1;
  return d;
}

void PopulationModel::validate() const {
  if (box.dims() != m || box.hi.size() != m) throw Error("box dimension does not match m");
  for (std::size_t k = 0; k < m; ++k) {
    if (box.lo[k] > box.hi[k]) throw Error("empty box");
  }
  for (const auto& [move, expr] : rates) {
    if (move.first == move.second) throw Error("rate index pair must have i != j");
    if (move.first > m || move.second > m) throw Error("rate index out of range 0..m");
    if (expr.max_index() > m) throw Error("rate expression references x[" + std::to_string(expr.max_index()) + "]");
  }
  const auto sp = space();
  for (std::size_t s = 0; s < sp->size(); ++s) {
    for (const auto& [move, expr] : rates) {
      if (expr.evaluate(sp->point(s)) < 0) {
        throw Error("negative rate for (" + std::to_string(move.first) + "," + std::to_string(move.second) +
                    ") at " + sp->label(s));
      }
    }
  }
}

SpacePtr PopulationModel::space() const { return make_space(StateSpace::grid(box)); }

Point PopulationModel::target(const MoveIndex& move, const Point& x) const {
  Point y = x;
  if (move.first > 0) y[move.first - 1] -= 1;
  if (move.second > 0) y[move.second - 1] += 1;
  return y;
}

Rational PopulationModel::rate(const MoveIndex& move, const Point& x) const {
  auto it = rates.find(move);
  if (it == rates.end()) return 0;
  if (!box.contains(target(move, x))) return 0;
  return it->second.evaluate(x);
}

RateKernel to_rate_kernel(const PopulationModel& model) { return to_rate_kernel(model, model.space()); }

RateKernel to_rate_kernel(const PopulationModel& model, const SpacePtr& space) {
  std::vector<KernelRow> rows(space->size());
  for (std::size_t s = 0; s < space->size(); ++s) {
    const Point& x = space->point(s);
    for (const auto& [move, expr] : model.rates) {
      const Point y = model.target(move, x);
      if (!model.box.contains(y)) continue;
      Rational a = expr.evaluate(x);
      if (a == 0) continue;
      if (a < 0) throw Error("negative rate at " + space->label(s));
      const std::size_t t = *space->find(y);
      auto& row = rows[s];
      auto pos = std::find_if(row.begin(), row.end(), [t](const KernelEntry& e) { return e.state == t; });
      if (pos == row.end()) {
        row.push_back({t, a});
      } else {
        pos->prob += a;
      }
    }
  }
  return RateKernel::from_sparse_rates(space, std::move(rows));
}

namespace {

std::vector<MoveIndex> all_moves(const PopulationModel& model) {
  std::vector<MoveIndex> out;
  for (std::size_t i = 0; i <= model.m; ++i) {
    for (std::size_t j = 0; j <= model.m; ++j) {
      if (i != j) out.emplace_back(i, j);
    }
  }
  return out;
}

/// Targets and truncated rates of every move at one state.
struct MoveTable {
  std::vector<std::optional<std::size_t>> target;
  std::vector<Rational> rate;
};

MoveTable move_table(const PopulationModel& model, const StateSpace& space, std::size_t s,
                     const std::vector<MoveIndex>& moves) {
  MoveTable t;
  const Point& x = space.point(s);
  for (const auto& mv : moves) {
    const Point y = model.target(mv, x);
    if (model.box.contains(y)) {
      t.target.push_back(space.find(y));
      t.rate.push_back(model.rate(mv, x));
    } else {
      t.target.push_back(std::nullopt);
      t.rate.push_back(0);
    }
  }
  return t;
}

/// Subset sums of integer-scaled rates, indexed by bitmask.
std::vector<BigInt> subset_sums(const std::vector<BigInt>& v) {
  std::vector<BigInt> out(std::size_t{1} << v.size());
  for (std::size_t mask = 1; mask < out.size(); ++mask) {
    const auto low = static_cast<std::size_t>(std::countr_zero(mask));
    out[mask] = out[mask & (mask - 1)] + v[low];
  }
  return out;
}

std::vector<std::uint32_t> subset_unions(const std::vector<std::uint32_t>& v) {
  std::vector<std::uint32_t> out(std::size_t{1} << v.size(), 0);
  for (std::size_t mask = 1; mask < out.size(); ++mask) {
    const auto low = static_cast<std::size_t>(std::countr_zero(mask));
    out[mask] = out[mask & (mask - 1)] | v[low];
  }
  return out;
}

std::vector<MoveIndex> moves_of(std::uint32_t mask, const std::vector<MoveIndex>& moves) {
  std::vector<MoveIndex> out;
  for (std::size_t a = 0; a < moves.size(); ++a) {
    if (mask >> a & 1u) out.push_back(moves[a]);
  }
  return out;
}

}  // namespace

PopulationReport population_check(const Relation& r, const PopulationModel& model1, const PopulationModel& model2) {
  model1.validate();
  model2.validate();
  const auto s1 = model1.space();
  const auto s2 = model2.space();
  if (!(r.left() == *s1) || !(r.right() == *s2)) throw Error("relation spaces do not match the model boxes");

  PopulationReport report;
  if (model1.m > 3 || model2.m > 3) {
    auto pr = ct_preserves(r, to_rate_kernel(model1, r.left_ptr()), to_rate_kernel(model2, r.right_ptr()));
    report.used_fallback = true;
    report.preserved = pr.preserved;
    report.pairs_checked = pr.pairs_checked;
    for (const auto& f : pr.failures) report.failures.push_back({f.left, f.right, true, {}});
    return report;
  }

  const auto moves1 = all_moves(model1);
  const auto moves2 = all_moves(model2);
  std::vector<MoveTable> t1(s1->size()), t2(s2->size());
  for (std::size_t s = 0; s < s1->size(); ++s) t1[s] = move_table(model1, *s1, s, moves1);
  for (std::size_t s = 0; s < s2->size(); ++s) t2[s] = move_table(model2, *s2, s, moves2);

  for (const auto& [x, y] : r.pairs()) {
    ++report.pairs_checked;
    const auto& a = t1[x];
    const auto& b = t2[y];
    std::vector<Rational> all = a.rate;
    all.insert(all.end(), b.rate.begin(), b.rate.end());
    const BigInt d = common_denominator(all);
    std::vector<BigInt> ax, by;
    for (const auto& v : a.rate) ax.push_back(scale_to_integer(v, d));
    for (const auto& v : b.rate) by.push_back(scale_to_integer(v, d));

    // Related target pairs: forward[a] = moves b with x+e_a ~ y+e_b, backward the transpose.
    std::vector<std::uint32_t> forward(moves1.size(), 0), backward(moves2.size(), 0);
    std::uint32_t cand_u = 0, cand_v = 0;
    for (std::size_t i = 0; i < moves1.size(); ++i) {
      if (!a.target[i] || !r.contains(*a.target[i], y)) cand_u |= 1u << i;
      if (!a.target[i]) continue;
      for (std::size_t j = 0; j < moves2.size(); ++j) {
        if (b.target[j] && r.contains(*a.target[i], *b.target[j])) {
          forward[i] |= 1u << j;
          backward[j] |= 1u << i;
        }
      }
    }
    for (std::size_t j = 0; j < moves2.size(); ++j) {
      if (!b.target[j] || !r.contains(x, *b.target[j])) cand_v |= 1u << j;
    }

    const auto sum_x = subset_sums(ax);
    const auto sum_y = subset_sums(by);
    const auto fwd = subset_unions(forward);
    const auto bwd = subset_unions(backward);

    bool failed = false;
    for (std::uint32_t u = cand_u;; u = (u - 1) & cand_u) {
      if (sum_x[u] > sum_y[fwd[u]]) {
        report.failures.push_back({x, y, true, moves_of(u, moves1)});
        failed = true;
        break;
      }
      if (u == 0) break;
    }
    if (!failed) {
      for (std::uint32_t v = cand_v;; v = (v - 1) & cand_v) {
        if (sum_x[bwd[v]] < sum_y[v]) {
          report.failures.push_back({x, y, false, moves_of(v, moves2)});
          break;
        }
        if (v == 0) break;
      }
    }
  }
  report.preserved = report.failures.empty();
  return report;
}

PartialOrderReport partial_order_check(const std::vector<std::size_t>& coords, const PopulationModel& model1,
                                       const PopulationModel& model2) {
  model1.validate();
  model2.validate();
  for (auto c : coords) {
    if (c == 0 || c > model1.m || c > model2.m) throw Error("coordinate " + std::to_string(c) + " not shared");
  }
  const auto s1 = model1.space();
  const auto s2 = model2.space();
  const std::size_t m1 = model1.m, m2 = model2.m;

  PartialOrderReport report;
  for (std::size_t xi = 0; xi < s1->size(); ++xi) {
    const Point& x = s1->point(xi);
    for (std::size_t yi = 0; yi < s2->size(); ++yi) {
      const Point& y = s2->point(yi);
      bool related = true;
      for (auto c : coords) related = related && x[c - 1] <= y[c - 1];
      if (!related) continue;
      ++report.pairs_checked;

      std::vector<char> in_m0(std::max(m1, m2) + 1, 0);
      for (auto c : coords) {
        if (x[c - 1] == y[c - 1]) in_m0[c] = 1;
      }
      bool failed = false;
      for (auto k : coords) {
        if (!in_m0[k] || failed) continue;
        // Arrivals into colony k: I ⊆ [0,m1] \ {k}, right side over I ∪ ([0,m2] \ M0).
        std::vector<std::size_t> src1;
        for (std::size_t i = 0; i <= m1; ++i) {
          if (i != k) src1.push_back(i);
        }
        for (std::uint32_t mask = 0; mask < (1u << src1.size()) && !failed; ++mask) {
          Rational lhs = 0, rhs = 0;
          std::vector<char> in_rhs(m2 + 1, 0);
          std::vector<std::size_t> chosen;
          for (std::size_t a = 0; a < src1.size(); ++a) {
            if (!(mask >> a & 1u)) continue;
            chosen.push_back(src1[a]);
            lhs += model1.rate({src1[a], k}, x);
            if (src1[a] <= m2) in_rhs[src1[a]] = 1;
          }
          for (std::size_t i = 0; i <= m2; ++i) {
            if (!in_m0[i] || i == 0) in_rhs[i] = in_rhs[i] || (i != k);
          }
          for (std::size_t i = 0; i <= m2; ++i) {
            if (in_rhs[i] && i != k) rhs += model2.rate({i, k}, y);
          }
          if (lhs > rhs) {
            report.failures.push_back({xi, yi, k, true, chosen});
            failed = true;
          }
        }
        // Departures from colony k: J ⊆ [0,m2] \ {k}, left side over J ∪ ([0,m1] \ M0).
        std::vector<std::size_t> dst2;
        for (std::size_t j = 0; j <= m2; ++j) {
          if (j != k) dst2.push_back(j);
        }
        for (std::uint32_t mask = 0; mask < (1u << dst2.size()) && !failed; ++mask) {
          Rational lhs = 0, rhs = 0;
          std::vector<char> in_lhs(m1 + 1, 0);
          std::vector<std::size_t> chosen;
          for (std::size_t a = 0; a < dst2.size(); ++a) {
            if (!(mask >> a & 1u)) continue;
            chosen.push_back(dst2[a]);
            rhs += model2.rate({k, dst2[a]}, y);
            if (dst2[a] <= m1) in_lhs[dst2[a]] = 1;
          }
          for (std::size_t j = 0; j <= m1; ++j) {
            if (!in_m0[j] || j == 0) in_lhs[j] = in_lhs[j] || (j != k);
          }
          for (std::size_t j = 0; j <= m1; ++j) {
            if (in_lhs[j] && j != k) lhs += model1.rate({k, j}, x);
          }
          if (lhs < rhs) {
            report.failures.push_back({xi, yi, k, false, chosen});
            failed = true;
          }
        }
      }
    }
  }
  report.preserved = report.failures.empty();
  return report;
}

}  // namespace stochrel
