#include "stochrel/kernel.hpp"

#include <algorithm>
#include <map>

namespace stochrel {

Kernel::Kernel(SpacePtr from, SpacePtr to, std::vector<KernelRow> rows)
    : from_(std::move(from)), to_(std::move(to)), rows_(std::move(rows)) {
  if (!from_ || !to_ || rows_.size() != from_->size()) throw Error("kernel shape mismatch: one row per source state");
  for (std::size_t x = 0; x < rows_.size(); ++x) {
    auto& row = rows_[x];
    std::sort(row.begin(), row.end(), [](const KernelEntry& a, const KernelEntry& b) { return a.state < b.state; });
    Rational total = 0;
    KernelRow merged;
    for (auto& e : row) {
      if (e.state >= to_->size()) throw Error("kernel entry out of range");
      if (e.prob < 0) throw Error("negative kernel entry in row " + std::to_string(x));
      total += e.prob;
      if (e.prob == 0) continue;
      if (!merged.empty() && merged.back().state == e.state) {
        merged.back().prob += e.prob;
      } else {
        merged.push_back(std::move(e));
      }
    }
    if (total != 1) throw Error("kernel row " + std::to_string(x) + " sums to " + to_string(total) + ", not 1");
    row = std::move(merged);
  }
}

Kernel Kernel::from_dense(SpacePtr from, SpacePtr to, const std::vector<std::vector<Rational>>& rows) {
  std::vector<KernelRow> sparse(rows.size());
  for (std::size_t x = 0; x < rows.size(); ++x) {
    if (to && rows[x].size() != to->size()) throw Error("kernel shape mismatch in row " + std::to_string(x));
    for (std::size_t y = 0; y < rows[x].size(); ++y) {
      if (rows[x][y] != 0) sparse[x].push_back({y, rows[x][y]});
      if (rows[x][y] < 0) throw Error("negative kernel entry in row " + std::to_string(x));
    }
  }
  return Kernel(std::move(from), std::move(to), std::move(sparse));
}

Kernel Kernel::identity(SpacePtr space) {
  std::vector<KernelRow> rows(space->size());
  for (std::size_t x = 0; x < rows.size(); ++x) rows[x].push_back({x, Rational(1)});
  return Kernel(space, space, std::move(rows));
}

Rational Kernel::at(std::size_t x, std::size_t y) const {
  const auto& row = rows_.at(x);
  auto it = std::lower_bound(row.begin(), row.end(), y, [](const KernelEntry& e, std::size_t s) { return e.state < s; });
  if (it != row.end() && it->state == y) return it->prob;
  return 0;
}

Dist Kernel::row_dist(std::size_t x) const {
  std::vector<Rational> m(to_->size(), Rational(0));
  for (const auto& e : rows_.at(x)) m[e.state] = e.prob;
  return Dist(to_, std::move(m));
}

std::vector<std::vector<Rational>> Kernel::dense() const {
  std::vector<std::vector<Rational>> d(rows_.size(), std::vector<Rational>(to_->size(), Rational(0)));
  for (std::size_t x = 0; x < rows_.size(); ++x) {
    for (const auto& e : rows_[x]) d[x][e.state] = e.prob;
  }
  return d;
}

std::size_t sample_index(const std::vector<Rational>& weights, std::mt19937_64& rng) {
  Rational total = 0;
  for (const auto& w : weights) total += w;
  if (total <= 0) throw Error("cannot sample from zero weights");
  // Uniform draw on a fine grid of [0, total); exact comparison keeps zero-mass
  // entries unreachable.
  std::uniform_int_distribution<std::uint64_t> u(0, (std::uint64_t{1} << 52) - 1);
  Rational t(BigInt(std::to_string(u(rng)), 10), BigInt(1) << 52);
  t *= total;
  Rational acc = 0;
  std::size_t last = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0) continue;
    last = i;
    acc += weights[i];
    if (t < acc) return i;
  }
  return last;
}

std::size_t Kernel::sample(std::size_t x, std::mt19937_64& rng) const {
  const auto& row = rows_.at(x);
  std::vector<Rational> w;
  w.reserve(row.size());
  for (const auto& e : row) w.push_back(e.prob);
  return row[sample_index(w, rng)].state;
}

bool operator==(const Kernel& a, const Kernel& b) {
  if (!(a.from() == b.from()) || !(a.to() == b.to()) || a.rows_.size() != b.rows_.size()) return false;
  for (std::size_t x = 0; x < a.rows_.size(); ++x) {
    const auto& ra = a.rows_[x];
    const auto& rb = b.rows_[x];
    if (ra.size() != rb.size()) return false;
    for (std::size_t k = 0; k < ra.size(); ++k) {
      if (ra[k].state != rb[k].state || ra[k].prob != rb[k].prob) return false;
    }
  }
  return true;
}

Dist push(const Dist& mu, const Kernel& p) {
  if (!(mu.space() == p.from())) throw Error("push: distribution lives on the wrong space");
  std::vector<Rational> out(p.to().size(), Rational(0));
  for (std::size_t x = 0; x < mu.size(); ++x) {
    if (mu[x] == 0) continue;
    for (const auto& e : p.row(x)) out[e.state] += mu[x] * e.prob;
  }
  return Dist(p.to_ptr(), std::move(out));
}

Kernel compose(const Kernel& p, const Kernel& q) {
  if (!(p.to() == q.from())) throw Error("compose: kernel spaces do not chain");
  std::vector<KernelRow> rows(p.size());
  for (std::size_t x = 0; x < p.size(); ++x) {
    std::map<std::size_t, Rational> acc;
    for (const auto& e : p.row(x)) {
      for (const auto& f : q.row(e.state)) acc[f.state] += e.prob * f.prob;
    }
    for (auto& [s, v] : acc) rows[x].push_back({s, v});
  }
  return Kernel(p.from_ptr(), q.to_ptr(), std::move(rows));
}

}  // namespace stochrel
