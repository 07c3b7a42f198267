#include "stochrel/coupling.hpp"

#include <algorithm>
#include <limits>

#include "stochrel/transport.hpp"

namespace stochrel {

Dist::Dist(SpacePtr space, std::vector<Rational> mass) : space_(std::move(space)), mass_(std::move(mass)) {
  if (!space_ || mass_.size() != space_->size()) throw Error("distribution size does not match its space");
  Rational total = 0;
  for (const auto& m : mass_) {
    if (m < 0) throw Error("negative probability mass");
    total += m;
  }
  if (total != 1) throw Error("marginal not normalized: total mass " + to_string(total));
}

Dist Dist::dirac(SpacePtr space, std::size_t state) {
  std::vector<Rational> m(space->size(), Rational(0));
  m.at(state) = 1;
  return Dist(std::move(space), std::move(m));
}

Dist Dist::uniform(SpacePtr space) {
  const auto n = space->size();
  std::vector<Rational> m(n, rational(1, static_cast<std::int64_t>(n)));
  return Dist(std::move(space), std::move(m));
}

Rational Dist::measure(const StateSet& set) const {
  Rational s = 0;
  for (auto i : set) s += mass_.at(i);
  return s;
}

StateSet Dist::support() const {
  StateSet s;
  for (std::size_t i = 0; i < mass_.size(); ++i) {
    if (mass_[i] > 0) s.push_back(i);
  }
  return s;
}

Rational Dist::expectation(const std::vector<Rational>& f) const {
  if (f.size() != mass_.size()) throw Error("function size does not match distribution");
  Rational s = 0;
  for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * mass_[i];
  return s;
}

CouplingMatrix::CouplingMatrix(std::size_t n1, std::size_t n2, std::vector<Entry> entries)
    : n1_(n1), n2_(n2), entries_(std::move(entries)) {
  for (const auto& e : entries_) {
    if (e.left >= n1_ || e.right >= n2_) throw Error("coupling entry out of range");
    if (e.mass < 0) throw Error("negative coupling mass");
  }
  std::sort(entries_.begin(), entries_.end(),
            [](const Entry& a, const Entry& b) { return std::tie(a.left, a.right) < std::tie(b.left, b.right); });
  entries_.erase(std::remove_if(entries_.begin(), entries_.end(), [](const Entry& e) { return e.mass == 0; }),
                 entries_.end());
}

CouplingMatrix CouplingMatrix::product(const Dist& mu, const Dist& nu) {
  std::vector<Entry> e;
  for (auto i : mu.support()) {
    for (auto j : nu.support()) e.push_back({i, j, mu[i] * nu[j]});
  }
  return CouplingMatrix(mu.size(), nu.size(), std::move(e));
}

Rational CouplingMatrix::at(std::size_t i, std::size_t j) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), std::make_pair(i, j), [](const Entry& e, const auto& key) {
    return std::tie(e.left, e.right) < std::tie(key.first, key.second);
  });
  if (it != entries_.end() && it->left == i && it->right == j) return it->mass;
  return 0;
}

std::vector<Rational> CouplingMatrix::left_marginal() const {
  std::vector<Rational> m(n1_, Rational(0));
  for (const auto& e : entries_) m[e.left] += e.mass;
  return m;
}

std::vector<Rational> CouplingMatrix::right_marginal() const {
  std::vector<Rational> m(n2_, Rational(0));
  for (const auto& e : entries_) m[e.right] += e.mass;
  return m;
}

bool CouplingMatrix::supported_in(const Relation& r) const {
  if (r.left_size() != n1_ || r.right_size() != n2_) return false;
  return std::all_of(entries_.begin(), entries_.end(), [&](const Entry& e) { return r.contains(e.left, e.right); });
}

bool CouplingMatrix::couples(const Dist& mu, const Dist& nu) const {
  return left_marginal() == mu.mass() && right_marginal() == nu.mass();
}

namespace {

template <class W>
StDecision decide(const Relation& r, const Dist& mu, const Dist& nu, const std::vector<BigInt>& wl,
                  const std::vector<BigInt>& wr, const BigInt& scale) {
  auto convert = [](const BigInt& v) {
    if constexpr (std::is_same_v<W, BigInt>) {
      return v;
    } else {
      return *to_int64(v);
    }
  };
  WeightedStates<W> left, right;
  for (std::size_t i = 0; i < wl.size(); ++i) {
    if (wl[i] > 0) left.push(static_cast<std::uint32_t>(i), convert(wl[i]));
  }
  for (std::size_t j = 0; j < wr.size(); ++j) {
    if (wr[j] > 0) right.push(static_cast<std::uint32_t>(j), convert(wr[j]));
  }
  const W total = convert(scale);
  auto res = solve_transport<W>(r, left, right, total, true);
  StDecision d;
  d.related = res.related;
  if (res.related) {
    std::vector<CouplingMatrix::Entry> entries;
    entries.reserve(res.flows.size());
    for (const auto& [a, b, f] : res.flows) {
      BigInt num;
      if constexpr (std::is_same_v<W, BigInt>) {
        num = f;
      } else {
        num = BigInt(std::to_string(f), 10);
      }
      Rational m(num, scale);
      m.canonicalize();
      entries.push_back({a, b, m});
    }
    d.coupling = CouplingMatrix(mu.size(), nu.size(), std::move(entries));
  } else {
    d.violating_set = res.violating;
  }
  return d;
}

}  // namespace

StDecision st_related(const Relation& r, const Dist& mu, const Dist& nu) {
  if (!(mu.space() == r.left()) || !(nu.space() == r.right())) throw Error("st_related: space mismatch");
  std::vector<Rational> all = mu.mass();
  all.insert(all.end(), nu.mass().begin(), nu.mass().end());
  const BigInt scale = common_denominator(all);
  std::vector<BigInt> wl, wr;
  wl.reserve(mu.size());
  wr.reserve(nu.size());
  for (const auto& m : mu.mass()) wl.push_back(scale_to_integer(m, scale));
  for (const auto& m : nu.mass()) wr.push_back(scale_to_integer(m, scale));
  // Flows never exceed the scale, residuals never exceed twice of it.
  static const BigInt limit = BigInt(1) << 61;
  if (scale < limit) return decide<std::int64_t>(r, mu, nu, wl, wr, scale);
  return decide<BigInt>(r, mu, nu, wl, wr, scale);
}

namespace {

void require_small(std::size_t n) {
  if (n > 20) throw Error("space too large for subset enumeration (n > 20)");
}

StateSet mask_to_set(std::uint64_t mask, std::size_t n) {
  StateSet s;
  for (std::size_t i = 0; i < n; ++i) {
    if ((mask >> i) & 1u) s.push_back(i);
  }
  return s;
}

}  // namespace

std::optional<StateSet> subset_oracle_violation(const Relation& r, const Dist& mu, const Dist& nu) {
  if (!(mu.space() == r.left()) || !(nu.space() == r.right())) throw Error("subset_oracle: space mismatch");
  const std::size_t n1 = r.left_size();
  require_small(n1);
  std::vector<std::vector<char>> rows(n1, std::vector<char>(r.right_size(), 0));
  for (std::size_t i = 0; i < n1; ++i) {
    for (auto j : r.row(i)) rows[i][j] = 1;
  }
  std::vector<char> image(r.right_size());
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n1); ++mask) {
    Rational lhs = 0;
    std::fill(image.begin(), image.end(), 0);
    for (std::size_t i = 0; i < n1; ++i) {
      if ((mask >> i) & 1u) {
        lhs += mu[i];
        for (std::size_t j = 0; j < image.size(); ++j) image[j] |= rows[i][j];
      }
    }
    Rational rhs = 0;
    for (std::size_t j = 0; j < image.size(); ++j) {
      if (image[j]) rhs += nu[j];
    }
    if (lhs > rhs) return mask_to_set(mask, n1);
  }
  return std::nullopt;
}

bool subset_oracle(const Relation& r, const Dist& mu, const Dist& nu) {
  return !subset_oracle_violation(r, mu, nu).has_value();
}

bool functional_test(const Relation& r, const Dist& mu, const Dist& nu, const RealFn& f) {
  const RealFn g = conjugate_fn(r, f, Side::right);
  Rational lhs = 0, rhs = 0;
  for (std::size_t i = 0; i < mu.size(); ++i) lhs += f[i] * mu[i];
  for (std::size_t j = 0; j < nu.size(); ++j) rhs += g[j] * nu[j];
  return lhs <= rhs;
}

bool upper_set_test(const Relation& order, const Dist& mu, const Dist& nu) {
  const std::size_t n = order.left_size();
  if (order.right_size() != n) throw Error("upper_set_test requires a relation on one space");
  require_small(n);
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    bool upper = true;
    for (std::size_t i = 0; i < n && upper; ++i) {
      if (!((mask >> i) & 1u)) continue;
      for (auto j : order.row(i)) {
        if (!((mask >> j) & 1u)) {
          upper = false;
          break;
        }
      }
    }
    if (!upper) continue;
    const auto set = mask_to_set(mask, n);
    if (mu.measure(set) > nu.measure(set)) return false;
  }
  return true;
}

ApproxDecision st_related_approx(const Relation& r, const std::vector<double>& mu, const std::vector<double>& nu,
                                 double tolerance) {
  if (mu.size() != r.left_size() || nu.size() != r.right_size()) throw Error("st_related_approx: size mismatch");
  WeightedStates<double> left, right;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (mu[i] < 0 || nu.empty()) throw Error("negative probability mass");
    if (mu[i] > 0) left.push(static_cast<std::uint32_t>(i), mu[i]);
  }
  for (std::size_t j = 0; j < nu.size(); ++j) {
    if (nu[j] < 0) throw Error("negative probability mass");
    if (nu[j] > 0) right.push(static_cast<std::uint32_t>(j), nu[j]);
  }
  auto res = solve_transport<double>(r, left, right, 1.0, true, tolerance, 1e-15);
  ApproxDecision d;
  d.related = res.related;
  d.flow_value = res.flow_value;
  for (const auto& [a, b, f] : res.flows) d.coupling.emplace_back(a, b, f);
  d.violating_set = res.violating;
  return d;
}

}  // namespace stochrel
