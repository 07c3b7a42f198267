#include "stochrel/ctmc.hpp"

#include <algorithm>
#include <cmath>

#include "engine.hpp"

namespace stochrel {

RateKernel::RateKernel(std::vector<Rational> q, Kernel jump) : q_(std::move(q)), jump_(std::move(jump)) {
  if (q_.size() != jump_.size()) throw Error("rate kernel: one total rate per state");
  if (!(jump_.from() == jump_.to())) throw Error("rate kernel: jump kernel must act on one space");
  for (const auto& v : q_) {
    if (v < 0) throw Error("negative total jump rate");
  }
}

RateKernel RateKernel::from_sparse_rates(SpacePtr space, std::vector<KernelRow> rates) {
  if (rates.size() != space->size()) throw Error("rate matrix needs one row per state");
  std::vector<Rational> q(rates.size(), Rational(0));
  std::vector<KernelRow> jump(rates.size());
  for (std::size_t x = 0; x < rates.size(); ++x) {
    for (const auto& e : rates[x]) {
      if (e.state >= space->size()) throw Error("rate entry out of range");
      if (e.state == x) continue;
      if (e.prob < 0) throw Error("negative off-diagonal rate in row " + std::to_string(x));
      q[x] += e.prob;
    }
    if (q[x] == 0) {
      jump[x].push_back({x, Rational(1)});
      continue;
    }
    for (const auto& e : rates[x]) {
      if (e.state != x && e.prob != 0) jump[x].push_back({e.state, e.prob / q[x]});
    }
  }
  return RateKernel(std::move(q), Kernel(space, space, std::move(jump)));
}

RateKernel RateKernel::from_rates(SpacePtr space, const std::vector<std::vector<Rational>>& rates) {
  std::vector<KernelRow> sparse(rates.size());
  for (std::size_t x = 0; x < rates.size(); ++x) {
    if (rates[x].size() != space->size()) throw Error("rate matrix shape mismatch in row " + std::to_string(x));
    for (std::size_t y = 0; y < rates[x].size(); ++y) {
      if (y != x && rates[x][y] != 0) sparse[x].push_back({y, rates[x][y]});
      if (y != x && rates[x][y] < 0) throw Error("negative off-diagonal rate in row " + std::to_string(x));
    }
  }
  return from_sparse_rates(std::move(space), std::move(sparse));
}

Rational RateKernel::rate(std::size_t x, std::size_t y) const { return q_.at(x) * jump_.at(x, y); }

Rational RateKernel::rate(std::size_t x, const StateSet& set) const {
  Rational s = 0;
  for (auto y : set) s += jump_.at(x, y);
  return q_.at(x) * s;
}

UniformizedPair::UniformizedPair(const RateKernel& q1, const RateKernel& q2) : q1_(q1), q2_(q2) {}

UniformizedPair uniformize(const RateKernel& q1, const RateKernel& q2) { return UniformizedPair(q1, q2); }

namespace {

Dist hat_row(const RateKernel& own, std::size_t x, const Rational& qbar) {
  std::vector<Rational> m(own.size(), Rational(0));
  const Rational w = own.q(x) / qbar;
  for (const auto& e : own.jump().row(x)) m[e.state] += w * e.prob;
  m[x] += 1 - w;
  return Dist(own.space_ptr(), std::move(m));
}

}  // namespace

Dist UniformizedPair::hat_p1(std::size_t x1, std::size_t x2) const { return hat_row(q1_, x1, qbar(x1, x2)); }
Dist UniformizedPair::hat_p2(std::size_t x1, std::size_t x2) const { return hat_row(q2_, x2, qbar(x1, x2)); }

SpacePtr UniformizedPair::product_space() const {
  std::vector<std::string> labels;
  labels.reserve(q1_.size() * q2_.size());
  for (std::size_t a = 0; a < q1_.size(); ++a) {
    for (std::size_t b = 0; b < q2_.size(); ++b) {
      labels.push_back("[" + q1_.space().label(a) + "|" + q2_.space().label(b) + "]");
    }
  }
  return make_space(StateSpace(std::move(labels)));
}

namespace {

Kernel hat_kernel(const UniformizedPair& u, const RateKernel& q1, const RateKernel& q2, bool first) {
  std::vector<KernelRow> rows;
  rows.reserve(q1.size() * q2.size());
  for (std::size_t a = 0; a < q1.size(); ++a) {
    for (std::size_t b = 0; b < q2.size(); ++b) {
      const Dist d = first ? u.hat_p1(a, b) : u.hat_p2(a, b);
      KernelRow row;
      for (auto s : d.support()) row.push_back({s, d[s]});
      rows.push_back(std::move(row));
    }
  }
  return Kernel(u.product_space(), first ? q1.space_ptr() : q2.space_ptr(), std::move(rows));
}

}  // namespace

Kernel UniformizedPair::hat_kernel1() const { return hat_kernel(*this, q1_, q2_, true); }
Kernel UniformizedPair::hat_kernel2() const { return hat_kernel(*this, q1_, q2_, false); }

namespace detail {

/// hat P_i rows multiplied by qbar(x) and the common denominator D of all rates:
///   left (x1,x2):  D Q1(x1, y) for y != x1,  D (1 + q2(x2)) + D Q1(x1, x1) at x1
///   right (x1,x2): D Q2(x2, y) for y != x2,  D (1 + q1(x1)) + D Q2(x2, x2) at x2
/// with common total D qbar(x).
template <class W>
class UniformizedRows {
 public:
  UniformizedRows(const RateKernel& q1, const RateKernel& q2, const BigInt& scale) : scale_(from_big<W>(scale)) {
    load(q1, scale, jumps1_, self1_, q1_);
    load(q2, scale, jumps2_, self2_, q2_);
    support1_.resize(jumps1_.size());
    for (std::size_t x = 0; x < jumps1_.size(); ++x) {
      support1_[x] = jumps1_[x].states;
      support1_[x].push_back(static_cast<std::uint32_t>(x));
    }
    support2_.resize(jumps2_.size());
    for (std::size_t x = 0; x < jumps2_.size(); ++x) {
      support2_[x] = jumps2_[x].states;
      support2_[x].push_back(static_cast<std::uint32_t>(x));
    }
  }

  static BigInt scale_for(const RateKernel& q1, const RateKernel& q2) {
    std::vector<Rational> all;
    for (const RateKernel* k : {&q1, &q2}) {
      for (std::size_t x = 0; x < k->size(); ++x) {
        all.push_back(k->q(x));
        for (const auto& e : k->jump().row(x)) all.push_back(k->q(x) * e.prob);
      }
    }
    return common_denominator(all);
  }

  /// Largest row total D * max qbar.
  static BigInt max_total(const RateKernel& q1, const RateKernel& q2, const BigInt& scale) {
    Rational m1 = 0, m2 = 0;
    for (const auto& v : q1.q()) m1 = std::max(m1, v);
    for (const auto& v : q2.q()) m2 = std::max(m2, v);
    return scale_to_integer(1 + m1 + m2, scale);
  }

  void fill(std::size_t x1, std::size_t x2, RowPair<W>& out) const {
    out.left = jumps1_[x1];
    out.left.push(static_cast<std::uint32_t>(x1), scale_ + q2_[x2] + self1_[x1]);
    out.right = jumps2_[x2];
    out.right.push(static_cast<std::uint32_t>(x2), scale_ + q1_[x1] + self2_[x2]);
    out.total = scale_ + q1_[x1] + q2_[x2];
  }
  const std::vector<std::uint32_t>& left_support(std::size_t x1) const { return support1_[x1]; }
  const std::vector<std::uint32_t>& right_support(std::size_t x2) const { return support2_[x2]; }
  std::size_t left_sources() const { return jumps1_.size(); }
  std::size_t right_sources() const { return jumps2_.size(); }

 private:
  static void load(const RateKernel& k, const BigInt& scale, std::vector<WeightedStates<W>>& jumps, std::vector<W>& self,
                   std::vector<W>& q) {
    jumps.resize(k.size());
    self.assign(k.size(), W(0));
    q.assign(k.size(), W(0));
    for (std::size_t x = 0; x < k.size(); ++x) {
      q[x] = from_big<W>(scale_to_integer(k.q(x), scale));
      for (const auto& e : k.jump().row(x)) {
        const W w = from_big<W>(scale_to_integer(k.q(x) * e.prob, scale));
        if (e.state == x) {
          self[x] = w;
        } else if (w > W(0)) {
          jumps[x].push(static_cast<std::uint32_t>(e.state), w);
        }
      }
    }
  }

  W scale_;
  std::vector<WeightedStates<W>> jumps1_, jumps2_;
  std::vector<W> self1_, self2_, q1_, q2_;
  std::vector<std::vector<std::uint32_t>> support1_, support2_;
};

template <class Fn>
auto with_uniformized_rows(const RateKernel& q1, const RateKernel& q2, Fn&& fn) {
  const BigInt scale = UniformizedRows<BigInt>::scale_for(q1, q2);
  if (UniformizedRows<BigInt>::max_total(q1, q2, scale) < int64_total_limit()) {
    UniformizedRows<std::int64_t> rows(q1, q2, scale);
    return fn(rows, std::int64_t{});
  }
  UniformizedRows<BigInt> rows(q1, q2, scale);
  return fn(rows, BigInt{});
}

}  // namespace detail

namespace {

void check_ct_shapes(const Relation& r, const RateKernel& q1, const RateKernel& q2) {
  if (!(q1.space() == r.left()) || !(q2.space() == r.right())) throw Error("rate kernels do not match the relation");
}

}  // namespace

PreservationReport ct_preserves(const Relation& r, const RateKernel& q1, const RateKernel& q2) {
  check_ct_shapes(r, q1, q2);
  return detail::with_uniformized_rows(q1, q2, [&](const auto& rows, auto tag) {
    using W = decltype(tag);
    return detail::preserves_with<W>(r, r, rows);
  });
}

SubrelationTrace ct_subrelation(const Relation& r, const RateKernel& q1, const RateKernel& q2,
                                const SubrelationOptions& opts) {
  check_ct_shapes(r, q1, q2);
  return detail::with_uniformized_rows(q1, q2, [&](const auto& rows, auto tag) {
    using W = decltype(tag);
    return detail::subrelation_with<W>(r, rows, opts);
  });
}

namespace {

bool is_upper(const Relation& order, std::uint64_t mask, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (!((mask >> i) & 1u)) continue;
    for (auto j : order.row(i)) {
      if (!((mask >> j) & 1u)) return false;
    }
  }
  return true;
}

bool is_lower(const Relation& order, std::uint64_t mask, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    if (!((mask >> j) & 1u)) continue;
    for (auto i : order.column(j)) {
      if (!((mask >> i) & 1u)) return false;
    }
  }
  return true;
}

std::uint64_t image_mask(const std::vector<std::uint64_t>& rows, std::uint64_t mask) {
  std::uint64_t out = 0;
  for (std::size_t i = 0; mask; ++i, mask >>= 1) {
    if (mask & 1u) out |= rows[i];
  }
  return out;
}

StateSet mask_set(std::uint64_t mask) {
  StateSet s;
  for (std::size_t i = 0; mask; ++i, mask >>= 1) {
    if (mask & 1u) s.push_back(i);
  }
  return s;
}

}  // namespace

std::optional<CtSubsetViolation> ct_subset_violation(const Relation& r, const RateKernel& q1, const RateKernel& q2,
                                                     SubsetFamily family) {
  check_ct_shapes(r, q1, q2);
  const std::size_t n1 = r.left_size();
  const std::size_t n2 = r.right_size();
  if (n1 > 20 || n2 > 20) throw Error("space too large for subset enumeration (n > 20)");
  if (family == SubsetFamily::order_sets && n1 != n2) throw Error("order sets need a relation on one space");
  std::vector<std::uint64_t> fwd(n1, 0), bwd(n2, 0);
  for (std::size_t i = 0; i < n1; ++i) {
    for (auto j : r.row(i)) {
      fwd[i] |= std::uint64_t{1} << j;
      bwd[j] |= std::uint64_t{1} << i;
    }
  }
  // Off-diagonal rate rows; the self part never enters since x is outside B.
  auto rate_rows = [](const RateKernel& k) {
    std::vector<std::vector<Rational>> rows(k.size(), std::vector<Rational>(k.size(), Rational(0)));
    for (std::size_t x = 0; x < k.size(); ++x) {
      for (const auto& e : k.jump().row(x)) {
        if (e.state != x) rows[x][e.state] = k.q(x) * e.prob;
      }
    }
    return rows;
  };
  const auto rates1 = rate_rows(q1);
  const auto rates2 = rate_rows(q2);
  auto mass = [](const std::vector<Rational>& row, std::uint64_t mask) {
    Rational s = 0;
    for (std::size_t i = 0; mask; ++i, mask >>= 1) {
      if (mask & 1u) s += row[i];
    }
    return s;
  };

  std::vector<std::uint64_t> right_sets, left_sets;
  for (std::uint64_t m = 1; m < (std::uint64_t{1} << n1); ++m) {
    if (family == SubsetFamily::all || is_upper(r, m, n1)) right_sets.push_back(m);
  }
  for (std::uint64_t m = 1; m < (std::uint64_t{1} << n2); ++m) {
    if (family == SubsetFamily::all || is_lower(r, m, n2)) left_sets.push_back(m);
  }

  for (auto [x1, x2] : r.pairs()) {
    const std::uint64_t bit1 = std::uint64_t{1} << x1;
    const std::uint64_t bit2 = std::uint64_t{1} << x2;
    for (auto b1 : right_sets) {
      if (b1 & bit1) continue;
      const auto img = image_mask(fwd, b1);
      if (img & bit2) continue;
      if (mass(rates1[x1], b1) > mass(rates2[x2], img)) return CtSubsetViolation{x1, x2, true, mask_set(b1)};
    }
    for (auto b2 : left_sets) {
      if (b2 & bit2) continue;
      const auto img = image_mask(bwd, b2);
      if (img & bit1) continue;
      if (mass(rates1[x1], img) < mass(rates2[x2], b2)) return CtSubsetViolation{x1, x2, false, mask_set(b2)};
    }
  }
  return std::nullopt;
}

bool ct_subset_test(const Relation& r, const RateKernel& q1, const RateKernel& q2, SubsetFamily family) {
  return !ct_subset_violation(r, q1, q2, family).has_value();
}

CtCoupling ct_coupling(const Relation& r, const RateKernel& q1, const RateKernel& q2) {
  check_ct_shapes(r, q1, q2);
  const UniformizedPair u(q1, q2);
  std::vector<Rational> rate;
  std::vector<CouplingMatrix> rows;
  rate.reserve(r.left_size() * r.right_size());
  rows.reserve(r.left_size() * r.right_size());
  for (std::size_t x1 = 0; x1 < r.left_size(); ++x1) {
    for (std::size_t x2 = 0; x2 < r.right_size(); ++x2) {
      const Dist mu = u.hat_p1(x1, x2);
      const Dist nu = u.hat_p2(x1, x2);
      rate.push_back(u.qbar(x1, x2));
      if (r.contains(x1, x2)) {
        auto d = st_related(r, mu, nu);
        if (!d.related) throw NotPreservedError(x1, x2, *d.violating_set);
        rows.push_back(std::move(*d.coupling));
      } else {
        rows.push_back(CouplingMatrix::product(mu, nu));
      }
    }
  }
  return CtCoupling{std::move(rate),
                    CouplingKernel(r.left_ptr(), r.right_ptr(), r.left_ptr(), r.right_ptr(), std::move(rows))};
}

std::vector<CtPathPoint> simulate_ct_coupling(const CtCoupling& c, std::size_t x1, std::size_t x2, std::size_t jumps,
                                              std::mt19937_64& rng) {
  std::vector<CtPathPoint> path;
  path.reserve(jumps + 1);
  double t = 0;
  path.push_back({t, x1, x2});
  const std::size_t n2 = c.jump.from_right_size();
  for (std::size_t k = 0; k < jumps; ++k) {
    const auto& last = path.back();
    std::exponential_distribution<double> hold(c.rate[last.left * n2 + last.right].get_d());
    t += hold(rng);
    auto [y1, y2] = c.jump.sample(last.left, last.right, rng);
    path.push_back({t, y1, y2});
  }
  return path;
}

}  // namespace stochrel
