#include "stochrel/sequence.hpp"

namespace stochrel {

SequenceCoupling::SequenceCoupling(std::size_t horizon, std::map<PathPair, Rational> law)
    : horizon_(horizon), law_(std::move(law)) {}

std::map<History, Rational> SequenceCoupling::left_law() const {
  std::map<History, Rational> out;
  for (const auto& [p, m] : law_) out[p.left] += m;
  return out;
}

std::map<History, Rational> SequenceCoupling::right_law() const {
  std::map<History, Rational> out;
  for (const auto& [p, m] : law_) out[p.right] += m;
  return out;
}

Rational SequenceCoupling::mass_on(const Relation& r) const {
  Rational total = 0;
  for (const auto& [p, m] : law_) {
    if (related_coordinatewise(r, p.left, p.right)) total += m;
  }
  return total;
}

SequenceCoupling::PathPair SequenceCoupling::sample(std::mt19937_64& rng) const {
  std::vector<Rational> w;
  std::vector<const PathPair*> keys;
  for (const auto& [p, m] : law_) {
    keys.push_back(&p);
    w.push_back(m);
  }
  return *keys[sample_index(w, rng)];
}

namespace {

std::string history_string(const History& h) {
  std::string s;
  for (auto v : h) s += (s.empty() ? "" : ",") + std::to_string(v);
  return "[" + s + "]";
}

}  // namespace

SequenceHypothesisError::SequenceHypothesisError(History l, History r)
    : Error("conditional laws not stochastically related at histories " + history_string(l) + " ~ " +
            history_string(r)),
      left(std::move(l)),
      right(std::move(r)) {}

namespace {

using CouplingCache = std::map<std::pair<History, History>, CouplingMatrix>;

const CouplingMatrix& step_coupling(const Relation& r, const HistoryKernel& p, const HistoryKernel& q,
                                    const History& hx, const History& hy, CouplingCache& cache) {
  auto key = std::make_pair(hx, hy);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  const Dist mu = p(hx);
  const Dist nu = q(hy);
  if (!(mu.space() == r.left()) || !(nu.space() == r.right())) throw Error("conditional law on the wrong space");
  CouplingMatrix c = CouplingMatrix::product(mu, nu);
  if (related_coordinatewise(r, hx, hy)) {
    auto d = st_related(r, mu, nu);
    if (!d.related) throw SequenceHypothesisError(hx, hy);
    c = std::move(*d.coupling);
  }
  return cache.emplace(std::move(key), std::move(c)).first->second;
}

SequenceCoupling chain(const Relation& r, const CouplingMatrix& initial, const HistoryKernel& p, const HistoryKernel& q,
                       std::size_t horizon) {
  if (horizon == 0) throw Error("horizon must be at least 1");
  if (initial.left_size() != r.left_size() || initial.right_size() != r.right_size()) {
    throw Error("initial coupling has the wrong shape");
  }
  if (!initial.supported_in(r)) throw Error("initial coupling is not supported in the relation");
  std::map<SequenceCoupling::PathPair, Rational> law;
  for (const auto& e : initial.entries()) law[{{e.left}, {e.right}}] += e.mass;
  CouplingCache cache;
  for (std::size_t t = 1; t < horizon; ++t) {
    std::map<SequenceCoupling::PathPair, Rational> next;
    for (const auto& [path, mass] : law) {
      const auto& c = step_coupling(r, p, q, path.left, path.right, cache);
      for (const auto& e : c.entries()) {
        auto ext = path;
        ext.left.push_back(e.left);
        ext.right.push_back(e.right);
        next[std::move(ext)] += mass * e.mass;
      }
    }
    law = std::move(next);
  }
  return SequenceCoupling(horizon, std::move(law));
}

}  // namespace

SequenceCoupling seq_coupling(const Relation& r, const CouplingMatrix& initial, const HistoryKernel& p,
                              const HistoryKernel& q, std::size_t horizon) {
  if (horizon > 4) throw Error("history-dependent coupling is limited to horizon <= 4");
  return chain(r, initial, p, q, horizon);
}

SequenceCoupling seq_coupling(const Relation& r, const CouplingMatrix& initial, const Kernel& p1, const Kernel& p2,
                              std::size_t horizon) {
  if (horizon == 0) throw Error("horizon must be at least 1");
  if (!initial.supported_in(r)) throw Error("initial coupling is not supported in the relation");
  const CouplingKernel ck = [&] {
    try {
      return build_coupling_kernel(r, r, p1, p2);
    } catch (const NotPreservedError& e) {
      throw SequenceHypothesisError({e.left}, {e.right});
    }
  }();
  std::map<SequenceCoupling::PathPair, Rational> law;
  for (const auto& e : initial.entries()) law[{{e.left}, {e.right}}] += e.mass;
  for (std::size_t t = 1; t < horizon; ++t) {
    std::map<SequenceCoupling::PathPair, Rational> next;
    for (const auto& [path, mass] : law) {
      for (const auto& e : ck.row(path.left.back(), path.right.back()).entries()) {
        auto ext = path;
        ext.left.push_back(e.left);
        ext.right.push_back(e.right);
        next[std::move(ext)] += mass * e.mass;
      }
    }
    law = std::move(next);
  }
  return SequenceCoupling(horizon, std::move(law));
}

std::map<History, Rational> chain_law(const Dist& mu, const Kernel& p, std::size_t horizon) {
  std::map<History, Rational> law;
  for (auto s : mu.support()) law[{s}] = mu[s];
  for (std::size_t t = 1; t < horizon; ++t) {
    std::map<History, Rational> next;
    for (const auto& [h, m] : law) {
      for (const auto& e : p.row(h.back())) {
        auto ext = h;
        ext.push_back(e.state);
        next[std::move(ext)] += m * e.prob;
      }
    }
    law = std::move(next);
  }
  return law;
}

}  // namespace stochrel
