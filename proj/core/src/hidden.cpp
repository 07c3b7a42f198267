#include "stochrel/hidden.hpp"

#include "stochrel/conjugate.hpp"

namespace stochrel {

HiddenMarkovReport hidden_markov_check(const Relation& r, const std::vector<std::size_t>& f1,
                                       const std::vector<std::size_t>& f2, const Kernel& p1, const Kernel& p2) {
  Relation rp = induced(r, p1.from_ptr(), f1, p2.from_ptr(), f2);
  auto rep = preserves(rp, p1, p2);
  return HiddenMarkovReport{std::move(rp), std::move(rep)};
}

bool induced_kernel_subset_test(const Relation& r, const std::vector<std::size_t>& f1,
                                const std::vector<std::size_t>& f2, const Kernel& p1, const Kernel& p2) {
  const std::size_t n = r.left_size();
  if (n > 20) throw Error("space too large for subset enumeration (n > 20)");
  if (f1.size() != p1.size() || f2.size() != p2.size()) throw Error("observation maps must be total");
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    StateSet b;
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1u) b.push_back(i);
    }
    const StateSet img = conjugate_set(r, b, Side::right);
    std::vector<char> in_b(n, 0), in_img(r.right_size(), 0);
    for (auto i : b) in_b[i] = 1;
    for (auto j : img) in_img[j] = 1;
    for (std::size_t x1 = 0; x1 < p1.size(); ++x1) {
      Rational lhs = 0;
      for (const auto& e : p1.row(x1)) {
        if (in_b[f1[e.state]]) lhs += e.prob;
      }
      for (std::size_t x2 = 0; x2 < p2.size(); ++x2) {
        if (!r.contains(f1[x1], f2[x2])) continue;
        Rational rhs = 0;
        for (const auto& e : p2.row(x2)) {
          if (in_img[f2[e.state]]) rhs += e.prob;
        }
        if (lhs > rhs) return false;
      }
    }
  }
  return true;
}

Dist image_dist(const Dist& mu, const std::vector<std::size_t>& f, SpacePtr target) {
  if (f.size() != mu.size()) throw Error("map must be total on the distribution's space");
  std::vector<Rational> m(target->size(), Rational(0));
  for (std::size_t i = 0; i < f.size(); ++i) m.at(f[i]) += mu[i];
  return Dist(std::move(target), std::move(m));
}

}  // namespace stochrel
