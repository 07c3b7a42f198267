#include "stochrel/preservation.hpp"

#include "engine.hpp"

namespace stochrel {

namespace {

void check_shapes(const Relation& r, const Relation& r_target, const Kernel& p1, const Kernel& p2) {
  if (!(p1.from() == r.left()) || !(p2.from() == r.right())) throw Error("kernel sources do not match the relation");
  if (!(p1.to() == r_target.left()) || !(p2.to() == r_target.right())) {
    throw Error("kernel targets do not match the target relation");
  }
}

}  // namespace

PreservationReport preserves(const Relation& r, const Relation& r_target, const Kernel& p1, const Kernel& p2) {
  check_shapes(r, r_target, p1, p2);
  const BigInt scale = detail::DiscreteRows<BigInt>::scale_for(p1, p2);
  if (scale < detail::int64_total_limit()) {
    detail::DiscreteRows<std::int64_t> rows(p1, p2, scale);
    return detail::preserves_with<std::int64_t>(r, r_target, rows);
  }
  detail::DiscreteRows<BigInt> rows(p1, p2, scale);
  return detail::preserves_with<BigInt>(r, r_target, rows);
}

PreservationReport preserves(const Relation& r, const Kernel& p1, const Kernel& p2) {
  return preserves(r, r, p1, p2);
}

CouplingKernel::CouplingKernel(SpacePtr from_left, SpacePtr from_right, SpacePtr to_left, SpacePtr to_right,
                               std::vector<CouplingMatrix> rows)
    : from_left_(std::move(from_left)),
      from_right_(std::move(from_right)),
      to_left_(std::move(to_left)),
      to_right_(std::move(to_right)),
      rows_(std::move(rows)) {
  if (rows_.size() != from_left_->size() * from_right_->size()) throw Error("coupling kernel needs one row per pair");
}

std::pair<std::size_t, std::size_t> CouplingKernel::sample(std::size_t x1, std::size_t x2, std::mt19937_64& rng) const {
  const auto& entries = row(x1, x2).entries();
  std::vector<Rational> w;
  w.reserve(entries.size());
  for (const auto& e : entries) w.push_back(e.mass);
  const auto& pick = entries[sample_index(w, rng)];
  return {pick.left, pick.right};
}

NotPreservedError::NotPreservedError(std::size_t l, std::size_t r, StateSet violating)
    : Error("rows of related pair (" + std::to_string(l) + "," + std::to_string(r) + ") are not stochastically related"),
      left(l),
      right(r),
      violating_set(std::move(violating)) {}

CouplingKernel build_coupling_kernel(const Relation& r, const Relation& r_target, const Kernel& p1, const Kernel& p2) {
  check_shapes(r, r_target, p1, p2);
  const std::size_t n1 = r.left_size();
  const std::size_t n2 = r.right_size();
  std::vector<CouplingMatrix> rows;
  rows.reserve(n1 * n2);
  for (std::size_t x1 = 0; x1 < n1; ++x1) {
    const Dist mu = p1.row_dist(x1);
    for (std::size_t x2 = 0; x2 < n2; ++x2) {
      const Dist nu = p2.row_dist(x2);
      if (r.contains(x1, x2)) {
        auto d = st_related(r_target, mu, nu);
        if (!d.related) throw NotPreservedError(x1, x2, *d.violating_set);
        rows.push_back(std::move(*d.coupling));
      } else {
        rows.push_back(CouplingMatrix::product(mu, nu));
      }
    }
  }
  return CouplingKernel(r.left_ptr(), r.right_ptr(), r_target.left_ptr(), r_target.right_ptr(), std::move(rows));
}

std::vector<std::pair<std::size_t, std::size_t>> simulate_coupling(const CouplingKernel& kernel, std::size_t x1,
                                                                   std::size_t x2, std::size_t steps,
                                                                   std::mt19937_64& rng) {
  if (kernel.to_left().size() != kernel.from_left_size() || kernel.to_right().size() != kernel.from_right_size()) {
    throw Error("simulation needs a coupling kernel on one product space");
  }
  std::vector<std::pair<std::size_t, std::size_t>> path;
  path.reserve(steps + 1);
  path.emplace_back(x1, x2);
  for (std::size_t t = 0; t < steps; ++t) path.push_back(kernel.sample(path.back().first, path.back().second, rng));
  return path;
}

}  // namespace stochrel
