#include "stochrel/subrelation.hpp"

#include "engine.hpp"

namespace stochrel {

SubrelationTrace subrelation(const Relation& r, const Kernel& p1, const Kernel& p2, const SubrelationOptions& opts) {
  if (!(p1.from() == r.left()) || !(p1.to() == r.left()) || !(p2.from() == r.right()) || !(p2.to() == r.right())) {
    throw Error("subrelation: kernels must act on the spaces of the relation");
  }
  const BigInt scale = detail::DiscreteRows<BigInt>::scale_for(p1, p2);
  if (scale < detail::int64_total_limit()) {
    detail::DiscreteRows<std::int64_t> rows(p1, p2, scale);
    return detail::subrelation_with<std::int64_t>(r, rows, opts);
  }
  detail::DiscreteRows<BigInt> rows(p1, p2, scale);
  return detail::subrelation_with<BigInt>(r, rows, opts);
}

}  // namespace stochrel
