// Acceptance run: one PASS/FAIL line per criterion, details indented below.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <tuple>

#include "generators.hpp"
#include "oracles.hpp"
#include "stochrel/builders.hpp"
#include "stochrel/queueing.hpp"
#include "stochrel/stationary.hpp"

namespace {

using namespace stochrel;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
};

std::string show(const Point& p) { return point_label(p); }

void queueing_reproduction(Outcome& o) {
  for (const auto& [l1, l2] : {std::pair{rational(2, 5), rational(3, 10)}, std::pair{rational(1, 2), rational(1, 2)}}) {
    const auto rep = reproduce_queueing(l1, l2, 30, 8, 20);
    std::size_t checked = 0, mismatches = 0;
    for (const auto& it : rep.iterates) {
      checked += it.safe_pairs_checked;
      mismatches += it.safe_mismatches;
      if (!it.match()) o.pass = false;
    }
    o.detail << "lambda=(" << to_string(l1) << "," << to_string(l2) << ") N=30: iterates n=0..8 vs closed form on safe region: "
             << checked << " pairs, " << mismatches << " mismatches\n";
    const auto& wm = rep.iterate_vs_wm;
    o.detail << "  n=8 iterate vs weak majorization on max-coordinate <= 20: " << wm.pairs_checked << " pairs, "
             << wm.mismatches << " mismatches (" << wm.limit << " is inside the safe region "
             << rep.iterates.back().safe_limit << ")";
    if (!wm.diffs.empty()) {
      const auto& d = wm.diffs.front();
      o.detail << " (first: x=" << show(d.x) << " y=" << show(d.y) << " in iterate=" << d.computed
               << ", closed form n=8: " << queueing_closed_form(8, d.x, d.y) << ")";
    }
    o.detail << "\n";
    if (!wm.match()) o.pass = false;
  }
}

void negative_preservation(Outcome& o) {
  const auto models = queueing_models(rational(2, 5), rational(3, 10), 10);
  const auto s = models.independent.space();
  const auto q_lb = to_rate_kernel(models.load_balanced, s);
  const auto q_ind = to_rate_kernel(models.independent, s);
  for (const auto& [name, r] : {std::pair<std::string, Relation>{"coordinatewise", coordinatewise_leq_relation(s, s, {1, 2})},
                                std::pair<std::string, Relation>{"sum", sum_leq_relation(s, s)}}) {
    const auto rep = ct_preserves(r, q_lb, q_ind);
    o.detail << name << " order: preserved=" << rep.preserved << ", " << rep.failures.size() << " violating pairs";
    if (!rep.failures.empty()) {
      const auto& f = rep.failures.front();
      o.detail << " (first: " << s->label(f.left) << " ~ " << s->label(f.right) << ")";
    }
    o.detail << "\n";
    if (rep.preserved || rep.failures.empty()) o.pass = false;
  }
}

void stationary_comparison(Outcome& o) {
  const auto models = queueing_models(rational(2, 5), rational(3, 10), 12);
  const auto s = models.independent.space();
  const auto q_lb = to_rate_kernel(models.load_balanced, s);
  const auto q_ind = to_rate_kernel(models.independent, s);
  const auto wm = weak_majorization_relation(s, s);
  const auto c = compare_stationary(wm, q_lb, q_ind);
  std::vector<Rational> total;
  for (std::size_t i = 0; i < s->size(); ++i) total.push_back(s->point(i)[0] + s->point(i)[1]);
  const Rational e_lb = c.pi1->expectation(total), e_ind = c.pi2->expectation(total);
  o.detail << "pi_LB ~st pi under weak majorization (exact flow): " << c.decision->related << "\n";
  if (c.decision->violating_set) {
    const auto& b = *c.decision->violating_set;
    const auto image = conjugate_set(wm, b, Side::right);
    const Rational excess = c.pi1->measure(b) - c.pi2->measure(image);
    o.detail << "  violating set: " << b.size() << " states, pi_LB(B) - pi(B->) = " << excess.get_d() << "\n";
  }
  o.detail << "  maximal preserved subrelation: " << (c.conclusive ? "nonempty" : "empty") << " after " << c.iterations
           << " steps\n";
  o.detail << "  E[X1+X2]: load balanced " << e_lb.get_d() << ", independent " << e_ind.get_d() << "\n";
  o.pass = c.decision->related && e_lb < e_ind;
}

void strassen_oracle(Outcome& o) {
  std::mt19937_64 rng(1001);
  std::size_t disagreements = 0, related = 0, witnesses_ok = 0;
  const int instances = 10000;
  for (int t = 0; t < instances; ++t) {
    const auto n1 = static_cast<std::size_t>(testing::uniform_int(rng, 1, 5));
    const auto n2 = static_cast<std::size_t>(testing::uniform_int(rng, 1, 5));
    auto s1 = testing::labelled_space(n1, "a");
    auto s2 = testing::labelled_space(n2, "b");
    auto r = testing::random_relation(rng, s1, s2, testing::coin(rng, 0.5) ? 0.7 : 0.4);
    auto mu = testing::random_dist(rng, s1);
    auto nu = testing::random_dist(rng, s2);
    const auto d = st_related(r, mu, nu);
    const bool oracle = subset_oracle(r, mu, nu);
    if (d.related != oracle || oracle != testing::related_by_enumeration(r, mu.mass(), nu.mass())) ++disagreements;
    if (d.related) {
      ++related;
      if (d.coupling && d.coupling->couples(mu, nu) && d.coupling->supported_in(r)) ++witnesses_ok;
    } else if (d.violating_set &&
               !(mu.measure(*d.violating_set) > nu.measure(conjugate_set(r, *d.violating_set, Side::right)))) {
      ++disagreements;
    }
  }
  o.detail << instances << " instances (" << related << " related), " << disagreements << " disagreements, "
           << witnesses_ok << "/" << related << " witness couplings valid\n";
  o.pass = disagreements == 0 && witnesses_ok == related;
}

void ct_equivalence(Outcome& o) {
  std::mt19937_64 rng(1002);
  std::size_t disagreements = 0, preserved = 0;
  const int instances = 1000;
  for (int t = 0; t < instances; ++t) {
    const auto n1 = static_cast<std::size_t>(testing::uniform_int(rng, 1, 5));
    const auto n2 = static_cast<std::size_t>(testing::uniform_int(rng, 1, 5));
    auto s1 = testing::labelled_space(n1, "a");
    auto s2 = testing::labelled_space(n2, "b");
    auto r = testing::random_relation(rng, s1, s2, 0.6);
    auto q1 = testing::random_rate_kernel(rng, s1, 0.4);
    auto q2 = testing::random_rate_kernel(rng, s2, 0.4);
    const bool flow = ct_preserves(r, q1, q2).preserved;
    if (flow != ct_subset_test(r, q1, q2)) ++disagreements;
    preserved += flow;
  }
  o.detail << instances << " rate-kernel pairs (" << preserved << " preserved), " << disagreements << " disagreements\n";
  o.pass = disagreements == 0;
}

void population_equivalence(Outcome& o) {
  std::mt19937_64 rng(1003);
  std::size_t disagreements = 0, preserved = 0, fallbacks = 0;
  const int instances = 500;
  const std::vector<RelationKind> kinds{RelationKind::coordinatewise_leq, RelationKind::sum_leq,
                                        RelationKind::weak_majorization, RelationKind::equality};
  for (int t = 0; t < instances; ++t) {
    auto m1 = testing::random_population_model(rng, 3);
    auto m2 = testing::random_population_model(rng, 3);
    if (t % 5 == 3) std::tie(m1, m2) = testing::random_ordered_pair(rng, 3);
    auto s = m1.space();
    Relation r(s, s);
    if (t % 5 == 3) {
      r = coordinatewise_leq_relation(s, s, {1, 2});
    } else if (t % 5 == 4) {
      r = testing::random_relation(rng, s, s, 0.5);
    } else {
      RelationParams params;
      params.coords = testing::coin(rng, 0.5) ? std::vector<std::size_t>{1, 2}
                                              : std::vector<std::size_t>{static_cast<std::size_t>(testing::uniform_int(rng, 1, 2))};
      r = build_relation(kinds[static_cast<std::size_t>(t) % kinds.size()], s, s, params);
    }
    const auto rep = population_check(r, m1, m2);
    const bool flow = ct_preserves(r, to_rate_kernel(m1, s), to_rate_kernel(m2, s)).preserved;
    if (rep.preserved != flow) ++disagreements;
    preserved += flow;
    fallbacks += rep.used_fallback;
  }
  o.detail << instances << " random m=2 models on [0,3]^2 (" << preserved << " preserved), " << disagreements
           << " disagreements, " << fallbacks << " fallbacks\n";
  o.pass = disagreements == 0 && fallbacks == 0;
}

void coupling_correctness(Outcome& o) {
  std::mt19937_64 rng(1004);
  std::size_t witnesses = 0, bad_witnesses = 0, rows = 0, bad_rows = 0;
  for (int t = 0; t < 2000; ++t) {
    auto s1 = testing::labelled_space(static_cast<std::size_t>(testing::uniform_int(rng, 1, 6)), "a");
    auto s2 = testing::labelled_space(static_cast<std::size_t>(testing::uniform_int(rng, 1, 6)), "b");
    auto r = testing::random_relation(rng, s1, s2, 0.7);
    auto mu = testing::random_dist(rng, s1);
    auto nu = testing::random_dist(rng, s2);
    const auto d = st_related(r, mu, nu);
    if (!d.related) continue;
    ++witnesses;
    if (!d.coupling->couples(mu, nu) || !d.coupling->supported_in(r)) ++bad_witnesses;
  }

  // Preserving pairs: maximal preserved subrelations of random kernels, plus ordered random walks.
  struct Case {
    Relation r;
    Kernel p1, p2;
  };
  std::vector<Case> cases;
  while (cases.size() < 50) {
    auto s = testing::labelled_space(5);
    auto p1 = testing::random_kernel(rng, s, s);
    auto p2 = testing::random_kernel(rng, s, s);
    auto star = subrelation(testing::random_relation(rng, s, s, 0.8), p1, p2).fixed_point();
    if (star.count() > 0) cases.push_back({star, p1, p2});
  }
  {
    auto s = make_space(StateSpace::range(0, 9));
    std::vector<std::vector<Rational>> a(10, std::vector<Rational>(10, Rational(0))), b = a;
    for (std::size_t i = 0; i < 10; ++i) {
      a[i][i == 0 ? 0 : i - 1] += rational(2, 3);
      a[i][i == 9 ? 9 : i + 1] += rational(1, 3);
      b[i][i == 0 ? 0 : i - 1] += rational(1, 2);
      b[i][i == 9 ? 9 : i + 1] += rational(1, 2);
    }
    auto leq = coordinatewise_leq_relation(s, s, {1});
    auto p1 = Kernel::from_dense(s, s, a);
    auto p2 = Kernel::from_dense(s, s, b);
    while (cases.size() < 100) cases.push_back({leq, p1, p2});
  }

  std::size_t escapes = 0, steps_total = 0;
  for (std::size_t seed = 0; seed < 100; ++seed) {
    const auto& c = cases[seed];
    const auto ck = build_coupling_kernel(c.r, c.r, c.p1, c.p2);
    for (auto [x1, x2] : c.r.pairs()) {
      ++rows;
      const auto& row = ck.row(x1, x2);
      if (!row.couples(c.p1.row_dist(x1), c.p2.row_dist(x2)) || !row.supported_in(c.r)) ++bad_rows;
    }
    std::mt19937_64 sim(seed);
    const auto start = c.r.pairs()[seed % c.r.count()];
    const auto path = simulate_coupling(ck, start.first, start.second, 10000, sim);
    steps_total += path.size() - 1;
    for (const auto& [y1, y2] : path) {
      if (!c.r.contains(y1, y2)) {
        ++escapes;
        break;
      }
    }
  }
  o.detail << witnesses << " witness couplings (" << bad_witnesses << " invalid), " << rows << " coupling-kernel rows ("
           << bad_rows << " invalid), 100 seeds x 10^4 steps (" << steps_total << " steps, " << escapes
           << " paths left R)\n";
  o.pass = bad_witnesses == 0 && bad_rows == 0 && escapes == 0 && steps_total == 100u * 10000u;
}

void conjugate_identities(Outcome& o) {
  std::mt19937_64 rng(1005);
  std::size_t set_checks = 0, fn_checks = 0, failures = 0;
  for (int t = 0; t < 200; ++t) {
    auto s1 = testing::labelled_space(static_cast<std::size_t>(testing::uniform_int(rng, 1, 5)), "a");
    auto s2 = testing::labelled_space(static_cast<std::size_t>(testing::uniform_int(rng, 1, 5)), "b");
    auto r = testing::random_relation(rng, s1, s2, testing::coin(rng, 0.5) ? 0.3 : 0.6);
    for (Side side : {Side::right, Side::left}) {
      const auto& from = side == Side::right ? s1 : s2;
      const auto n = from->size();
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        const auto b = testing::mask_to_set(mask, n);
        const auto image = conjugate_set(r, b, side);
        ++set_checks;
        if (image != testing::brute_conjugate(r, b, side == Side::right)) ++failures;
        const auto lhs = conjugate_fn(r, RealFn::indicator(from, b), side);
        if (lhs != RealFn::indicator(side == Side::right ? s2 : s1, image)) ++failures;
      }
      for (int k = 0; k < 10; ++k) {
        std::vector<Rational> values;
        for (std::size_t i = 0; i < n; ++i) values.push_back(rational(testing::uniform_int(rng, 0, 8), 2));
        const RealFn f(from, values);
        const auto fr = conjugate_fn(r, f, side);
        for (std::int64_t th = 0; th <= 9; ++th) {
          const Rational level = rational(th, 2);
          ++fn_checks;
          if (conjugate_set(r, f.strict_level_set(level), side) != fr.strict_level_set(level)) ++failures;
        }
      }
    }
  }
  o.detail << "200 relations: " << set_checks << " subset identities, " << fn_checks << " threshold identities, "
           << failures << " failures\n";
  o.pass = failures == 0;
}

void alpha_properties_check(Outcome& o) {
  const auto rep = alpha_properties(-5, 15, 5);
  o.detail << rep.points_checked << " (point, n) combinations on [-5,15]^2, n=0..5; checks per item:";
  for (auto c : rep.checks_per_item) o.detail << " " << c;
  o.detail << "; " << rep.violations.size() << " violations\n";
  o.pass = rep.passes();
}

void subrelation_maximality(Outcome& o) {
  std::mt19937_64 rng(1006);
  std::size_t enumerated = 0, preserved_subs = 0, not_contained = 0, star_fail = 0;
  for (int t = 0; t < 200; ++t) {
    auto s = testing::labelled_space(3);
    auto p1 = testing::random_kernel(rng, s, s);
    auto p2 = testing::random_kernel(rng, s, s);
    auto r = testing::random_relation(rng, s, s, 0.75);
    const auto star = subrelation(r, p1, p2).fixed_point();
    if (!preserves(star, p1, p2).preserved) ++star_fail;
    const auto pairs = r.pairs();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
      Relation sub(s, s);
      for (std::size_t k = 0; k < pairs.size(); ++k) {
        if (mask >> k & 1u) sub.set(pairs[k].first, pairs[k].second);
      }
      ++enumerated;
      if (!preserves(sub, p1, p2).preserved) continue;
      ++preserved_subs;
      if (!is_subset(sub, star)) ++not_contained;
    }
  }
  o.detail << "200 kernel pairs on 3 states: " << enumerated << " subrelations enumerated, " << preserved_subs
           << " preserved, " << not_contained << " not contained in R*, " << star_fail << " R* failing preservation\n";
  o.pass = not_contained == 0 && star_fail == 0;
}

void epsilon_distance(Outcome& o) {
  std::mt19937_64 rng(1007);
  auto s = make_space(StateSpace::range(0, 9));
  std::size_t disagreements = 0, related = 0, checks = 0;
  for (int t = 0; t < 200; ++t) {
    auto mu = testing::random_dist(rng, s);
    auto nu = testing::random_dist(rng, s);
    if (t % 3 == 0) {
      // Shift nu by one so that related instances occur regularly.
      std::vector<Rational> shifted(10, Rational(0));
      for (std::size_t i = 0; i < 10; ++i) shifted[std::min<std::size_t>(i + 1, 9)] += mu[i];
      nu = Dist(s, shifted);
    }
    for (std::int64_t eps = 0; eps <= 2; ++eps) {
      ++checks;
      const bool decision = st_related(epsilon_distance_relation(s, s, eps), mu, nu).related;
      related += decision;
      if (decision != testing::epsilon_cdf_criterion(mu.mass(), nu.mass(), eps)) ++disagreements;
    }
  }
  o.detail << "200 pairs on {0..9} x eps in {0,1,2}: " << checks << " decisions (" << related << " related), "
           << disagreements << " disagreements with the CDF criterion\n";
  o.pass = disagreements == 0;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"queueing reproduction", queueing_reproduction},
      {"negative preservation", negative_preservation},
      {"stationary comparison", stationary_comparison},
      {"Strassen oracle equivalence", strassen_oracle},
      {"continuous-time test equivalence", ct_equivalence},
      {"population criterion equivalence", population_equivalence},
      {"coupling correctness", coupling_correctness},
      {"conjugate identities", conjugate_identities},
      {"alpha properties", alpha_properties_check},
      {"subrelation maximality", subrelation_maximality},
      {"epsilon-distance characterization", epsilon_distance},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what() << "\n";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << " (" << secs << " s)\n";
    std::istringstream lines(o.detail.str());
    for (std::string line; std::getline(lines, line);) std::cout << "    " << line << "\n";
    std::cout.flush();
    failed += !o.pass;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
