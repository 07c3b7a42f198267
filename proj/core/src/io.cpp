#include "stochrel/io.hpp"

#include <fstream>
#include <sstream>

#include "stochrel/builders.hpp"

namespace stochrel::io {

Rational read_rational(const json& j, NumberMode mode) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Rational(BigInt(std::to_string(j.get<std::uint64_t>())));
    return Rational(BigInt(std::to_string(j.get<std::int64_t>())));
  }
  if (j.is_number_float()) {
    if (mode == NumberMode::exact) throw Error("float literal " + j.dump() + " not allowed in exact mode");
    return Rational(j.get<double>());
  }
  throw Error("expected a rational, got " + j.dump());
}

double read_double(const json& j) {
  if (j.is_number()) return j.get<double>();
  return read_rational(j).get_d();
}

json write_rational(const Rational& v) { return to_string(v); }

namespace {

Point read_point(const json& j) {
  if (j.is_number_integer()) return {j.get<std::int64_t>()};
  Point p;
  for (const auto& c : j) {
    if (!c.is_number_integer()) throw Error("point coordinates must be integers");
    p.push_back(c.get<std::int64_t>());
  }
  return p;
}

Box read_box(const json& j) {
  Box b;
  for (const auto& range : j) {
    if (!range.is_array() || range.size() != 2) throw Error("box entries must be [lo, hi]");
    b.lo.push_back(range[0].get<std::int64_t>());
    b.hi.push_back(range[1].get<std::int64_t>());
  }
  return b;
}

json write_box(const Box& b) {
  json out = json::array();
  for (std::size_t k = 0; k < b.dims(); ++k) out.push_back({b.lo[k], b.hi[k]});
  return out;
}

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw Error(std::string("missing field '") + name + "'");
  return j.at(name);
}

std::vector<Rational> read_rationals(const json& j, NumberMode mode = NumberMode::exact) {
  if (!j.is_array()) throw Error("expected an array of rationals");
  std::vector<Rational> out;
  for (const auto& v : j) out.push_back(read_rational(v, mode));
  return out;
}

json write_rationals(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

json write_set(const StateSet& set, const StateSpace& s) {
  json out = json::array();
  for (auto i : set) out.push_back(s.label(i));
  return out;
}

json write_pairs(const std::vector<std::pair<std::size_t, std::size_t>>& pairs, const Relation& r) {
  json out = json::array();
  for (const auto& [i, j] : pairs) out.push_back({r.left().label(i), r.right().label(j)});
  return out;
}

json write_point(const Point& p) { return point_label(p); }

}  // namespace

SpacePtr read_space(const json& j) {
  if (j.is_object()) return make_space(StateSpace::grid(read_box(field(j, "box"))));
  if (!j.is_array()) throw Error("space must be an array or {\"box\": ...}");
  if (j.empty()) throw Error("empty state space");
  if (j[0].is_string()) {
    std::vector<std::string> labels;
    for (const auto& v : j) labels.push_back(v.get<std::string>());
    return make_space(StateSpace(std::move(labels)));
  }
  std::vector<Point> points;
  for (const auto& v : j) points.push_back(read_point(v));
  return make_space(StateSpace(std::move(points)));
}

json write_space(const StateSpace& s) {
  if (s.box()) return {{"box", write_box(*s.box())}};
  return s.labels();
}

std::size_t read_state(const json& j, const StateSpace& s) {
  if (j.is_object()) {
    auto i = field(j, "index").get<std::size_t>();
    if (i >= s.size()) throw Error("state index out of range");
    return i;
  }
  if (j.is_string()) return s.index_of(j.get<std::string>());
  auto found = s.has_points() ? s.find(read_point(j)) : std::nullopt;
  if (!found) throw Error("unknown state " + j.dump());
  return *found;
}

StateSet read_set(const json& j, const StateSpace& s) {
  StateSet out;
  for (const auto& v : j) out.push_back(read_state(v, s));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Relation read_relation(const json& j) {
  auto left = read_space(field(j, "left"));
  auto right = read_space(field(j, "right"));
  RelationParams params;
  if (j.contains("pairs")) {
    for (const auto& p : j.at("pairs")) {
      if (!p.is_array() || p.size() != 2) throw Error("pairs must be [i, j]");
      params.pairs.emplace_back(p[0].is_number_integer() ? p[0].get<std::size_t>() : read_state(p[0], *left),
                                p[1].is_number_integer() ? p[1].get<std::size_t>() : read_state(p[1], *right));
    }
    if (!j.contains("kind")) return relation_from_pairs(left, right, params.pairs);
  }
  const auto kind = parse_relation_kind(field(j, "kind").get<std::string>());
  if (j.contains("params")) {
    const auto& p = j.at("params");
    if (p.contains("epsilon")) params.epsilon = read_rational(p.at("epsilon"));
    if (p.contains("coords")) params.coords = p.at("coords").get<std::vector<std::size_t>>();
    if (p.contains("table")) params.table = p.at("table").get<std::vector<std::vector<int>>>();
    if (p.contains("pairs")) params.pairs = p.at("pairs").get<std::vector<std::pair<std::size_t, std::size_t>>>();
  }
  return build_relation(kind, left, right, params);
}

json write_relation(const Relation& r) {
  json pairs = json::array();
  for (const auto& [i, j] : r.pairs()) pairs.push_back({i, j});
  return {{"left", write_space(r.left())}, {"right", write_space(r.right())}, {"pairs", pairs}};
}

Dist read_dist(const json& j) { return Dist(read_space(field(j, "space")), read_rationals(field(j, "mass"))); }

std::pair<SpacePtr, std::vector<double>> read_dist_floating(const json& j) {
  auto space = read_space(field(j, "space"));
  std::vector<double> mass;
  for (const auto& v : field(j, "mass")) mass.push_back(read_double(v));
  if (mass.size() != space->size()) throw Error("mass length does not match the space");
  return {space, mass};
}

json write_dist(const Dist& d) { return {{"space", write_space(d.space())}, {"mass", write_rationals(d.mass())}}; }

RealFn read_fn(const json& j) { return RealFn(read_space(field(j, "space")), read_rationals(field(j, "values"))); }

Kernel read_kernel(const json& j) {
  auto from = read_space(field(j, "from"));
  auto to = j.contains("to") ? read_space(j.at("to")) : from;
  std::vector<std::vector<Rational>> rows;
  for (const auto& row : field(j, "rows")) rows.push_back(read_rationals(row));
  return Kernel::from_dense(from, to, rows);
}

json write_kernel(const Kernel& k) {
  json rows = json::array();
  for (const auto& row : k.dense()) rows.push_back(write_rationals(row));
  return {{"from", write_space(k.from())}, {"to", write_space(k.to())}, {"rows", rows}};
}

RateKernel read_rate_kernel(const json& j) {
  auto space = read_space(field(j, "space"));
  if (j.contains("rates")) {
    std::vector<std::vector<Rational>> rates;
    for (const auto& row : j.at("rates")) rates.push_back(read_rationals(row));
    return RateKernel::from_rates(space, rates);
  }
  auto q = read_rationals(field(j, "q"));
  std::vector<std::vector<Rational>> rows;
  for (const auto& row : field(j, "jump_rows")) rows.push_back(read_rationals(row));
  return RateKernel(std::move(q), Kernel::from_dense(space, space, rows));
}

json write_rate_kernel(const RateKernel& q) {
  json rows = json::array();
  for (const auto& row : q.jump().dense()) rows.push_back(write_rationals(row));
  return {{"space", write_space(q.space())}, {"q", write_rationals(q.q())}, {"jump_rows", rows}};
}

PopulationModel read_model(const json& j) {
  PopulationModel m;
  m.m = field(j, "m").get<std::size_t>();
  m.box = read_box(field(j, "box"));
  for (const auto& [key, value] : field(j, "rates").items()) {
    const auto comma = key.find(',');
    if (comma == std::string::npos) throw Error("rate key '" + key + "' must be \"i,j\"");
    MoveIndex idx{std::stoul(key.substr(0, comma)), std::stoul(key.substr(comma + 1))};
    if (value.is_number_float()) throw Error("float literal in rate for '" + key + "'");
    m.rates[idx] = value.is_string() ? parse_rate(value.get<std::string>()) : RateExpr::constant(read_rational(value));
  }
  m.validate();
  return m;
}

json write_model(const PopulationModel& m) {
  json rates = json::object();
  for (const auto& [idx, e] : m.rates) rates[std::to_string(idx.first) + "," + std::to_string(idx.second)] = e.to_string();
  return {{"m", m.m}, {"box", write_box(m.box)}, {"rates", rates}};
}

json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error("malformed JSON in '" + path + "': " + e.what());
  }
}

json report(const StDecision& d, const Relation& r) {
  json out{{"related", d.related}};
  if (d.coupling) {
    json c = json::array();
    for (const auto& e : d.coupling->entries()) {
      c.push_back({{"left", r.left().label(e.left)}, {"right", r.right().label(e.right)}, {"mass", to_string(e.mass)}});
    }
    out["coupling"] = c;
  }
  if (d.violating_set) {
    out["violating_set"] = write_set(*d.violating_set, r.left());
    out["violating_image"] = write_set(conjugate_set(r, *d.violating_set, Side::right), r.right());
  }
  return out;
}

json report(const ApproxDecision& d, const Relation& r, double tolerance) {
  json out{{"related", d.related}, {"approximate", true}, {"tolerance", tolerance}, {"flow_value", d.flow_value}};
  if (d.related) {
    json c = json::array();
    for (const auto& [i, j, m] : d.coupling) {
      c.push_back({{"left", r.left().label(i)}, {"right", r.right().label(j)}, {"mass", m}});
    }
    out["coupling"] = c;
  } else {
    out["violating_set"] = write_set(d.violating_set, r.left());
  }
  return out;
}

json report(const PreservationReport& p, const Relation& r) {
  json failures = json::array();
  for (const auto& f : p.failures) {
    failures.push_back({{"left", r.left().label(f.left)},
                        {"right", r.right().label(f.right)},
                        {"violating_set", write_set(f.violating_set, r.left())}});
  }
  return {{"preserved", p.preserved}, {"pairs_checked", p.pairs_checked}, {"failures", failures}};
}

json report(const SubrelationTrace& t) {
  json steps = json::array();
  for (std::size_t n = 0; n < t.steps.size(); ++n) {
    json step{{"n", n}, {"pairs", t.steps[n].count()}};
    if (n < t.removed.size()) {
      json removed = json::array();
      for (const auto& f : t.removed[n]) {
        removed.push_back({{"left", t.steps[n].left().label(f.left)},
                           {"right", t.steps[n].right().label(f.right)},
                           {"violating_set", write_set(f.violating_set, t.steps[n].left())}});
      }
      step["removed"] = removed;
    }
    steps.push_back(step);
  }
  const auto& fp = t.fixed_point();
  return {{"converged", t.converged},
          {"iterations", t.steps.size() - 1},
          {"steps", steps},
          {"fixed_point", write_pairs(fp.pairs(), fp)}};
}

json report(const std::optional<CtSubsetViolation>& v, const Relation& r) {
  if (!v) return {{"preserved", true}};
  const auto& s = v->right_inequality ? r.left() : r.right();
  return {{"preserved", false},
          {"left", r.left().label(v->left)},
          {"right", r.right().label(v->right)},
          {"inequality", v->right_inequality ? "right" : "left"},
          {"set", write_set(v->set, s)}};
}

json report(const StationaryComparison& c, const Relation& r) {
  json out{{"conclusive", c.conclusive},
           {"certified", c.certified()},
           {"iterations", c.iterations},
           {"approximate", c.approximate},
           {"related", c.related()}};
  if (c.conclusive) {
    out["r_star_pairs"] = c.r_star->count();
  } else {
    out["message"] = "method inconclusive: maximal preserved subrelation is empty";
  }
  if (c.pi1) {
    out["pi1"] = write_rationals(c.pi1->mass());
    out["pi2"] = write_rationals(c.pi2->mass());
    out["decision"] = report(*c.decision, r);
    if (c.decision_r_star) out["related_under_r_star"] = c.decision_r_star->related;
  } else {
    out["pi1"] = c.approx_pi1->pi;
    out["pi2"] = c.approx_pi2->pi;
    out["decision"] = report(*c.approx_decision, r, 1e-9);
  }
  return out;
}

json report(const PopulationReport& p, const Relation& r) {
  json failures = json::array();
  for (const auto& f : p.failures) {
    json moves = json::array();
    for (const auto& [i, j] : f.moves) moves.push_back({i, j});
    failures.push_back({{"left", r.left().label(f.left)},
                        {"right", r.right().label(f.right)},
                        {"inequality", f.right_inequality ? "U" : "V"},
                        {"moves", moves}});
  }
  return {{"preserved", p.preserved},
          {"pairs_checked", p.pairs_checked},
          {"used_fallback", p.used_fallback},
          {"failures", failures}};
}

json report(const PartialOrderReport& p, const StateSpace& left, const StateSpace& right) {
  json failures = json::array();
  for (const auto& f : p.failures) {
    failures.push_back({{"left", left.label(f.left)},
                        {"right", right.label(f.right)},
                        {"colony", f.colony},
                        {"inequality", f.upper ? "upper" : "lower"},
                        {"indices", f.indices}});
  }
  return {{"preserved", p.preserved}, {"pairs_checked", p.pairs_checked}, {"failures", failures}};
}

namespace {

json write_diffs(const std::vector<PairDiff>& diffs) {
  json out = json::array();
  for (const auto& d : diffs) out.push_back({{"x", write_point(d.x)}, {"y", write_point(d.y)}, {"computed", d.computed}});
  return out;
}

json write_wm(const WmComparison& w) {
  return {{"n", w.n},
          {"limit", w.limit},
          {"pairs_checked", w.pairs_checked},
          {"mismatches", w.mismatches},
          {"status", w.match() ? "MATCH" : "MISMATCH"},
          {"diffs", write_diffs(w.diffs)}};
}

}  // namespace

json report(const QueueingReport& q) {
  json rows = json::array();
  for (const auto& m : q.iterates) {
    rows.push_back({{"n", m.n},
                    {"safe_limit", m.safe_limit},
                    {"iterate_pairs", m.iterate_pairs},
                    {"safe_pairs_checked", m.safe_pairs_checked},
                    {"safe_mismatches", m.safe_mismatches},
                    {"outside_mismatches", m.outside_mismatches},
                    {"status", m.match() ? "MATCH" : "MISMATCH"},
                    {"diffs", write_diffs(m.diffs)}});
  }
  return {{"lambda1", to_string(q.lambda1)},
          {"lambda2", to_string(q.lambda2)},
          {"cap", q.cap},
          {"n_max", q.n_max},
          {"iterates", rows},
          {"all_match", q.all_match()},
          {"converged", q.converged},
          {"fixed_point_step", q.fixed_point_step},
          {"fixed_point_vs_weak_majorization", write_wm(q.fixed_point_vs_wm)},
          {"iterate_vs_weak_majorization", write_wm(q.iterate_vs_wm)}};
}

json report(const AlphaReport& a) {
  json violations = json::array();
  for (const auto& v : a.violations) {
    violations.push_back({{"item", v.item}, {"n", v.n}, {"x", write_point(v.x)}, {"k", v.k}});
  }
  return {{"grid", {a.lo, a.hi}},
          {"n_max", a.n_max},
          {"points_checked", a.points_checked},
          {"checks_per_item", a.checks_per_item},
          {"violations", violations},
          {"passes", a.passes()}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace stochrel::io
