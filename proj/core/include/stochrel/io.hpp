#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "stochrel/hidden.hpp"
#include "stochrel/queueing.hpp"
#include "stochrel/stationary.hpp"

namespace stochrel::io {

using json = nlohmann::json;

enum class NumberMode { exact, floating };

/// Rationals are strings "p/q" or JSON integers. JSON floats are rejected
/// in exact mode and converted exactly from the double in floating mode.
Rational read_rational(const json& j, NumberMode mode = NumberMode::exact);
double read_double(const json& j);
json write_rational(const Rational& v);

/// Space: array of labels, array of integer points (or plain integers), or {"box": [[lo,hi],...]}.
SpacePtr read_space(const json& j);
json write_space(const StateSpace& s);

/// A state given by label string, integer point, or {"index": i}.
std::size_t read_state(const json& j, const StateSpace& s);
StateSet read_set(const json& j, const StateSpace& s);

/// {"left": S, "right": S, "kind": name, "params": {...}} or {"left", "right", "pairs": [[i,j],...]}.
Relation read_relation(const json& j);
json write_relation(const Relation& r);

/// {"space": S, "mass": [...]}
Dist read_dist(const json& j);
std::pair<SpacePtr, std::vector<double>> read_dist_floating(const json& j);
json write_dist(const Dist& d);

/// {"space": S, "values": [...]}
RealFn read_fn(const json& j);

/// {"from": S, "to": S, "rows": [[...], ...]}; "to" defaults to "from".
Kernel read_kernel(const json& j);
json write_kernel(const Kernel& k);

/// {"space": S, "q": [...], "jump_rows": [[...]]} or {"space": S, "rates": [[...]]}.
RateKernel read_rate_kernel(const json& j);
json write_rate_kernel(const RateKernel& q);

/// {"m": 2, "box": [[lo,hi],...], "rates": {"i,j": "expr", ...}}
PopulationModel read_model(const json& j);
json write_model(const PopulationModel& m);

json load_file(const std::string& path);

json report(const StDecision& d, const Relation& r);
json report(const ApproxDecision& d, const Relation& r, double tolerance);
json report(const PreservationReport& p, const Relation& r);
json report(const SubrelationTrace& t);
json report(const std::optional<CtSubsetViolation>& v, const Relation& r);
json report(const StationaryComparison& c, const Relation& r);
json report(const PopulationReport& p, const Relation& r);
json report(const PartialOrderReport& p, const StateSpace& left, const StateSpace& right);
json report(const QueueingReport& q);
json report(const AlphaReport& a);

/// Pretty-printed JSON with a trailing newline.
std::string dump(const json& j);

}  // namespace stochrel::io
