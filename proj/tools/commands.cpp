#include "commands.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "stochrel/builders.hpp"
#include "stochrel/io.hpp"

namespace stochrel::cli {

namespace {

using io::json;

struct Common {
  std::string output;
  std::string mode = "exact";
  std::optional<double> tolerance;
  bool oracle = false;
  bool verbose = false;
};

struct Outcome {
  json report;
  int code;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("-o,--output", c.output, "Write the JSON report to this file");
  cmd->add_option("--mode", c.mode, "Arithmetic mode")->check(CLI::IsMember({"exact", "float"}));
  cmd->add_option("--tolerance", c.tolerance, "Feasibility tolerance (float mode only)");
  cmd->add_flag("--oracle", c.oracle, "Use subset enumeration instead of max-flow (small inputs)");
  cmd->add_flag("-v,--verbose", c.verbose, "Print a timing summary to stderr");
}

void require_exact(const Common& c, const std::string& command) {
  if (c.mode != "exact") throw Error("float mode is not supported by '" + command + "'");
}

Dist on_space(const Dist& d, const SpacePtr& space, const char* what) {
  if (!(d.space() == *space)) throw Error(std::string(what) + " space does not match the relation");
  return Dist(space, d.mass());
}

Kernel on_spaces(const Kernel& k, const SpacePtr& from, const SpacePtr& to, const char* what) {
  if (!(k.from() == *from) || !(k.to() == *to)) throw Error(std::string(what) + " spaces do not match the relation");
  std::vector<KernelRow> rows;
  for (std::size_t x = 0; x < k.size(); ++x) rows.push_back(k.row(x));
  return Kernel(from, to, std::move(rows));
}

RateKernel on_space(const RateKernel& q, const SpacePtr& space, const char* what) {
  if (!(q.space() == *space)) throw Error(std::string(what) + " space does not match the relation");
  std::vector<KernelRow> rows;
  for (std::size_t x = 0; x < q.size(); ++x) rows.push_back(q.jump().row(x));
  return RateKernel(q.q(), Kernel(space, space, std::move(rows)));
}

RelationParams params_with_coords(const std::vector<std::size_t>& coords, const std::string& epsilon) {
  RelationParams p;
  p.coords = coords;
  if (!epsilon.empty()) p.epsilon = parse_rational(epsilon);
  return p;
}

int exit_for(bool positive) { return positive ? ExitCode::positive : ExitCode::negative; }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stochastic relations, relation-preserving couplings and subrelation iteration"};
  app.require_subcommand(1);
  Common common;

  std::string relation_file, mu_file, nu_file, p1_file, p2_file, q1_file, q2_file, target_file, input_file;
  std::string model1_file, model2_file, side = "right", strategy = "worklist", kind, epsilon;
  std::string lambda1 = "2/5", lambda2 = "3/10";
  std::int64_t cap = 30, lo = -5, hi = 15, n_max = 5, wm_limit = 20;
  std::size_t iters = 8;
  std::optional<std::size_t> max_steps;
  std::vector<std::size_t> coords;
  bool partial_order = false;

  auto* relate = app.add_subcommand("relate", "Decide mu ~st nu under a relation");
  relate->add_option("--relation", relation_file)->required();
  relate->add_option("--mu", mu_file)->required();
  relate->add_option("--nu", nu_file)->required();

  auto* conjugate = app.add_subcommand("conjugate", "Relational conjugate of a set or function");
  conjugate->add_option("--relation", relation_file)->required();
  conjugate->add_option("--input", input_file, "JSON with \"set\" or \"values\"")->required();
  conjugate->add_option("--side", side)->check(CLI::IsMember({"left", "right"}));

  auto* preserve = app.add_subcommand("preserve", "Check that kernels stochastically preserve a relation");
  preserve->add_option("--relation", relation_file)->required();
  preserve->add_option("--p1", p1_file)->required();
  preserve->add_option("--p2", p2_file)->required();
  preserve->add_option("--target", target_file, "Relation between the target spaces (defaults to --relation)");

  auto* ct_preserve = app.add_subcommand("ct-preserve", "Check that rate kernels stochastically preserve a relation");
  ct_preserve->add_option("--relation", relation_file)->required();
  ct_preserve->add_option("--q1", q1_file)->required();
  ct_preserve->add_option("--q2", q2_file)->required();

  auto* subrel = app.add_subcommand("subrelation", "Maximal preserved subrelation for probability kernels");
  subrel->add_option("--relation", relation_file)->required();
  subrel->add_option("--p1", p1_file)->required();
  subrel->add_option("--p2", p2_file)->required();

  auto* ct_subrel = app.add_subcommand("ct-subrelation", "Maximal preserved subrelation for rate kernels");
  ct_subrel->add_option("--relation", relation_file)->required();
  ct_subrel->add_option("--q1", q1_file)->required();
  ct_subrel->add_option("--q2", q2_file)->required();
  for (auto* cmd : {subrel, ct_subrel}) {
    cmd->add_option("--strategy", strategy)->check(CLI::IsMember({"worklist", "all_pairs"}));
    cmd->add_option("--max-steps", max_steps);
  }

  auto* population = app.add_subcommand("population-check", "Preservation test for population processes");
  population->add_option("--model1", model1_file)->required();
  population->add_option("--model2", model2_file)->required();
  population->add_option("--relation", relation_file, "Relation between the model boxes");
  population->add_flag("--partial-order", partial_order, "Use the per-colony criterion for x <=_M y");

  auto* stationary_cmd = app.add_subcommand("stationary-compare", "Compare stationary laws of two chains");
  stationary_cmd->add_option("--relation", relation_file);
  stationary_cmd->add_option("--q1", q1_file);
  stationary_cmd->add_option("--q2", q2_file);
  stationary_cmd->add_option("--model1", model1_file);
  stationary_cmd->add_option("--model2", model2_file);
  stationary_cmd->add_option("--lambda1", lambda1);
  stationary_cmd->add_option("--lambda2", lambda2);
  stationary_cmd->add_option("--cap", cap);

  for (auto* cmd : {population, stationary_cmd}) {
    cmd->add_option("--kind", kind, "Relation kind built on the model spaces when --relation is absent");
    cmd->add_option("--coords", coords, "1-based coordinates (coordinatewise_leq, partial order)");
    cmd->add_option("--epsilon", epsilon);
  }

  auto* queueing = app.add_subcommand("reproduce-queueing", "Subrelation iterates for the parallel-queue models");
  queueing->add_option("--lambda1", lambda1);
  queueing->add_option("--lambda2", lambda2);
  queueing->add_option("--cap", cap);
  queueing->add_option("--iters", iters);
  queueing->add_option("--wm-limit", wm_limit, "Max coordinate for the weak-majorization comparison");

  auto* alpha = app.add_subcommand("alpha-props", "Check the pointwise properties of alpha_n");
  alpha->add_option("--lo", lo);
  alpha->add_option("--hi", hi);
  alpha->add_option("--n-max", n_max);

  for (auto* cmd : app.get_subcommands({})) add_common(cmd, common);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ExitCode::positive : ExitCode::error;
  }

  try {
    if (common.tolerance && common.mode != "float") throw Error("--tolerance is only valid with --mode float");
    const double tolerance = common.tolerance.value_or(1e-9);
    const auto started = std::chrono::steady_clock::now();
    Outcome result;

    if (relate->parsed()) {
      const Relation r = io::read_relation(io::load_file(relation_file));
      if (common.mode == "float") {
        auto [s1, mu] = io::read_dist_floating(io::load_file(mu_file));
        auto [s2, nu] = io::read_dist_floating(io::load_file(nu_file));
        if (!(*s1 == r.left()) || !(*s2 == r.right())) throw Error("distribution space does not match the relation");
        const auto d = st_related_approx(r, mu, nu, tolerance);
        result = {io::report(d, r, tolerance), exit_for(d.related)};
      } else {
        const Dist mu = on_space(io::read_dist(io::load_file(mu_file)), r.left_ptr(), "mu");
        const Dist nu = on_space(io::read_dist(io::load_file(nu_file)), r.right_ptr(), "nu");
        if (common.oracle) {
          const auto v = subset_oracle_violation(r, mu, nu);
          json rep{{"related", !v}, {"method", "subset_oracle"}};
          if (v) {
            json labels = json::array();
            for (auto i : *v) labels.push_back(r.left().label(i));
            rep["violating_set"] = labels;
          }
          result = {rep, exit_for(!v)};
        } else {
          const auto d = st_related(r, mu, nu);
          json rep = io::report(d, r);
          rep["method"] = "max_flow";
          result = {rep, exit_for(d.related)};
        }
      }
    } else if (conjugate->parsed()) {
      require_exact(common, "conjugate");
      const Relation r = io::read_relation(io::load_file(relation_file));
      const json in = io::load_file(input_file);
      const Side s = side == "right" ? Side::right : Side::left;
      const auto& from = s == Side::right ? r.left() : r.right();
      const auto& to = s == Side::right ? r.right() : r.left();
      json rep{{"side", side}};
      if (in.contains("set")) {
        const auto image = conjugate_set(r, io::read_set(in.at("set"), from), s);
        json labels = json::array();
        for (auto i : image) labels.push_back(to.label(i));
        rep["set"] = labels;
      } else {
        std::vector<Rational> values;
        for (const auto& v : in.at("values")) values.push_back(io::read_rational(v));
        const auto f = RealFn(s == Side::right ? r.left_ptr() : r.right_ptr(), values);
        json vals = json::array();
        for (const auto& v : conjugate_fn(r, f, s).values()) vals.push_back(to_string(v));
        rep["values"] = vals;
      }
      result = {rep, ExitCode::positive};
    } else if (preserve->parsed()) {
      require_exact(common, "preserve");
      const Relation r = io::read_relation(io::load_file(relation_file));
      const Relation target = target_file.empty() ? r : io::read_relation(io::load_file(target_file));
      const Kernel p1 = on_spaces(io::read_kernel(io::load_file(p1_file)), r.left_ptr(), target.left_ptr(), "p1");
      const Kernel p2 = on_spaces(io::read_kernel(io::load_file(p2_file)), r.right_ptr(), target.right_ptr(), "p2");
      PreservationReport rep;
      if (common.oracle) {
        for (const auto& [x1, x2] : r.pairs()) {
          ++rep.pairs_checked;
          if (auto v = subset_oracle_violation(target, p1.row_dist(x1), p2.row_dist(x2))) {
            rep.failures.push_back({x1, x2, *v});
          }
        }
        rep.preserved = rep.failures.empty();
      } else {
        rep = preserves(r, target, p1, p2);
      }
      json j = io::report(rep, target);
      // Failure pairs are labelled in the source spaces.
      for (std::size_t k = 0; k < rep.failures.size(); ++k) {
        j["failures"][k]["left"] = r.left().label(rep.failures[k].left);
        j["failures"][k]["right"] = r.right().label(rep.failures[k].right);
      }
      result = {j, exit_for(rep.preserved)};
    } else if (ct_preserve->parsed()) {
      require_exact(common, "ct-preserve");
      const Relation r = io::read_relation(io::load_file(relation_file));
      const RateKernel q1 = on_space(io::read_rate_kernel(io::load_file(q1_file)), r.left_ptr(), "q1");
      const RateKernel q2 = on_space(io::read_rate_kernel(io::load_file(q2_file)), r.right_ptr(), "q2");
      if (common.oracle) {
        const auto v = ct_subset_violation(r, q1, q2);
        result = {io::report(v, r), exit_for(!v)};
      } else {
        const auto rep = ct_preserves(r, q1, q2);
        result = {io::report(rep, r), exit_for(rep.preserved)};
      }
    } else if (subrel->parsed() || ct_subrel->parsed()) {
      require_exact(common, subrel->parsed() ? "subrelation" : "ct-subrelation");
      const Relation r = io::read_relation(io::load_file(relation_file));
      SubrelationOptions opts;
      opts.strategy = strategy == "all_pairs" ? RecheckStrategy::all_pairs : RecheckStrategy::worklist;
      opts.max_steps = max_steps;
      SubrelationTrace trace;
      if (subrel->parsed()) {
        const Kernel p1 = on_spaces(io::read_kernel(io::load_file(p1_file)), r.left_ptr(), r.left_ptr(), "p1");
        const Kernel p2 = on_spaces(io::read_kernel(io::load_file(p2_file)), r.right_ptr(), r.right_ptr(), "p2");
        trace = subrelation(r, p1, p2, opts);
      } else {
        const RateKernel q1 = on_space(io::read_rate_kernel(io::load_file(q1_file)), r.left_ptr(), "q1");
        const RateKernel q2 = on_space(io::read_rate_kernel(io::load_file(q2_file)), r.right_ptr(), "q2");
        trace = ct_subrelation(r, q1, q2, opts);
      }
      result = {io::report(trace), exit_for(!trace.fixed_point().empty())};
    } else if (population->parsed()) {
      require_exact(common, "population-check");
      const PopulationModel m1 = io::read_model(io::load_file(model1_file));
      const PopulationModel m2 = io::read_model(io::load_file(model2_file));
      if (partial_order) {
        const auto rep = partial_order_check(coords, m1, m2);
        result = {io::report(rep, *m1.space(), *m2.space()), exit_for(rep.preserved)};
      } else {
        Relation r = relation_file.empty()
                         ? build_relation(parse_relation_kind(kind.empty() ? "coordinatewise_leq" : kind), m1.space(),
                                          m2.space(), params_with_coords(coords, epsilon))
                         : io::read_relation(io::load_file(relation_file));
        if (common.oracle) {
          const auto rep = ct_preserves(r, to_rate_kernel(m1, r.left_ptr()), to_rate_kernel(m2, r.right_ptr()));
          json j = io::report(rep, r);
          j["method"] = "ct_preserves";
          result = {j, exit_for(rep.preserved)};
        } else {
          const auto rep = population_check(r, m1, m2);
          result = {io::report(rep, r), exit_for(rep.preserved)};
        }
      }
    } else if (stationary_cmd->parsed()) {
      std::optional<RateKernel> q1, q2;
      SpacePtr s1, s2;
      if (!q1_file.empty() || !q2_file.empty()) {
        q1 = io::read_rate_kernel(io::load_file(q1_file));
        q2 = io::read_rate_kernel(io::load_file(q2_file));
      } else if (!model1_file.empty() || !model2_file.empty()) {
        q1 = to_rate_kernel(io::read_model(io::load_file(model1_file)));
        q2 = to_rate_kernel(io::read_model(io::load_file(model2_file)));
      } else {
        const auto models = queueing_models(parse_rational(lambda1), parse_rational(lambda2), cap);
        const auto space = models.independent.space();
        q1 = to_rate_kernel(models.load_balanced, space);
        q2 = to_rate_kernel(models.independent, space);
      }
      Relation r = relation_file.empty()
                       ? build_relation(parse_relation_kind(kind.empty() ? "weak_majorization" : kind),
                                        q1->space_ptr(), q2->space_ptr(), params_with_coords(coords, epsilon))
                       : io::read_relation(io::load_file(relation_file));
      const RateKernel k1 = on_space(*q1, r.left_ptr(), "q1");
      const RateKernel k2 = on_space(*q2, r.right_ptr(), "q2");
      const auto cmp = compare_stationary(r, k1, k2, common.mode == "float");
      result = {io::report(cmp, r), exit_for(cmp.related())};
    } else if (queueing->parsed()) {
      require_exact(common, "reproduce-queueing");
      const auto rep = reproduce_queueing(parse_rational(lambda1), parse_rational(lambda2), cap, iters, wm_limit);
      result = {io::report(rep), exit_for(rep.all_match())};
    } else if (alpha->parsed()) {
      require_exact(common, "alpha-props");
      const auto rep = alpha_properties(lo, hi, n_max);
      result = {io::report(rep), exit_for(rep.passes())};
    }

    if (common.verbose) {
      const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
      err << app.get_subcommands().front()->get_name() << ": exit " << result.code << " after " << elapsed << " s\n";
    }
    const std::string text = io::dump(result.report);
    if (common.output.empty()) {
      out << text;
    } else {
      std::ofstream f(common.output);
      if (!f) throw Error("cannot write '" + common.output + "'");
      f << text;
    }
    return result.code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return ExitCode::error;
  }
}

}  // namespace stochrel::cli
