#include "corrdyn/cli.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "corrdyn/blochdec.hpp"
#include "corrdyn/config.hpp"
#include "corrdyn/corrchan.hpp"
#include "corrdyn/mastereq.hpp"
#include "corrdyn/prepmap.hpp"
#include "corrdyn/random.hpp"
#include "corrdyn/report.hpp"
#include "corrdyn/scenarios.hpp"

namespace corrdyn {

namespace {

struct CommonOptions {
  std::string out_path;
  std::string csv_path;
  std::uint64_t seed = 1;
  std::string tensor_order;
  std::optional<std::size_t> steps;
  std::optional<double> tmax;

  std::optional<TensorOrder> order() const {
    if (tensor_order.empty()) return std::nullopt;
    return parse_tensor_order(tensor_order);
  }
  void apply_grid(TimeGrid& g) const {
    if (steps) g.steps = *steps;
    if (tmax) g.t1 = *tmax;
  }
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("config.io", "cannot write '" + path + "'");
  f << text;
}

void emit(const json& report, const CommonOptions& opts, std::ostream& out) {
  const std::string text = report.dump(2) + "\n";
  if (opts.out_path.empty()) {
    out << text;
  } else {
    write_text(opts.out_path, text);
  }
}

void emit_csv(const std::vector<TrajectoryRow>& rows, std::size_t n, const CommonOptions& opts) {
  if (!opts.csv_path.empty()) write_text(opts.csv_path, trajectory_csv(rows, n));
}

const DensityOperator& require_state(const ScenarioConfig& c) {
  if (!c.initial_state) throw ConfigError("config.schema", "scenario needs an 'initialState'");
  return *c.initial_state;
}

ReducedModel model_for(const ScenarioConfig& c) {
  const DensityOperator rho_b = partial_trace(require_state(c), {c.n, c.m}, Keep::second);
  return {c.unitary_family(), rho_b, c.n, c.m};
}

json cmd_decompose(const std::string& path, const CommonOptions& opts) {
  const ScenarioConfig c = parse_scenario(load_json_file(path), opts.order());
  const DensityOperator& rho = require_state(c);
  const BlochDecomposition d = decompose(rho, c.n, c.m);
  const CorrelationResidual r = residual(d);
  const DensityOperator rho_a = partial_trace(rho, {c.n, c.m}, Keep::first);
  const bool consistent = check_pure_state_constraint(rho_a, r) == PureStateCheck::consistent;
  return {{"command", "decompose"},
          {"N", c.n},
          {"M", c.m},
          {"state", c.initial_label},
          {"alpha", to_json(d.alpha)},
          {"beta", to_json(d.beta)},
          {"gamma", to_json(d.gamma)},
          {"gammaPrime", to_json(r.gamma_prime)},
          {"rhoA", to_json(rho_a.matrix())},
          {"rhoB", to_json(partial_trace(rho.matrix(), {c.n, c.m}, Keep::second))},
          {"purityA", rho_a.purity()},
          {"pureStateConstraint", consistent ? "consistent" : "violation"},
          {"roundTripError", max_abs(compose_matrix(d) - rho.matrix())}};
}

json cmd_kraus(const std::string& path, const CommonOptions& opts) {
  ScenarioConfig c = parse_scenario(load_json_file(path), opts.order());
  opts.apply_grid(c.grid);
  const ReducedModel model = model_for(c);
  const double t = c.grid.t1;
  const KrausSet k = kraus_from_unitary(model.unitary(t), model.env_state, c.n, c.m);
  json report = kraus_json(k);
  report["command"] = "kraus";
  report["name"] = c.name;
  report["t"] = t;
  return report;
}

json cmd_evolve(const std::string& path, const CommonOptions& opts) {
  ScenarioConfig c = parse_scenario(load_json_file(path), opts.order());
  opts.apply_grid(c.grid);
  const ReducedModel model = model_for(c);
  const DensityOperator& rho = require_state(c);
  const std::vector<TrajectoryRow> rows = direct_trajectory(model, rho, c.grid);

  double max_entry = 0.0;
  json xi = json::array();
  for (const auto& row : rows) {
    const ReducedEvolution e = evolve_reduced(model.unitary(row.time), rho, c.n, c.m);
    max_entry = std::max(max_entry, max_abs(e.rho_a_prime.matrix() - row.rho_a));
    if (c.wants("xi")) xi.push_back({{"t", row.time}, {"xi", to_json(e.xi.xi)}});
  }

  json report = {{"command", "evolve"},
                 {"name", c.name},
                 {"tensorOrder", to_string(c.order)},
                 {"initialState", c.initial_label},
                 {"maxEntrywiseTwoTermVsDirect", max_entry}};
  if (c.wants("trajectory")) {
    json traj = json::array();
    for (const auto& row : rows) traj.push_back(trajectory_row_json(row));
    report["trajectory"] = std::move(traj);
  }
  if (c.wants("xi")) report["xi"] = std::move(xi);
  if (c.wants("kraus"))
    report["kraus"] =
        kraus_json(kraus_from_unitary(model.unitary(c.grid.t1), model.env_state, c.n, c.m));
  emit_csv(rows, c.n, opts);
  return report;
}

json cmd_master(const std::string& path, const CommonOptions& opts) {
  ScenarioConfig c = parse_scenario(load_json_file(path), opts.order());
  opts.apply_grid(c.grid);
  if (!c.hamiltonian)
    throw ConfigError("config.dynamics", "the master equation needs a time-dependent 'hamiltonian'");
  const ReducedModel model = model_for(c);
  const DensityOperator& rho = require_state(c);
  const DensityOperator rho_a = partial_trace(rho, {c.n, c.m}, Keep::first);
  const CorrelationResidual r = residual(decompose(rho, c.n, c.m));
  const MasterTrajectory traj = integrate_master(rho_a, model, r, c.grid, c.derivative_step);
  const std::vector<TrajectoryRow> direct = direct_trajectory(model, rho, c.grid);

  std::vector<TrajectoryRow> rows;
  double max_vs_exact = 0.0;
  const GeneratorBasis basis = GeneratorBasis::su(c.n);
  for (std::size_t k = 0; k < traj.points.size(); ++k) {
    const auto& p = traj.points[k];
    TrajectoryRow row = direct[k];
    row.rho_a = p.rho_a.matrix();
    row.alpha = bloch_vector(row.rho_a, basis);
    max_vs_exact = std::max(
        max_vs_exact,
        trace_distance(row.rho_a, exact_reduced_state(model, rho_a.matrix(), r, p.time)));
    rows.push_back(std::move(row));
  }

  json report = {{"command", "master"},
                 {"name", c.name},
                 {"tensorOrder", to_string(c.order)},
                 {"initialState", c.initial_label},
                 {"integratedPoints", traj.points.size()},
                 {"haltedAt", traj.halted_at ? json(*traj.halted_at) : json(nullptr)},
                 {"singularTimes", singular_times(model, c.grid)},
                 {"maxTraceDistanceVsExact", max_vs_exact}};
  if (c.wants("trajectory")) {
    json out = json::array();
    for (std::size_t k = 0; k < rows.size(); ++k) {
      json row = trajectory_row_json(rows[k]);
      row["F"] = to_json(traj.points[k].driving);
      out.push_back(std::move(row));
    }
    report["trajectory"] = std::move(out);
  }
  if (c.wants("xi")) {
    json xi = json::array();
    for (const auto& p : traj.points) xi.push_back({{"t", p.time}, {"xi", to_json(p.xi.xi)}});
    report["xi"] = std::move(xi);
  }
  if (c.wants("liouvillian")) {
    json samples = json::array();
    for (std::size_t k = 0; k <= c.grid.steps; ++k) {
      const LiouvillianSample s = sample_liouvillian(model, c.grid.at(k), c.derivative_step);
      samples.push_back({{"t", s.time},
                         {"condT", number_or_null(s.condition_number)},
                         {"singular", s.singular},
                         {"X", s.generator ? to_json(s.generator->matrix) : json(nullptr)}});
    }
    report["liouvillian"] = std::move(samples);
  }
  emit_csv(rows, c.n, opts);
  return report;
}

json cmd_prepare(const std::string& path, const CommonOptions& opts) {
  const PrepareConfig c = parse_prepare(load_json_file(path));
  const InducedEvolution e{*c.prep, *c.unitary};
  Rng rng(opts.seed);

  json inputs = json::array();
  for (const auto& in : c.inputs) {
    json entry = {{"input", to_json(in.matrix())}};
    try {
      const DensityOperator joint = c.prep->apply(in);
      entry["prepared"] = to_json(joint.matrix());
      entry["consistencyError"] = max_abs(
          partial_trace(joint.matrix(), {c.prep->system_dim(), c.prep->env_dim()}, Keep::first) -
          in.matrix());
      entry["output"] = to_json(e.apply(in).matrix());
    } catch (const OutsideDomain& err) {
      entry["outsideDomain"] = true;
      entry["minEigenvalue"] = err.min_eigenvalue();
    }
    inputs.push_back(std::move(entry));
  }

  const LinearityResult lin =
      linearity_test(e, c.linearity_samples, c.linearity_weights, c.linearity_tol, rng);
  json linearity = {{"linear", lin.linear},
                    {"mixturesTested", lin.mixtures_tested},
                    {"maxDeviation", lin.max_deviation},
                    {"tol", c.linearity_tol}};
  if (lin.witness) {
    json ws = json::array();
    for (const auto& in : lin.witness->inputs) ws.push_back(to_json(in.matrix()));
    linearity["witness"] = {{"inputs", std::move(ws)},
                            {"weights", lin.witness->weights},
                            {"outputOfMixture", to_json(lin.witness->output_of_mixture)},
                            {"mixtureOfOutputs", to_json(lin.witness->mixture_of_outputs)},
                            {"deviation", lin.witness->deviation}};
  }

  const ConstantEnvironmentResult env =
      constant_environment_test(*c.prep, c.environment_samples, c.environment_tol, rng);
  // Fewer than two accepted inputs leave nothing to compare.
  json environment = {{"constant", env.accepted_inputs < 2 ? json(nullptr) : json(env.constant)},
                      {"acceptedInputs", env.accepted_inputs}};
  if (env.env_state) environment["envState"] = to_json(*env.env_state);
  if (env.witness)
    environment["witness"] = {{"firstInput", to_json(env.witness->first_input.matrix())},
                              {"secondInput", to_json(env.witness->second_input.matrix())},
                              {"firstEnv", to_json(env.witness->first_env)},
                              {"secondEnv", to_json(env.witness->second_env)},
                              {"deviation", env.witness->deviation}};

  return {{"command", "prepare"},
          {"kind", to_string(c.prep->kind())},
          {"N", c.prep->system_dim()},
          {"M", c.prep->env_dim()},
          {"unitary", c.unitary_label},
          {"seed", opts.seed},
          {"inputs", std::move(inputs)},
          {"linearity", std::move(linearity)},
          {"environment", std::move(environment)}};
}

json cmd_scenario(const std::string& which, const std::string& config_path,
                  const CommonOptions& opts) {
  const json cfg = config_path.empty() ? json::object() : load_json_file(config_path);
  if (which == "cnot") {
    CnotConfig c = parse_cnot_config(cfg);
    if (auto o = opts.order()) c.order = *o;
    opts.apply_grid(c.grid);
    const CnotReport r = run_cnot_example(c);
    for (const auto& p : r.paths)
      if (p.state == c.csv_state) emit_csv(p.rows, 2, opts);
    return cnot_report_json(r);
  }
  if (which == "swap") return swap_report_json(run_swap_example(parse_swap_config(cfg)));
  throw ConfigError("cli.usage", "unknown scenario '" + which + "' (expected cnot or swap)");
}

void report_error(std::ostream& err, const std::string& code, const std::string& message) {
  err << json{{"code", code}, {"message", message}}.dump() << '\n';
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reduced dynamics of open quantum systems with initial system-environment correlations",
               "corrdyn"};
  app.require_subcommand(1);
  app.fallthrough();

  CommonOptions opts;
  std::size_t steps = 0;
  double tmax = 0.0;
  app.add_option("--out", opts.out_path, "Write the JSON report to this file instead of stdout");
  app.add_option("--csv", opts.csv_path, "Write the trajectory as CSV");
  app.add_option("--seed", opts.seed, "Seed for randomized tests");
  app.add_option("--tensor-order", opts.tensor_order,
                 "Tensor order of matrices in the config (system-first|environment-first)")
      ->check(CLI::IsMember({"system-first", "environment-first"}));
  auto* steps_opt = app.add_option("--steps", steps, "Number of time steps")->check(CLI::NonNegativeNumber);
  auto* tmax_opt = app.add_option("--tmax", tmax, "Final time of the grid");

  std::string file;
  auto* decompose = app.add_subcommand("decompose", "Bloch decomposition of a joint state");
  decompose->add_option("state", file, "State JSON file")->required();
  auto* kraus = app.add_subcommand("kraus", "Kraus operators at the final grid time");
  kraus->add_option("scenario", file, "Scenario JSON file")->required();
  auto* evolve = app.add_subcommand("evolve", "Direct vs. Kraus-plus-correlation evolution");
  evolve->add_option("scenario", file, "Scenario JSON file")->required();
  auto* master = app.add_subcommand("master", "Integrate the inhomogeneous master equation");
  master->add_option("scenario", file, "Scenario JSON file")->required();
  auto* prepare = app.add_subcommand("prepare", "Preparation maps and induced evolutions");
  prepare->add_option("prep", file, "Preparation JSON file")->required();
  std::string which;
  std::string config_path;
  auto* scenario = app.add_subcommand("scenario", "Built-in scenarios");
  scenario->add_option("name", which, "cnot or swap")->required()->check(CLI::IsMember({"cnot", "swap"}));
  scenario->add_option("--config", config_path, "Scenario configuration JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    report_error(err, "cli.usage", e.what());
    return 1;
  }
  if (steps_opt->count() > 0) opts.steps = steps;
  if (tmax_opt->count() > 0) opts.tmax = tmax;

  try {
    json report;
    if (decompose->parsed()) report = cmd_decompose(file, opts);
    else if (kraus->parsed()) report = cmd_kraus(file, opts);
    else if (evolve->parsed()) report = cmd_evolve(file, opts);
    else if (master->parsed()) report = cmd_master(file, opts);
    else if (prepare->parsed()) report = cmd_prepare(file, opts);
    else report = cmd_scenario(which, config_path, opts);
    emit(report, opts, out);
    return 0;
  } catch (const InputError& e) {
    report_error(err, e.code(), e.what());
    return 1;
  } catch (const NumericalError& e) {
    report_error(err, e.code(), e.what());
    return 2;
  } catch (const json::parse_error& e) {
    report_error(err, "config.parse", e.what());
    return 1;
  } catch (const json::exception& e) {
    report_error(err, "config.schema", e.what());
    return 1;
  } catch (const std::exception& e) {
    report_error(err, "internal", e.what());
    return 2;
  }
}

}  // namespace corrdyn
