#include "corrdyn/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "corrdyn/blochdec.hpp"

namespace corrdyn {

namespace {

[[noreturn]] void schema_error(const std::string& what) { throw ConfigError("config.schema", what); }

std::size_t parse_count(const json& j, const char* key, std::size_t fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    schema_error(std::string("'") + key + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

}  // namespace

Complex parse_complex(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  schema_error("complex numbers must be [re, im] pairs or plain numbers, got " + j.dump());
}

ComplexMatrix parse_matrix(const json& j) {
  if (!j.is_array() || j.empty()) schema_error("matrix must be a non-empty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty()) schema_error("matrix rows must be non-empty arrays");
  const std::size_t cols = j[0].size();
  ComplexMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) schema_error("matrix rows have unequal lengths");
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = parse_complex(j[r][c]);
  }
  return m;
}

RealVector parse_real_vector(const json& j) {
  if (!j.is_array()) schema_error("expected an array of numbers");
  RealVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  return v;
}

RealMatrix parse_real_matrix(const json& j) {
  if (!j.is_array() || j.empty()) schema_error("expected a non-empty array of rows");
  const std::size_t cols = j[0].size();
  RealMatrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols) schema_error("matrix rows have unequal lengths");
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = j[r][c].get<double>();
  }
  return m;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config.io", "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw ConfigError("config.parse", "'" + path + "': " + e.what());
  }
}

DensityOperator parse_single_state(const json& j, std::size_t dim) {
  if (j.is_string()) {
    const auto name = j.get<std::string>();
    const auto d = static_cast<Eigen::Index>(dim);
    if (name == "maximally-mixed") return DensityOperator::maximally_mixed(dim);
    if (name == "zero") return DensityOperator::basis(dim, 0);
    if (name == "one") return DensityOperator::basis(dim, 1);
    if (name == "plus" || name == "minus") {
      if (dim != 2) schema_error("'" + name + "' is a qubit state");
      ComplexVector v(d);
      v << 1.0, (name == "plus" ? 1.0 : -1.0);
      return DensityOperator::pure(v);
    }
    schema_error("unknown state preset '" + name + "'");
  }
  ComplexMatrix m = parse_matrix(j);
  if (static_cast<std::size_t>(m.rows()) != dim)
    throw DimensionMismatch("state has dimension " + std::to_string(m.rows()) + ", expected " +
                            std::to_string(dim));
  return DensityOperator(m);
}

DensityOperator parse_joint_state(const json& j, std::size_t n, std::size_t m, TensorOrder order,
                                  std::string* label) {
  if (j.is_object()) {
    const auto preset = j.at("preset").get<std::string>();
    if (n != 2 || m != 2) throw ConfigError("config.dims", "joint-state presets need N = M = 2");
    if (label) *label = preset;
    if (preset == "bell") return bell_state();
    const Complex a = j.contains("a") ? parse_complex(j.at("a")) : CnotConfig{}.a;
    const Complex b = j.contains("b") ? parse_complex(j.at("b")) : CnotConfig{}.b;
    if (preset == "classical-pair") return classical_pair_state(a, b);
    if (preset == "entangled-pair") return entangled_pair_state(a, b);
    schema_error("unknown joint-state preset '" + preset + "'");
  }
  if (j.is_string()) {
    if (label) *label = j.get<std::string>();
    return parse_joint_state(json{{"preset", j.get<std::string>()}}, n, m, order);
  }
  if (label) *label = "matrix";
  const ComplexMatrix raw = parse_matrix(j);
  if (static_cast<std::size_t>(raw.rows()) != n * m || raw.rows() != raw.cols())
    throw DimensionMismatch("initial state must be " + std::to_string(n * m) + "x" +
                            std::to_string(n * m));
  return DensityOperator(to_system_first(raw, {n, m}, order));
}

bool ScenarioConfig::wants(const std::string& section) const {
  return std::find(outputs.begin(), outputs.end(), section) != outputs.end();
}

UnitaryFamily ScenarioConfig::unitary_family() const {
  if (hamiltonian) return hamiltonian_family(*hamiltonian);
  if (unitary) {
    const UnitaryOperator u(*unitary);
    return [u](double) { return u; };
  }
  throw ConfigError("config.dynamics", "scenario needs a 'hamiltonian' or a 'unitary'");
}

ScenarioConfig parse_scenario(const json& j, std::optional<TensorOrder> order_override) {
  if (!j.is_object()) schema_error("scenario must be a JSON object");
  ScenarioConfig c;
  c.name = j.value("name", c.name);
  c.n = parse_count(j, "N", c.n);
  c.m = parse_count(j, "M", c.m);
  if (c.n < 2 || c.m < 2) throw ConfigError("config.dims", "N and M must be at least 2");
  c.order = order_override.value_or(
      j.contains("tensorOrder") ? parse_tensor_order(j.at("tensorOrder").get<std::string>())
                                : TensorOrder::system_first);

  if (j.contains("hamiltonian") && j.contains("unitary"))
    throw ConfigError("config.dynamics", "give exactly one of 'hamiltonian' and 'unitary'");
  const Dims dims{c.n, c.m};
  auto read_operator = [&](const char* key) {
    const ComplexMatrix raw = parse_matrix(j.at(key));
    if (static_cast<std::size_t>(raw.rows()) != dims.total() || raw.rows() != raw.cols())
      throw DimensionMismatch(std::string("'") + key + "' must be " +
                              std::to_string(dims.total()) + "x" + std::to_string(dims.total()));
    return to_system_first(raw, dims, c.order);
  };
  if (j.contains("hamiltonian")) {
    c.hamiltonian = read_operator("hamiltonian");
    const double herm = hermiticity_error(*c.hamiltonian);
    if (herm > kHermiticityTol) throw NotHermitian(herm);
  }
  if (j.contains("unitary")) c.unitary = read_operator("unitary");

  if (j.contains("initialState"))
    c.initial_state = parse_joint_state(j.at("initialState"), c.n, c.m, c.order, &c.initial_label);

  if (j.contains("timeGrid")) {
    const auto& g = j.at("timeGrid");
    c.grid.t0 = g.value("t0", 0.0);
    c.grid.t1 = g.value("t1", c.grid.t1);
    c.grid.steps = parse_count(g, "steps", c.grid.steps);
  }
  c.derivative_step = j.value("derivativeStep", c.derivative_step);
  if (j.contains("outputs")) {
    c.outputs = j.at("outputs").get<std::vector<std::string>>();
    for (const auto& o : c.outputs)
      if (std::find(kScenarioOutputs.begin(), kScenarioOutputs.end(), o) == kScenarioOutputs.end())
        schema_error("unknown output section '" + o + "'");
  }
  return c;
}

CnotConfig parse_cnot_config(const json& j) {
  if (!j.is_object()) schema_error("cnot config must be a JSON object");
  CnotConfig c;
  if (j.contains("a")) c.a = parse_complex(j.at("a"));
  if (j.contains("b")) c.b = parse_complex(j.at("b"));
  check_amplitudes(c.a, c.b);
  if (j.contains("tensorOrder")) c.order = parse_tensor_order(j.at("tensorOrder").get<std::string>());
  if (j.contains("timeGrid")) {
    const auto& g = j.at("timeGrid");
    c.grid.t0 = g.value("t0", 0.0);
    c.grid.t1 = g.value("t1", c.grid.t1);
    c.grid.steps = parse_count(g, "steps", c.grid.steps);
  }
  c.derivative_step = j.value("derivativeStep", c.derivative_step);
  c.csv_state = j.value("csvState", c.csv_state);
  if (c.csv_state != "classical-pair" && c.csv_state != "entangled-pair")
    schema_error("'csvState' must be 'classical-pair' or 'entangled-pair'");
  return c;
}

SwapConfig parse_swap_config(const json& j) {
  if (!j.is_object()) schema_error("swap config must be a JSON object");
  SwapConfig c;
  const std::size_t n = parse_count(j, "N", 2);
  if (j.contains("target")) c.target = parse_single_state(j.at("target"), n);
  if (j.contains("probes"))
    for (const auto& p : j.at("probes")) c.probes.push_back(parse_single_state(p, n));
  return c;
}

UnitaryOperator named_gate(const std::string& name, std::size_t n, std::size_t m) {
  if (name == "identity") return UnitaryOperator::identity(n * m);
  if (name == "swap") {
    if (n != m) throw ConfigError("config.dims", "swap needs N = M");
    return swap_unitary(n);
  }
  if (name == "cnot") {
    if (n != 2 || m != 2) throw ConfigError("config.dims", "cnot needs N = M = 2");
    const ComplexMatrix p0 = 0.5 * (pauli::identity() + pauli::z());
    const ComplexMatrix p1 = 0.5 * (pauli::identity() - pauli::z());
    return UnitaryOperator(kron(p0, pauli::identity()) + kron(p1, pauli::x()));
  }
  schema_error("unknown gate '" + name + "'");
}

PrepareConfig parse_prepare(const json& j) {
  if (!j.is_object()) schema_error("preparation config must be a JSON object");
  PrepareConfig c;
  const std::size_t n = parse_count(j, "N", 2);
  const std::string kind = j.at("kind").get<std::string>();
  std::size_t m = n;
  if (kind == "product") {
    const auto& env = j.at("envState");
    m = parse_count(j, "M", env.is_array() ? env.size() : n);
    c.prep = PreparationMap::product(n, parse_single_state(env, m));
  } else if (kind == "clone") {
    c.prep = PreparationMap::clone(n);
  } else if (kind == "transpose-clone") {
    c.prep = PreparationMap::transpose_clone(n);
  } else if (kind == "fixed-correlation") {
    m = parse_count(j, "M", n);
    const RealVector beta =
        j.contains("beta") ? parse_real_vector(j.at("beta"))
                           : RealVector::Zero(static_cast<Eigen::Index>(m * m - 1));
    c.prep = PreparationMap::fixed_correlation(
        n, m, beta, CorrelationResidual{parse_real_matrix(j.at("gammaPrime"))});
  } else {
    schema_error("unknown preparation kind '" + kind + "'");
  }

  if (j.contains("unitary")) {
    c.unitary = UnitaryOperator(parse_matrix(j.at("unitary")));
    c.unitary_label = "matrix";
  } else if (j.contains("hamiltonian")) {
    const double t = j.value("time", 1.0);
    c.unitary = matrix_exp_unitary(parse_matrix(j.at("hamiltonian")), t);
    c.unitary_label = "exp(-iHt), t = " + std::to_string(t);
  } else {
    c.unitary_label = j.value("gate", std::string("identity"));
    c.unitary = named_gate(c.unitary_label, n, m);
  }
  if (c.unitary->dim() != n * m)
    throw DimensionMismatch("unitary must act on the " + std::to_string(n * m) +
                            "-dimensional joint space");

  if (j.contains("inputs"))
    for (const auto& in : j.at("inputs")) c.inputs.push_back(parse_single_state(in, n));
  if (j.contains("linearity")) {
    const auto& l = j.at("linearity");
    c.linearity_samples = parse_count(l, "samples", c.linearity_samples);
    c.linearity_weights = parse_count(l, "mixWeights", c.linearity_weights);
    c.linearity_tol = l.value("tol", c.linearity_tol);
  }
  if (j.contains("environment")) {
    const auto& e = j.at("environment");
    c.environment_samples = parse_count(e, "samples", c.environment_samples);
    c.environment_tol = e.value("tol", c.environment_tol);
  }
  return c;
}

}  // namespace corrdyn
