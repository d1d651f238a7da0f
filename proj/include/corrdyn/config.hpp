#pragma once

// JSON configuration files. Complex numbers are [re, im] pairs (a bare number
// is read as real); matrices are row-major nested arrays.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "corrdyn/densemat.hpp"
#include "corrdyn/mastereq.hpp"
#include "corrdyn/prepmap.hpp"
#include "corrdyn/scenarios.hpp"

namespace corrdyn {

using json = nlohmann::json;

Complex parse_complex(const json& j);
ComplexMatrix parse_matrix(const json& j);
RealVector parse_real_vector(const json& j);
RealMatrix parse_real_matrix(const json& j);

/// Reads and parses a JSON file; throws ConfigError("config.io" / "config.parse").
json load_json_file(const std::string& path);

/// Named single-system states: "zero", "one", "plus", "minus",
/// "maximally-mixed", or a matrix.
DensityOperator parse_single_state(const json& j, std::size_t dim);

/// Output sections a scenario may request.
inline const std::vector<std::string> kScenarioOutputs = {"trajectory", "kraus", "xi",
                                                          "liouvillian", "report"};

struct ScenarioConfig {
  std::string name = "scenario";
  std::size_t n = 2;
  std::size_t m = 2;
  std::optional<ComplexMatrix> hamiltonian;  // system-first
  std::optional<ComplexMatrix> unitary;      // system-first
  TensorOrder order = TensorOrder::system_first;
  std::optional<DensityOperator> initial_state;  // system-first joint state
  std::string initial_label = "matrix";
  TimeGrid grid{0.0, kHalfPi, 100};
  double derivative_step = kDefaultDerivativeStep;
  std::vector<std::string> outputs = {"trajectory", "report"};

  bool wants(const std::string& section) const;
  /// Time-dependent joint unitary; a fixed unitary gives a constant family.
  UnitaryFamily unitary_family() const;
  bool has_dynamics() const { return hamiltonian.has_value() || unitary.has_value(); }
};

/// Matrices and the initial state are read in `order` (the "tensorOrder"
/// field, overridable by the caller) and stored system-first.
ScenarioConfig parse_scenario(const json& j, std::optional<TensorOrder> order_override = {});

/// Joint-state presets: {"preset": "classical-pair" | "entangled-pair", "a": c, "b": c}
/// or {"preset": "bell"}.
DensityOperator parse_joint_state(const json& j, std::size_t n, std::size_t m, TensorOrder order,
                                  std::string* label = nullptr);

CnotConfig parse_cnot_config(const json& j);
SwapConfig parse_swap_config(const json& j);

struct PrepareConfig {
  std::optional<PreparationMap> prep;
  std::optional<UnitaryOperator> unitary;
  std::string unitary_label;
  std::vector<DensityOperator> inputs;
  std::size_t linearity_samples = 200;
  std::size_t linearity_weights = 3;
  double linearity_tol = 1e-10;
  std::size_t environment_samples = 50;
  double environment_tol = 1e-10;
};

/// {"kind", "N", "M", "envState", "beta", "gammaPrime", "gate" | "unitary" |
///  "hamiltonian" + "time", "inputs", "linearity", "environment"}.
PrepareConfig parse_prepare(const json& j);

/// Named gates on two equal-dimension factors: "identity", "swap", "cnot"
/// (qubits only; control on the system).
UnitaryOperator named_gate(const std::string& name, std::size_t n, std::size_t m);

}  // namespace corrdyn
