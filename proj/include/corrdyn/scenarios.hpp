#pragma once

// Canonical scenarios: the two-qubit controlled-NOT model with classically
// and quantum-correlated initial states, and the swap construction that
// realizes an arbitrary constant map.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "corrdyn/densemat.hpp"
#include "corrdyn/mastereq.hpp"
#include "corrdyn/prepmap.hpp"

namespace corrdyn {

/// How a two-factor expression such as "P (x) Q" is read: system-first puts P
/// on the open system, environment-first puts P on the environment.
enum class TensorOrder { system_first, environment_first };

std::string to_string(TensorOrder order);
/// Throws ConfigError("config.tensor_order") for unknown names.
TensorOrder parse_tensor_order(const std::string& name);

/// Reorders an operator written in `order` into system-first (A (x) B) form.
ComplexMatrix to_system_first(const ComplexMatrix& m, Dims dims, TensorOrder order);

// --- controlled-NOT model -----------------------------------------------------

/// H = X (x) (I - Z)/2 + I (x) (I + Z)/2 read in the given order and returned
/// as an operator on A (x) B. H^2 = I.
ComplexMatrix cnot_hamiltonian(TensorOrder order);

/// U(t) = cos t I - i sin t H, exact because H^2 = I.
UnitaryFamily cnot_unitary_family(TensorOrder order);

/// |a|^2 |00><00| + |b|^2 |11><11|.
DensityOperator classical_pair_state(Complex a, Complex b);
/// (a|00> + b|11>)(a*<00| + b*<11|).
DensityOperator entangled_pair_state(Complex a, Complex b);
/// (|00> + |11>)/sqrt2.
DensityOperator bell_state();

/// Throws ConfigError("config.amplitudes") unless |a|^2 + |b|^2 = 1 within 1e-12.
void check_amplitudes(Complex a, Complex b);

inline constexpr double kHalfPi = 1.57079632679489661923;
inline constexpr double kEndpointMatchTol = 1e-12;

struct CnotConfig {
  Complex a{0.86602540378443864676, 0.0};  // sqrt(3)/2
  Complex b{0.5, 0.0};
  TensorOrder order = TensorOrder::system_first;
  TimeGrid grid{0.0, kHalfPi, 1571};
  double derivative_step = kDefaultDerivativeStep;
  /// Which initial state the CSV trajectory follows: "classical-pair" or "entangled-pair".
  std::string csv_state = "entangled-pair";
};

/// One sampled time along a trajectory.
struct TrajectoryRow {
  double time = 0.0;
  ComplexMatrix rho_a;
  RealVector alpha;
  double xi_norm = 0.0;
  double cond_t = 1.0;  // +inf when exactly singular
  bool singular = false;
};

/// Reduced endpoints at t = pi/2 for both initial states under one convention,
/// checked against the two reference endpoint formulas.
struct ConventionEndpoints {
  TensorOrder order;
  ComplexMatrix classical;
  ComplexMatrix entangled;
  double trace_distance = 0.0;
  bool coincide = false;
  // matches[i][j]: endpoint i (0 classical, 1 entangled) equals reference j.
  bool matches[2][2] = {{false, false}, {false, false}};
};

/// Agreement between direct partial-trace evolution, the Kraus + xi law and
/// master-equation integration for one initial state.
struct PathAgreement {
  std::string state;
  double max_two_term_vs_direct = 0.0;  // trace distance
  double max_master_vs_exact = 0.0;     // vs T(t) rho(0) + xi(t)
  double max_master_vs_direct = 0.0;
  std::size_t compared_points = 0;
  std::optional<double> halted_at;
  std::vector<TrajectoryRow> rows;  // direct evolution on the grid
};

struct CnotReport {
  CnotConfig config;
  ComplexMatrix rho_a_classical;
  ComplexMatrix rho_a_entangled;
  ComplexMatrix rho_b_classical;
  ComplexMatrix rho_b_entangled;
  double marginal_difference = 0.0;  // max-norm, both marginals
  RealMatrix gamma_prime_classical;
  RealMatrix gamma_prime_entangled;
  ComplexMatrix reference_classical;  // (I + Z)/2
  ComplexMatrix reference_entangled;  // (I + (|a|^2 - |b|^2) Z)/2
  std::vector<ConventionEndpoints> conventions;  // system-first, environment-first
  std::vector<PathAgreement> paths;              // under config.order
  std::vector<double> singular_times;
  double liouvillian_correlation_difference = 0.0;
};

/// U(pi/2) = -i H, evaluated without trigonometric round-off.
UnitaryOperator cnot_quarter_period_unitary(TensorOrder order);

ConventionEndpoints cnot_endpoints(TensorOrder order, Complex a, Complex b);

CnotReport run_cnot_example(const CnotConfig& config);

// --- swap construction --------------------------------------------------------

struct SwapConfig {
  std::optional<DensityOperator> target;       // defaults to |1><1|
  std::vector<DensityOperator> probes;         // defaults to |0><0|, |+><+|, I/2
};

struct SwapProbe {
  ComplexMatrix input;
  ComplexMatrix output;
  double deviation = 0.0;
};

struct SwapReport {
  ComplexMatrix target;
  std::vector<SwapProbe> probes;
  double max_deviation = 0.0;
  double unitarity_error = 0.0;
  double self_inverse_error = 0.0;
  bool all_match = false;
};

inline constexpr double kSwapTol = 1e-12;

SwapReport run_swap_example(const SwapConfig& config);

/// Trajectory of tr_B(U(t) rho_AB U(t)^H) on a grid, with xi and conditioning data.
std::vector<TrajectoryRow> direct_trajectory(const ReducedModel& model,
                                             const DensityOperator& rho_ab,
                                             const TimeGrid& grid);

/// Grid times at which T(t) is flagged singular.
std::vector<double> singular_times(const ReducedModel& model, const TimeGrid& grid);

}  // namespace corrdyn
