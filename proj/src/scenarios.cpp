#include "corrdyn/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "corrdyn/blochdec.hpp"
#include "corrdyn/corrchan.hpp"

namespace corrdyn {

std::string to_string(TensorOrder order) {
  return order == TensorOrder::system_first ? "system-first" : "environment-first";
}

TensorOrder parse_tensor_order(const std::string& name) {
  if (name == "system-first") return TensorOrder::system_first;
  if (name == "environment-first") return TensorOrder::environment_first;
  throw ConfigError("config.tensor_order",
                    "tensor order must be 'system-first' or 'environment-first', got '" + name + "'");
}

ComplexMatrix to_system_first(const ComplexMatrix& m, Dims dims, TensorOrder order) {
  if (order == TensorOrder::system_first) return m;
  // Written as B (x) A: swap factors of a (M, N) operator.
  return swap_tensor_factors(m, {dims.environment, dims.system});
}

ComplexMatrix cnot_hamiltonian(TensorOrder order) {
  const ComplexMatrix i2 = pauli::identity();
  const ComplexMatrix proj1 = 0.5 * (i2 - pauli::z());
  const ComplexMatrix proj0 = 0.5 * (i2 + pauli::z());
  const ComplexMatrix written = kron(pauli::x(), proj1) + kron(i2, proj0);
  return to_system_first(written, {2, 2}, order);
}

UnitaryFamily cnot_unitary_family(TensorOrder order) {
  const ComplexMatrix h = cnot_hamiltonian(order);
  return [h](double t) {
    return UnitaryOperator(std::cos(t) * ComplexMatrix::Identity(4, 4) -
                           Complex(0.0, std::sin(t)) * h);
  };
}

UnitaryOperator cnot_quarter_period_unitary(TensorOrder order) {
  return UnitaryOperator(Complex(0.0, -1.0) * cnot_hamiltonian(order));
}

void check_amplitudes(Complex a, Complex b) {
  const double norm = std::norm(a) + std::norm(b);
  if (std::abs(norm - 1.0) > 1e-12)
    throw ConfigError("config.amplitudes",
                      "amplitudes must satisfy |a|^2 + |b|^2 = 1, got " + std::to_string(norm));
}

DensityOperator classical_pair_state(Complex a, Complex b) {
  check_amplitudes(a, b);
  ComplexMatrix rho = ComplexMatrix::Zero(4, 4);
  rho(0, 0) = std::norm(a);
  rho(3, 3) = std::norm(b);
  return DensityOperator(rho);
}

DensityOperator entangled_pair_state(Complex a, Complex b) {
  check_amplitudes(a, b);
  ComplexVector psi = ComplexVector::Zero(4);
  psi[0] = a;
  psi[3] = b;
  return DensityOperator(psi * psi.adjoint());
}

DensityOperator bell_state() {
  const double s = 1.0 / std::sqrt(2.0);
  return entangled_pair_state(s, s);
}

std::vector<TrajectoryRow> direct_trajectory(const ReducedModel& model,
                                             const DensityOperator& rho_ab,
                                             const TimeGrid& grid) {
  const std::size_t n = model.system_dim;
  const std::size_t m = model.env_dim;
  const GeneratorBasis ba = GeneratorBasis::su(n);
  const GeneratorBasis bb = GeneratorBasis::su(m);
  const CorrelationResidual r = residual(decompose(rho_ab, ba, bb));

  std::vector<TrajectoryRow> rows;
  rows.reserve(grid.steps + 1);
  for (std::size_t k = 0; k <= grid.steps; ++k) {
    const double t = grid.at(k);
    const UnitaryOperator u = model.unitary(t);
    TrajectoryRow row;
    row.time = t;
    row.rho_a = evolve_direct(u, rho_ab, n, m).matrix();
    row.alpha = bloch_vector(row.rho_a, ba);
    row.xi_norm = inhomogeneous_term(u, r, ba, bb, t).xi.norm();
    row.cond_t = condition_number(superop_at(model, t).matrix);
    row.singular = !(row.cond_t <= kSingularConditionThreshold);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<double> singular_times(const ReducedModel& model, const TimeGrid& grid) {
  std::vector<double> out;
  for (std::size_t k = 0; k <= grid.steps; ++k) {
    const double t = grid.at(k);
    if (!(condition_number(superop_at(model, t).matrix) <= kSingularConditionThreshold))
      out.push_back(t);
  }
  return out;
}

ConventionEndpoints cnot_endpoints(TensorOrder order, Complex a, Complex b) {
  const UnitaryOperator u = cnot_quarter_period_unitary(order);
  ConventionEndpoints e{order, evolve_direct(u, classical_pair_state(a, b), 2, 2).matrix(),
                        evolve_direct(u, entangled_pair_state(a, b), 2, 2).matrix()};
  e.trace_distance = trace_distance(e.classical, e.entangled);
  e.coincide = e.trace_distance <= kEndpointMatchTol;

  const ComplexMatrix ref_classical = 0.5 * (pauli::identity() + pauli::z());
  const ComplexMatrix ref_entangled =
      0.5 * (pauli::identity() + (std::norm(a) - std::norm(b)) * pauli::z());
  const ComplexMatrix* endpoints[2] = {&e.classical, &e.entangled};
  const ComplexMatrix* refs[2] = {&ref_classical, &ref_entangled};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) e.matches[i][j] = max_abs(*endpoints[i] - *refs[j]) <= kEndpointMatchTol;
  return e;
}

namespace {

PathAgreement compare_paths(const std::string& label, const ReducedModel& model,
                            const DensityOperator& rho_ab, const TimeGrid& grid, double h) {
  const std::size_t n = model.system_dim;
  const std::size_t m = model.env_dim;
  PathAgreement p;
  p.state = label;
  p.rows = direct_trajectory(model, rho_ab, grid);

  for (const auto& row : p.rows) {
    const ReducedEvolution two_term = evolve_reduced(model.unitary(row.time), rho_ab, n, m);
    p.max_two_term_vs_direct =
        std::max(p.max_two_term_vs_direct, trace_distance(two_term.rho_a_prime.matrix(), row.rho_a));
  }

  const DensityOperator rho_a = partial_trace(rho_ab, {n, m}, Keep::first);
  const CorrelationResidual r = residual(decompose(rho_ab, n, m));
  const MasterTrajectory traj = integrate_master(rho_a, model, r, grid, h);
  p.halted_at = traj.halted_at;
  for (std::size_t k = 0; k < traj.points.size(); ++k) {
    const auto& point = traj.points[k];
    const ComplexMatrix exact = exact_reduced_state(model, rho_a.matrix(), r, point.time);
    p.max_master_vs_exact =
        std::max(p.max_master_vs_exact, trace_distance(point.rho_a.matrix(), exact));
    p.max_master_vs_direct =
        std::max(p.max_master_vs_direct, trace_distance(point.rho_a.matrix(), p.rows[k].rho_a));
  }
  p.compared_points = traj.points.size();
  return p;
}

}  // namespace

CnotReport run_cnot_example(const CnotConfig& config) {
  check_amplitudes(config.a, config.b);
  CnotReport report;
  report.config = config;

  const DensityOperator classical = classical_pair_state(config.a, config.b);
  const DensityOperator entangled = entangled_pair_state(config.a, config.b);
  report.rho_a_classical = partial_trace(classical.matrix(), {2, 2}, Keep::first);
  report.rho_a_entangled = partial_trace(entangled.matrix(), {2, 2}, Keep::first);
  report.rho_b_classical = partial_trace(classical.matrix(), {2, 2}, Keep::second);
  report.rho_b_entangled = partial_trace(entangled.matrix(), {2, 2}, Keep::second);
  report.marginal_difference =
      std::max(max_abs(report.rho_a_classical - report.rho_a_entangled),
               max_abs(report.rho_b_classical - report.rho_b_entangled));
  report.gamma_prime_classical = residual(decompose(classical, 2, 2)).gamma_prime;
  report.gamma_prime_entangled = residual(decompose(entangled, 2, 2)).gamma_prime;

  report.reference_classical = 0.5 * (pauli::identity() + pauli::z());
  report.reference_entangled =
      0.5 * (pauli::identity() + (std::norm(config.a) - std::norm(config.b)) * pauli::z());

  for (TensorOrder order : {TensorOrder::system_first, TensorOrder::environment_first})
    report.conventions.push_back(cnot_endpoints(order, config.a, config.b));

  const DensityOperator rho_b(report.rho_b_entangled);
  const ReducedModel model{cnot_unitary_family(config.order), rho_b, 2, 2};
  report.paths.push_back(compare_paths("classical-pair", model, classical, config.grid,
                                       config.derivative_step));
  report.paths.push_back(compare_paths("entangled-pair", model, entangled, config.grid,
                                       config.derivative_step));
  report.singular_times = singular_times(model, config.grid);

  // The generator must not see the correlations: rebuild it from the
  // uncorrelated product of the same marginals and compare.
  const DensityOperator product(kron(report.rho_a_entangled, report.rho_b_entangled));
  const ReducedModel product_model{cnot_unitary_family(config.order),
                                   partial_trace(product, {2, 2}, Keep::second), 2, 2};
  for (std::size_t k = 0; k <= config.grid.steps; ++k) {
    const double t = config.grid.at(k);
    const LiouvillianSample with = sample_liouvillian(model, t, config.derivative_step);
    const LiouvillianSample without = sample_liouvillian(product_model, t, config.derivative_step);
    if (with.singular || without.singular) continue;
    report.liouvillian_correlation_difference =
        std::max(report.liouvillian_correlation_difference,
                 max_abs(with.generator->matrix - without.generator->matrix));
  }
  return report;
}

SwapReport run_swap_example(const SwapConfig& config) {
  const DensityOperator target = config.target.value_or(DensityOperator::basis(2, 1));
  std::vector<DensityOperator> probes = config.probes;
  if (probes.empty()) {
    const std::size_t n = target.dim();
    ComplexVector plus = ComplexVector::Ones(static_cast<Eigen::Index>(n));
    probes = {DensityOperator::basis(n, 0), DensityOperator::pure(plus),
              DensityOperator::maximally_mixed(n)};
  }

  const InducedEvolution e = swap_construction(target);
  SwapReport report;
  report.target = target.matrix();
  const ComplexMatrix& s = e.unitary.matrix();
  const auto d = s.rows();
  report.unitarity_error = max_abs(s.adjoint() * s - ComplexMatrix::Identity(d, d));
  report.self_inverse_error = max_abs(s * s - ComplexMatrix::Identity(d, d));
  for (const auto& probe : probes) {
    if (probe.dim() != target.dim())
      throw ConfigError("config.dims", "swap probes must have the target's dimension");
    SwapProbe p{probe.matrix(), e.apply(probe).matrix(), 0.0};
    p.deviation = max_abs(p.output - report.target);
    report.max_deviation = std::max(report.max_deviation, p.deviation);
    report.probes.push_back(std::move(p));
  }
  report.all_match = report.max_deviation <= kSwapTol;
  return report;
}

}  // namespace corrdyn
