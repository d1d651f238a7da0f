#include "corrdyn/mastereq.hpp"

#include <cmath>
#include <string>

namespace corrdyn {

UnitaryFamily hamiltonian_family(const ComplexMatrix& h) {
  const HermitianEigen eig = eig_hermitian(h);
  return [eig](double t) {
    ComplexVector phases(eig.values.size());
    for (Eigen::Index k = 0; k < phases.size(); ++k)
      phases[k] = std::exp(Complex(0.0, -eig.values[k] * t));
    return UnitaryOperator(eig.vectors * phases.asDiagonal() * eig.vectors.adjoint());
  };
}

SuperOperator SuperOperator::identity(std::size_t n) {
  const auto d = static_cast<Eigen::Index>(n * n);
  return {n, ComplexMatrix::Identity(d, d)};
}

ComplexMatrix SuperOperator::apply(const ComplexMatrix& x) const {
  if (static_cast<std::size_t>(x.rows()) != system_dim || x.rows() != x.cols())
    throw DimensionMismatch("SuperOperator::apply: operator dimension mismatch");
  return devectorize(matrix * vectorize(x));
}

SuperOperator superop_from_kraus(const KrausSet& k) {
  // vec(M X M^H) = (conj(M) (x) M) vec(X) for column stacking.
  const auto d = static_cast<Eigen::Index>(k.system_dim * k.system_dim);
  SuperOperator s{k.system_dim, ComplexMatrix::Zero(d, d)};
  for (const auto& op : k.operators) s.matrix += kron(op.conjugate(), op);
  return s;
}

SuperOperator superop_at(const ReducedModel& model, double t) {
  return superop_from_kraus(
      kraus_from_unitary(model.unitary(t), model.env_state, model.system_dim, model.env_dim));
}

LiouvillianSample sample_liouvillian(const ReducedModel& model, double t, double h) {
  if (!(h > 0.0)) throw InputError("derivative.step", "finite-difference step must be positive");
  const SuperOperator now = superop_at(model, t);
  LiouvillianSample out;
  out.time = t;
  out.condition_number = condition_number(now.matrix);
  out.singular = !(out.condition_number <= kSingularConditionThreshold);
  if (out.singular) return out;

  const ComplexMatrix deriv =
      (superop_at(model, t + h).matrix - superop_at(model, t - h).matrix) / (2.0 * h);
  // X T = dT  <=>  T^T X^T = dT^T
  const ComplexMatrix xt = now.matrix.transpose().partialPivLu().solve(deriv.transpose());
  out.generator = SuperOperator{model.system_dim, xt.transpose()};
  return out;
}

SuperOperator liouvillian_at(const ReducedModel& model, double t, double h) {
  LiouvillianSample s = sample_liouvillian(model, t, h);
  if (s.singular) throw SingularPropagator(t, s.condition_number);
  return std::move(*s.generator);
}

InhomogeneousTerm xi_at(const ReducedModel& model, const CorrelationResidual& r, double t) {
  return inhomogeneous_term(model.unitary(t), r, GeneratorBasis::su(model.system_dim),
                            GeneratorBasis::su(model.env_dim), t);
}

namespace {

struct RhsSample {
  SuperOperator generator;
  InhomogeneousTerm xi;
  ComplexMatrix driving;
};

// Everything the right-hand side needs at time t, or the condition number when
// the propagator is singular there.
struct RhsOrSingular {
  std::optional<RhsSample> rhs;
  double condition_number;
};

RhsOrSingular rhs_at(const ReducedModel& model, const CorrelationResidual& r, double t, double h) {
  LiouvillianSample s = sample_liouvillian(model, t, h);
  if (s.singular) return {std::nullopt, s.condition_number};
  InhomogeneousTerm xi = xi_at(model, r, t);
  const ComplexMatrix dxi = (xi_at(model, r, t + h).xi - xi_at(model, r, t - h).xi) / (2.0 * h);
  ComplexMatrix f = dxi - s.generator->apply(xi.xi);
  return {RhsSample{std::move(*s.generator), std::move(xi), std::move(f)}, s.condition_number};
}

ComplexVector evaluate(const RhsSample& s, const ComplexVector& y) {
  return s.generator.matrix * y + vectorize(s.driving);
}

}  // namespace

ComplexMatrix driving_term(const ReducedModel& model, const CorrelationResidual& r, double t,
                           double h) {
  RhsOrSingular s = rhs_at(model, r, t, h);
  if (!s.rhs) throw SingularPropagator(t, s.condition_number);
  return std::move(s.rhs->driving);
}

ComplexMatrix exact_reduced_state(const ReducedModel& model, const ComplexMatrix& rho_a0,
                                  const CorrelationResidual& r, double t) {
  return superop_at(model, t).apply(rho_a0) + xi_at(model, r, t).xi;
}

double TimeGrid::at(std::size_t k) const {
  if (k == steps) return t1;
  return t0 + static_cast<double>(k) * step();
}

MasterTrajectory integrate_master(const DensityOperator& rho_a0, const ReducedModel& model,
                                  const CorrelationResidual& r, const TimeGrid& grid, double h) {
  if (rho_a0.dim() != model.system_dim)
    throw DimensionMismatch("integrate_master: initial state dimension mismatch");
  if (grid.t0 != 0.0) throw InputError("grid.invalid", "integration grid must start at t = 0");
  if (grid.steps > 0 && !(grid.t1 > grid.t0))
    throw InputError("grid.invalid", "integration grid must be strictly increasing");
  if (check_pure_state_constraint(rho_a0, r) == PureStateCheck::violation)
    throw UnphysicalInitialState(
        "pure initial system state is incompatible with nonzero residual correlations");

  MasterTrajectory out;
  RhsOrSingular current = rhs_at(model, r, grid.t0, h);
  if (!current.rhs) {
    out.halted_at = grid.t0;
    return out;
  }

  ComplexVector y = vectorize(rho_a0.matrix());
  auto record = [&](double t, const RhsSample& s) {
    out.points.push_back(
        {t, DensityOperator(devectorize(y), kTrajectoryTolerances), s.xi, s.driving});
  };
  record(grid.t0, *current.rhs);

  for (std::size_t k = 0; k < grid.steps; ++k) {
    const double t = grid.at(k);
    const double t_next = grid.at(k + 1);
    const double dt = t_next - t;

    RhsOrSingular mid = rhs_at(model, r, t + 0.5 * dt, h);
    if (!mid.rhs) {
      out.halted_at = t + 0.5 * dt;
      break;
    }
    RhsOrSingular end = rhs_at(model, r, t_next, h);
    if (!end.rhs) {
      out.halted_at = t_next;
      break;
    }

    const ComplexVector k1 = evaluate(*current.rhs, y);
    const ComplexVector k2 = evaluate(*mid.rhs, y + 0.5 * dt * k1);
    const ComplexVector k3 = evaluate(*mid.rhs, y + 0.5 * dt * k2);
    const ComplexVector k4 = evaluate(*end.rhs, y + dt * k3);
    y += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    current = std::move(end);
    record(t_next, *current.rhs);
  }
  return out;
}

}  // namespace corrdyn
