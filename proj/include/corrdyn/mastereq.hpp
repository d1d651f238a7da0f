#pragma once

// Time-local description of correlated reduced dynamics.
//
//   rho_A(t) = T(t) rho_A(0) + xi(t)
//   X(t)     = (dT/dt) T(t)^-1
//   F(t)     = (d/dt - X(t)) xi(t)
//   d rho_A / dt = X(t) rho_A + F(t)
//
// Superoperators act on column-stacked operators. Time derivatives are
// central differences; T(t) is inverted through a linear solve guarded by a
// condition-number threshold, and singular times are reported, never
// regularized.

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "corrdyn/blochdec.hpp"
#include "corrdyn/corrchan.hpp"
#include "corrdyn/densemat.hpp"

namespace corrdyn {

using UnitaryFamily = std::function<UnitaryOperator(double)>;

/// Joint unitary as a function of time together with the (fixed) initial
/// environment state that defines the Kraus part.
struct ReducedModel {
  UnitaryFamily unitary;
  DensityOperator env_state;
  std::size_t system_dim;
  std::size_t env_dim;
};

/// t -> exp(-i H t).
UnitaryFamily hamiltonian_family(const ComplexMatrix& h);

struct SuperOperator {
  std::size_t system_dim = 0;
  ComplexMatrix matrix;  // N^2 x N^2

  static SuperOperator identity(std::size_t n);
  ComplexMatrix apply(const ComplexMatrix& x) const;
};

SuperOperator superop_from_kraus(const KrausSet& k);

/// Matrix of rho -> sum M(t) rho M(t)^H.
SuperOperator superop_at(const ReducedModel& model, double t);

inline constexpr double kDefaultDerivativeStep = 1e-5;
inline constexpr double kSingularConditionThreshold = 1e12;

struct LiouvillianSample {
  double time = 0.0;
  std::optional<SuperOperator> generator;  // empty when singular
  double condition_number = 1.0;
  bool singular = false;
};

/// Never throws for singular propagators; inspect `singular` instead.
LiouvillianSample sample_liouvillian(const ReducedModel& model, double t,
                                     double h = kDefaultDerivativeStep);

/// Throws SingularPropagator when T(t) is numerically non-invertible.
SuperOperator liouvillian_at(const ReducedModel& model, double t, double h = kDefaultDerivativeStep);

InhomogeneousTerm xi_at(const ReducedModel& model, const CorrelationResidual& r, double t);

/// F(t) = d xi/dt - X(t) xi(t).
ComplexMatrix driving_term(const ReducedModel& model, const CorrelationResidual& r, double t,
                           double h = kDefaultDerivativeStep);

/// Closed form T(t) rho(0) + xi(t), unvalidated.
ComplexMatrix exact_reduced_state(const ReducedModel& model, const ComplexMatrix& rho_a0,
                                  const CorrelationResidual& r, double t);

/// Uniform grid t0, t0 + dt, ..., t1 with `steps` intervals.
struct TimeGrid {
  double t0 = 0.0;
  double t1 = 0.0;
  std::size_t steps = 0;

  double at(std::size_t k) const;
  double step() const { return steps == 0 ? 0.0 : (t1 - t0) / static_cast<double>(steps); }
};

struct TrajectoryPoint {
  double time = 0.0;
  DensityOperator rho_a;
  InhomogeneousTerm xi;
  ComplexMatrix driving;
};

struct MasterTrajectory {
  std::vector<TrajectoryPoint> points;
  /// First singular time hit by the integrator, if any; integration stops there.
  std::optional<double> halted_at;
};

/// Tolerances applied to integrated states (looser than exact construction,
/// since round-off accumulates over many steps).
inline constexpr StateTolerances kTrajectoryTolerances{1e-8, 1e-8, 1e-8};

/// Classical fixed-step RK4 on the vectorized inhomogeneous master equation.
/// The grid must start at 0. Throws UnphysicalInitialState when rho_a0 is
/// pure but r is not zero.
MasterTrajectory integrate_master(const DensityOperator& rho_a0, const ReducedModel& model,
                                  const CorrelationResidual& r, const TimeGrid& grid,
                                  double h = kDefaultDerivativeStep);

}  // namespace corrdyn
