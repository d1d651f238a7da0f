#pragma once

// Preparation (assignment) maps rho_A -> rho_AB and the reduced evolutions
// they induce through a fixed joint unitary:
//
//   $(rho_A) = tr_B(U P(rho_A) U^H)
//
// Maps are described behaviourally. A nonlinear rule such as cloning has no
// superoperator, so none is ever built for it.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "corrdyn/blochdec.hpp"
#include "corrdyn/densemat.hpp"
#include "corrdyn/random.hpp"

namespace corrdyn {

class PreparationMap {
 public:
  enum class Kind { product, clone, transpose_clone, fixed_correlation };

  /// rho_A -> rho_A (x) rho_B.
  static PreparationMap product(std::size_t n, const DensityOperator& rho_b);
  /// rho_A -> rho_A (x) rho_A.
  static PreparationMap clone(std::size_t n);
  /// rho_A -> rho_A (x) rho_A^T.
  static PreparationMap transpose_clone(std::size_t n);
  /// Keeps the environment Bloch vector and residual correlations fixed and
  /// takes the system Bloch vector from the input.
  static PreparationMap fixed_correlation(std::size_t n, std::size_t m, const RealVector& beta,
                                          const CorrelationResidual& r);

  Kind kind() const noexcept { return kind_; }
  std::size_t system_dim() const noexcept { return n_; }
  std::size_t env_dim() const noexcept { return m_; }

  /// Throws OutsideDomain when the prepared joint operator is not a state.
  DensityOperator apply(const DensityOperator& rho_a) const;

  const std::optional<DensityOperator>& env_state() const noexcept { return env_state_; }
  const RealVector& beta() const noexcept { return beta_; }
  const CorrelationResidual& correlations() const noexcept { return residual_; }

 private:
  PreparationMap(Kind kind, std::size_t n, std::size_t m) : kind_(kind), n_(n), m_(m) {}

  Kind kind_;
  std::size_t n_;
  std::size_t m_;
  std::optional<DensityOperator> env_state_;
  RealVector beta_;
  CorrelationResidual residual_;
};

std::string to_string(PreparationMap::Kind kind);

DensityOperator prep_apply(const PreparationMap& p, const DensityOperator& rho_a);

struct InducedEvolution {
  PreparationMap prep;
  UnitaryOperator unitary;

  DensityOperator apply(const DensityOperator& rho_a) const;
};

DensityOperator induced_apply(const InducedEvolution& e, const DensityOperator& rho_a);

/// Inputs, weights and deviation for one mixture: compares
/// $(sum w_j rho_j) with sum w_j $(rho_j).
struct LinearityWitness {
  std::vector<DensityOperator> inputs;
  std::vector<double> weights;
  ComplexMatrix output_of_mixture;
  ComplexMatrix mixture_of_outputs;
  double deviation;  // max-norm of the difference
};

LinearityWitness linearity_deviation(const InducedEvolution& e,
                                     const std::vector<DensityOperator>& inputs,
                                     const std::vector<double>& weights);

struct LinearityResult {
  bool linear = true;
  std::optional<LinearityWitness> witness;
  double max_deviation = 0.0;
  std::size_t mixtures_tested = 0;
};

/// Draws `samples` random pairs of inputs (skipping inputs outside the map's
/// domain) and mixes each pair with `mix_weights` interior weights
/// k / (mix_weights + 1). Returns on the first deviation above `tol`.
LinearityResult linearity_test(const InducedEvolution& e, std::size_t samples,
                               std::size_t mix_weights, double tol, Rng& rng);

struct EnvironmentWitness {
  DensityOperator first_input;
  DensityOperator second_input;
  ComplexMatrix first_env;
  ComplexMatrix second_env;
  double deviation;
};

struct ConstantEnvironmentResult {
  bool constant = true;
  std::optional<ComplexMatrix> env_state;  // set when constant
  std::optional<EnvironmentWitness> witness;
  std::size_t accepted_inputs = 0;
};

/// Checks whether tr_A P(rho_A) is the same for random inputs in the domain.
ConstantEnvironmentResult constant_environment_test(const PreparationMap& p, std::size_t samples,
                                                    double tol, Rng& rng);

/// Swap of two equal-dimension factors: sum_ij |i><j| (x) |j><i|.
UnitaryOperator swap_unitary(std::size_t n);

/// Product preparation with rho_B = target followed by the swap: every input
/// is mapped to `target`.
InducedEvolution swap_construction(const DensityOperator& target);

}  // namespace corrdyn
