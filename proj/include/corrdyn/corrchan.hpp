#pragma once

// Reduced dynamics of a system correlated with its environment. The joint
// unitary evolution splits into a Kraus channel built from (U, rho_B) and a
// traceless inhomogeneous term that depends only on U and the residual
// correlations gamma'.

#include <cstddef>
#include <vector>

#include "corrdyn/blochdec.hpp"
#include "corrdyn/densemat.hpp"

namespace corrdyn {

/// Spectral ensemble of the environment state: rho_B = sum_nu p_nu |nu><nu|.
struct EnvironmentEnsemble {
  RealVector probabilities;
  ComplexMatrix basis;  // column nu is |nu>

  static EnvironmentEnsemble from_state(const DensityOperator& rho_b);
};

/// Operators M_{mu nu} = <mu| sqrt(p_nu) U |nu>, stored at index mu * M + nu.
/// Zero-weight operators are kept so indexing stays uniform.
struct KrausSet {
  std::size_t system_dim = 0;
  std::size_t env_dim = 0;
  std::vector<ComplexMatrix> operators;
  RealVector env_probabilities;

  const ComplexMatrix& at(std::size_t mu, std::size_t nu) const {
    return operators.at(mu * env_dim + nu);
  }
  /// max |sum M^H M - I|.
  double completeness_error() const;
};

KrausSet kraus_from_unitary(const UnitaryOperator& u, const DensityOperator& rho_b, std::size_t n,
                            std::size_t m);
/// Same as above with an explicitly chosen eigenbasis of rho_B (useful when
/// rho_B is degenerate and the basis is not unique).
KrausSet kraus_from_unitary(const UnitaryOperator& u, const EnvironmentEnsemble& env,
                            std::size_t n, std::size_t m);

/// sum M X M^H for an arbitrary operator X.
ComplexMatrix apply_kraus(const KrausSet& k, const ComplexMatrix& x);
DensityOperator apply_kraus(const KrausSet& k, const DensityOperator& rho_a);

struct InhomogeneousTerm {
  ComplexMatrix xi;
  double time = 0.0;
};

inline constexpr double kInhomogeneousTol = 1e-12;

/// xi = tr_B(U (sum gamma'_ij s_i (x) t_j) U^H). Throws NumericalError if the
/// result is not Hermitian and traceless to kInhomogeneousTol.
InhomogeneousTerm inhomogeneous_term(const UnitaryOperator& u, const CorrelationResidual& r,
                                     const GeneratorBasis& basis_a, const GeneratorBasis& basis_b,
                                     double time = 0.0);

/// tr_B(U rho_AB U^H), computed directly.
DensityOperator evolve_direct(const UnitaryOperator& u, const DensityOperator& rho_ab,
                              std::size_t n, std::size_t m);

struct ReducedEvolution {
  DensityOperator rho_a_prime;
  ComplexMatrix kraus_part;
  InhomogeneousTerm xi;
  DensityOperator rho_a;
  DensityOperator rho_b;
  CorrelationResidual correlations;
};

/// Two-term evolution: Kraus channel on rho_A plus the correlation term.
ReducedEvolution evolve_reduced(const UnitaryOperator& u, const DensityOperator& rho_ab,
                                std::size_t n, std::size_t m);

/// sum_ab |a><b| (x) Channel(|a><b|).
ComplexMatrix choi_matrix(const KrausSet& k);
double choi_min_eigenvalue(const KrausSet& k);
bool is_completely_positive(const KrausSet& k, double tol = kPositivityTol);

}  // namespace corrdyn
