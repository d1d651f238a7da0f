#pragma once

// Generalized Bloch decomposition of bipartite states over SU(N) x SU(M)
// generators:
//
//   rho_AB = 1/(NM) (I + alpha_i s_i (x) I + beta_j I (x) t_j + gamma_ij s_i (x) t_j)
//
// Generators are normalized as tr(s_i s_j) = 2 delta_ij, so that the N = 2
// basis is exactly the Pauli matrices in (x, y, z) order.

#include <cstddef>
#include <vector>

#include "corrdyn/densemat.hpp"

namespace corrdyn {

/// Generalized Gell-Mann matrices for SU(N).
///
/// Ordering: symmetric off-diagonal generators |j><k| + |k><j| for j < k in
/// row-major order, then the antisymmetric ones -i|j><k| + i|k><j| in the same
/// order, then the N-1 diagonal generators.
class GeneratorBasis {
 public:
  /// Throws InvalidDimension for n < 2.
  static GeneratorBasis su(std::size_t n);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return generators_.size(); }
  const ComplexMatrix& operator[](std::size_t i) const { return generators_[i]; }
  const std::vector<ComplexMatrix>& generators() const noexcept { return generators_; }

  /// Coefficients c_i = tr(m s_i) / 2, i.e. the expansion of the traceless part.
  RealVector coefficients(const ComplexMatrix& m) const;

 private:
  std::size_t dim_ = 0;
  std::vector<ComplexMatrix> generators_;
};

struct BlochDecomposition {
  std::size_t n = 0;
  std::size_t m = 0;
  RealVector alpha;   // N^2 - 1
  RealVector beta;    // M^2 - 1
  RealMatrix gamma;   // (N^2 - 1) x (M^2 - 1)
};

/// Correlations not explained by the marginals: gamma = NM gamma' + alpha beta^T.
struct CorrelationResidual {
  RealMatrix gamma_prime;
};

BlochDecomposition decompose(const DensityOperator& rho, std::size_t n, std::size_t m);
BlochDecomposition decompose(const DensityOperator& rho, const GeneratorBasis& basis_a,
                             const GeneratorBasis& basis_b);

CorrelationResidual residual(const BlochDecomposition& d);

/// Rebuilds the coefficient set from marginal Bloch vectors and a residual.
BlochDecomposition from_residual(std::size_t n, std::size_t m, const RealVector& alpha,
                                 const RealVector& beta, const CorrelationResidual& r);

/// The (unvalidated) Hermitian operator described by the coefficients.
ComplexMatrix compose_matrix(const BlochDecomposition& d);

/// Validated composition; throws UnphysicalState carrying the minimum
/// eigenvalue when the coefficients lie outside the physical set.
DensityOperator compose(const BlochDecomposition& d);

/// sum_ij gamma'_ij s_i (x) t_j, i.e. rho_AB - rho_A (x) rho_B.
ComplexMatrix correlation_operator(const CorrelationResidual& r, const GeneratorBasis& basis_a,
                                   const GeneratorBasis& basis_b);

/// Bloch vector of a single-system state: rho = (I + a_i s_i) / N.
RealVector bloch_vector(const ComplexMatrix& rho, const GeneratorBasis& basis);

enum class PureStateCheck { consistent, violation };

inline constexpr double kPurityTol = 1e-10;
inline constexpr double kResidualTol = 1e-10;

/// A pure marginal admits only product joint states, so any nonzero residual
/// paired with a pure rho_A is a violation.
PureStateCheck check_pure_state_constraint(const DensityOperator& rho_a,
                                           const CorrelationResidual& r);

}  // namespace corrdyn
