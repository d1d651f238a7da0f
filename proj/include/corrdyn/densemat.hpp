#pragma once

// Dense complex linear algebra used throughout the library: Kronecker
// products, partial traces, Hermitian spectral decomposition, unitary
// propagators and column-stacking vectorization.

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

#include "corrdyn/errors.hpp"

namespace corrdyn {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

inline constexpr double kHermiticityTol = 1e-12;
inline constexpr double kUnitarityTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPositivityTol = 1e-10;

/// Acceptance thresholds for DensityOperator validation.
struct StateTolerances {
  double hermiticity = kHermiticityTol;
  double trace = kTraceTol;
  double positivity = kPositivityTol;
};

/// Bipartite dimensions (system first, environment second).
struct Dims {
  std::size_t system;
  std::size_t environment;

  std::size_t total() const noexcept { return system * environment; }
};

enum class Keep { first, second };

/// Largest entry magnitude of a matrix (max-norm).
double max_abs(const ComplexMatrix& m);

/// max |m - m^H| over all entries; the matrix must be square.
double hermiticity_error(const ComplexMatrix& m);

bool all_finite(const ComplexMatrix& m);

/// Unit-trace positive-semidefinite Hermitian matrix.
///
/// Construction always validates. Eigenvalues in (-positivity, 0) are treated
/// as round-off and clamped to zero; anything more negative throws
/// UnphysicalState.
class DensityOperator {
 public:
  explicit DensityOperator(const ComplexMatrix& m, const StateTolerances& tol = {});

  /// Pure state |psi><psi| from a (not necessarily normalized) vector.
  static DensityOperator pure(const ComplexVector& psi);
  static DensityOperator maximally_mixed(std::size_t dim);
  /// Computational basis projector |k><k|.
  static DensityOperator basis(std::size_t dim, std::size_t k);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  /// Smallest eigenvalue observed during validation, before clamping.
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }
  double purity() const;

 private:
  ComplexMatrix matrix_;
  double min_eigenvalue_ = 0.0;
};

class UnitaryOperator {
 public:
  explicit UnitaryOperator(const ComplexMatrix& m, double tol = kUnitarityTol);

  static UnitaryOperator identity(std::size_t dim);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  UnitaryOperator adjoint() const;

 private:
  ComplexMatrix matrix_;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Partial trace of an arbitrary operator on a bipartite space.
ComplexMatrix partial_trace(const ComplexMatrix& m, Dims dims, Keep keep);
DensityOperator partial_trace(const DensityOperator& rho, Dims dims, Keep keep);

/// Eigenpairs of a Hermitian matrix, eigenvalues in descending order.
struct HermitianEigen {
  RealVector values;
  ComplexMatrix vectors;  // column k pairs with values[k]
};

/// Ties (|dλ| <= 1e-12) are ordered lexicographically by the real parts of the
/// eigenvector entries; each eigenvector is phase-fixed so that its first
/// non-negligible entry is real and positive.
HermitianEigen eig_hermitian(const ComplexMatrix& m, double tol = kHermiticityTol);

/// exp(-i H t) built from the spectral decomposition of H.
UnitaryOperator matrix_exp_unitary(const ComplexMatrix& h, double t);

/// Column stacking: v[j*dim + i] = m(i, j).
ComplexVector vectorize(const ComplexMatrix& m);
ComplexMatrix devectorize(const ComplexVector& v);

/// Swap the tensor factors of an operator on C^a (x) C^b, giving one on C^b (x) C^a.
ComplexMatrix swap_tensor_factors(const ComplexMatrix& m, Dims dims);

/// Half the trace norm of (a - b).
double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// Ratio of extreme singular values; +inf when the smallest is zero.
double condition_number(const ComplexMatrix& m);

namespace pauli {
ComplexMatrix identity();
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
}  // namespace pauli

}  // namespace corrdyn
