#include "corrdyn/corrchan.hpp"

#include <cmath>
#include <string>

namespace corrdyn {

namespace {

void check_joint_dims(std::size_t joint, std::size_t n, std::size_t m, const char* what) {
  if (joint != n * m) {
    throw DimensionMismatch(std::string(what) + ": joint dimension " + std::to_string(joint) +
                            " != " + std::to_string(n) + "*" + std::to_string(m));
  }
}

}  // namespace

EnvironmentEnsemble EnvironmentEnsemble::from_state(const DensityOperator& rho_b) {
  HermitianEigen eig = eig_hermitian(rho_b.matrix());
  // Validation already clamped round-off negatives; drop what remains.
  return {eig.values.cwiseMax(0.0), std::move(eig.vectors)};
}

double KrausSet::completeness_error() const {
  const auto n = static_cast<Eigen::Index>(system_dim);
  ComplexMatrix sum = ComplexMatrix::Zero(n, n);
  for (const auto& op : operators) sum += op.adjoint() * op;
  return max_abs(sum - ComplexMatrix::Identity(n, n));
}

KrausSet kraus_from_unitary(const UnitaryOperator& u, const DensityOperator& rho_b, std::size_t n,
                            std::size_t m) {
  if (rho_b.dim() != m)
    throw DimensionMismatch("kraus_from_unitary: environment state has dimension " +
                            std::to_string(rho_b.dim()) + ", expected " + std::to_string(m));
  return kraus_from_unitary(u, EnvironmentEnsemble::from_state(rho_b), n, m);
}

KrausSet kraus_from_unitary(const UnitaryOperator& u, const EnvironmentEnsemble& env,
                            std::size_t n, std::size_t m) {
  check_joint_dims(u.dim(), n, m, "kraus_from_unitary");
  const auto na = static_cast<Eigen::Index>(n);
  const auto mb = static_cast<Eigen::Index>(m);
  if (env.probabilities.size() != mb || env.basis.rows() != mb || env.basis.cols() != mb)
    throw DimensionMismatch("kraus_from_unitary: environment ensemble does not match M");

  const ComplexMatrix& um = u.matrix();
  KrausSet k{n, m, {}, env.probabilities};
  k.operators.reserve(m * m);
  for (Eigen::Index mu = 0; mu < mb; ++mu) {
    for (Eigen::Index nu = 0; nu < mb; ++nu) {
      const double weight = std::sqrt(std::max(env.probabilities[nu], 0.0));
      const auto ket = env.basis.col(nu);
      ComplexMatrix op(na, na);
      // <a mu| U |b nu> = sum_k U(a M + mu, b M + k) <k|nu>
      for (Eigen::Index a = 0; a < na; ++a)
        for (Eigen::Index b = 0; b < na; ++b)
          op(a, b) =
              weight * um.row(a * mb + mu).segment(b * mb, mb).transpose().cwiseProduct(ket).sum();
      k.operators.push_back(std::move(op));
    }
  }
  return k;
}

ComplexMatrix apply_kraus(const KrausSet& k, const ComplexMatrix& x) {
  if (static_cast<std::size_t>(x.rows()) != k.system_dim || x.rows() != x.cols())
    throw DimensionMismatch("apply_kraus: operator dimension does not match the Kraus set");
  ComplexMatrix out = ComplexMatrix::Zero(x.rows(), x.cols());
  for (const auto& op : k.operators) out += op * x * op.adjoint();
  return out;
}

DensityOperator apply_kraus(const KrausSet& k, const DensityOperator& rho_a) {
  return DensityOperator(apply_kraus(k, rho_a.matrix()));
}

InhomogeneousTerm inhomogeneous_term(const UnitaryOperator& u, const CorrelationResidual& r,
                                     const GeneratorBasis& basis_a, const GeneratorBasis& basis_b,
                                     double time) {
  const std::size_t n = basis_a.dim();
  const std::size_t m = basis_b.dim();
  check_joint_dims(u.dim(), n, m, "inhomogeneous_term");
  const ComplexMatrix c = correlation_operator(r, basis_a, basis_b);
  const ComplexMatrix& um = u.matrix();
  ComplexMatrix xi = partial_trace(um * c * um.adjoint(), {n, m}, Keep::first);

  const double herm = hermiticity_error(xi);
  const double tr = std::abs(xi.trace());
  if (herm > kInhomogeneousTol || tr > kInhomogeneousTol) {
    throw NumericalError("xi.invalid", "inhomogeneous term lost Hermiticity or tracelessness (" +
                                           std::to_string(herm) + ", " + std::to_string(tr) + ")");
  }
  return {0.5 * (xi + xi.adjoint()), time};
}

DensityOperator evolve_direct(const UnitaryOperator& u, const DensityOperator& rho_ab,
                              std::size_t n, std::size_t m) {
  check_joint_dims(u.dim(), n, m, "evolve_direct");
  check_joint_dims(rho_ab.dim(), n, m, "evolve_direct");
  const ComplexMatrix& um = u.matrix();
  return DensityOperator(partial_trace(um * rho_ab.matrix() * um.adjoint(), {n, m}, Keep::first));
}

ReducedEvolution evolve_reduced(const UnitaryOperator& u, const DensityOperator& rho_ab,
                                std::size_t n, std::size_t m) {
  check_joint_dims(u.dim(), n, m, "evolve_reduced");
  check_joint_dims(rho_ab.dim(), n, m, "evolve_reduced");
  const GeneratorBasis ba = GeneratorBasis::su(n);
  const GeneratorBasis bb = GeneratorBasis::su(m);

  const BlochDecomposition d = decompose(rho_ab, ba, bb);
  CorrelationResidual corr = residual(d);
  DensityOperator rho_a = partial_trace(rho_ab, {n, m}, Keep::first);
  DensityOperator rho_b = partial_trace(rho_ab, {n, m}, Keep::second);

  const KrausSet k = kraus_from_unitary(u, rho_b, n, m);
  ComplexMatrix kraus_part = apply_kraus(k, rho_a.matrix());
  InhomogeneousTerm xi = inhomogeneous_term(u, corr, ba, bb);
  DensityOperator out(kraus_part + xi.xi);
  return {std::move(out), std::move(kraus_part), std::move(xi),
          std::move(rho_a), std::move(rho_b), std::move(corr)};
}

ComplexMatrix choi_matrix(const KrausSet& k) {
  const auto n = static_cast<Eigen::Index>(k.system_dim);
  ComplexMatrix choi = ComplexMatrix::Zero(n * n, n * n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b) {
      ComplexMatrix unit = ComplexMatrix::Zero(n, n);
      unit(a, b) = 1.0;
      choi.block(a * n, b * n, n, n) = apply_kraus(k, unit);
    }
  return choi;
}

double choi_min_eigenvalue(const KrausSet& k) {
  const ComplexMatrix c = choi_matrix(k);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (c + c.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

bool is_completely_positive(const KrausSet& k, double tol) {
  return choi_min_eigenvalue(k) >= -tol;
}

}  // namespace corrdyn
