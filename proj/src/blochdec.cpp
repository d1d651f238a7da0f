#include "corrdyn/blochdec.hpp"

#include <cmath>
#include <string>

namespace corrdyn {

GeneratorBasis GeneratorBasis::su(std::size_t n) {
  if (n < 2) throw InvalidDimension("SU(N) generators need N >= 2, got " + std::to_string(n));
  const auto d = static_cast<Eigen::Index>(n);
  GeneratorBasis basis;
  basis.dim_ = n;
  basis.generators_.reserve(n * n - 1);

  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index k = j + 1; k < d; ++k) {
      ComplexMatrix g = ComplexMatrix::Zero(d, d);
      g(j, k) = 1.0;
      g(k, j) = 1.0;
      basis.generators_.push_back(std::move(g));
    }
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index k = j + 1; k < d; ++k) {
      ComplexMatrix g = ComplexMatrix::Zero(d, d);
      g(j, k) = Complex(0.0, -1.0);
      g(k, j) = Complex(0.0, 1.0);
      basis.generators_.push_back(std::move(g));
    }
  for (Eigen::Index l = 1; l < d; ++l) {
    const double scale = std::sqrt(2.0 / static_cast<double>(l * (l + 1)));
    ComplexMatrix g = ComplexMatrix::Zero(d, d);
    for (Eigen::Index j = 0; j < l; ++j) g(j, j) = scale;
    g(l, l) = -static_cast<double>(l) * scale;
    basis.generators_.push_back(std::move(g));
  }
  return basis;
}

RealVector GeneratorBasis::coefficients(const ComplexMatrix& m) const {
  if (static_cast<std::size_t>(m.rows()) != dim_ || m.rows() != m.cols())
    throw DimensionMismatch("GeneratorBasis::coefficients: dimension mismatch");
  RealVector c(static_cast<Eigen::Index>(size()));
  for (std::size_t i = 0; i < size(); ++i)
    c[static_cast<Eigen::Index>(i)] = 0.5 * (m * generators_[i]).trace().real();
  return c;
}

BlochDecomposition decompose(const DensityOperator& rho, std::size_t n, std::size_t m) {
  return decompose(rho, GeneratorBasis::su(n), GeneratorBasis::su(m));
}

BlochDecomposition decompose(const DensityOperator& rho, const GeneratorBasis& basis_a,
                             const GeneratorBasis& basis_b) {
  const std::size_t n = basis_a.dim();
  const std::size_t m = basis_b.dim();
  if (rho.dim() != n * m) {
    throw DimensionMismatch("decompose: state dimension " + std::to_string(rho.dim()) +
                            " != " + std::to_string(n) + "*" + std::to_string(m));
  }
  const double nd = static_cast<double>(n);
  const double md = static_cast<double>(m);
  const auto ka = static_cast<Eigen::Index>(basis_a.size());
  const auto kb = static_cast<Eigen::Index>(basis_b.size());
  const ComplexMatrix& r = rho.matrix();

  // Local coefficients only need the marginals.
  const ComplexMatrix rho_a = partial_trace(r, {n, m}, Keep::first);
  const ComplexMatrix rho_b = partial_trace(r, {n, m}, Keep::second);

  BlochDecomposition d{n, m, RealVector(ka), RealVector(kb), RealMatrix(ka, kb)};
  for (Eigen::Index i = 0; i < ka; ++i)
    d.alpha[i] = 0.5 * nd * (rho_a * basis_a[static_cast<std::size_t>(i)]).trace().real();
  for (Eigen::Index j = 0; j < kb; ++j)
    d.beta[j] = 0.5 * md * (rho_b * basis_b[static_cast<std::size_t>(j)]).trace().real();

  // gamma_ij = (NM/4) tr(rho s_i (x) t_j); contract the environment first.
  const auto ma = static_cast<Eigen::Index>(m);
  for (Eigen::Index j = 0; j < kb; ++j) {
    const ComplexMatrix& tau = basis_b[static_cast<std::size_t>(j)];
    // X(a, b) = sum_{mu,nu} rho(a mu, b nu) tau(nu, mu) = tr_B(rho (I (x) tau)).
    ComplexMatrix x = ComplexMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (Eigen::Index a = 0; a < x.rows(); ++a)
      for (Eigen::Index b = 0; b < x.cols(); ++b)
        x(a, b) = (r.block(a * ma, b * ma, ma, ma) * tau).trace();
    for (Eigen::Index i = 0; i < ka; ++i)
      d.gamma(i, j) = 0.25 * nd * md * (x * basis_a[static_cast<std::size_t>(i)]).trace().real();
  }
  return d;
}

CorrelationResidual residual(const BlochDecomposition& d) {
  const double nm = static_cast<double>(d.n * d.m);
  return {(d.gamma - d.alpha * d.beta.transpose()) / nm};
}

BlochDecomposition from_residual(std::size_t n, std::size_t m, const RealVector& alpha,
                                 const RealVector& beta, const CorrelationResidual& r) {
  const auto ka = static_cast<Eigen::Index>(n * n - 1);
  const auto kb = static_cast<Eigen::Index>(m * m - 1);
  if (alpha.size() != ka || beta.size() != kb || r.gamma_prime.rows() != ka ||
      r.gamma_prime.cols() != kb) {
    throw DimensionMismatch("from_residual: coefficient shapes do not match (N, M) = (" +
                            std::to_string(n) + ", " + std::to_string(m) + ")");
  }
  const double nm = static_cast<double>(n * m);
  return {n, m, alpha, beta, nm * r.gamma_prime + alpha * beta.transpose()};
}

ComplexMatrix compose_matrix(const BlochDecomposition& d) {
  const GeneratorBasis ba = GeneratorBasis::su(d.n);
  const GeneratorBasis bb = GeneratorBasis::su(d.m);
  if (d.alpha.size() != static_cast<Eigen::Index>(ba.size()) ||
      d.beta.size() != static_cast<Eigen::Index>(bb.size()) ||
      d.gamma.rows() != d.alpha.size() || d.gamma.cols() != d.beta.size()) {
    throw DimensionMismatch("compose: coefficient shapes do not match (N, M)");
  }
  const auto n = static_cast<Eigen::Index>(d.n);
  const auto m = static_cast<Eigen::Index>(d.m);

  ComplexMatrix local_a = ComplexMatrix::Identity(n, n);
  for (std::size_t i = 0; i < ba.size(); ++i) local_a += d.alpha[static_cast<Eigen::Index>(i)] * ba[i];
  ComplexMatrix local_b = ComplexMatrix::Zero(m, m);
  for (std::size_t j = 0; j < bb.size(); ++j) local_b += d.beta[static_cast<Eigen::Index>(j)] * bb[j];

  ComplexMatrix out = kron(local_a, ComplexMatrix::Identity(m, m)) +
                      kron(ComplexMatrix::Identity(n, n), local_b);
  for (std::size_t i = 0; i < ba.size(); ++i) {
    ComplexMatrix row = ComplexMatrix::Zero(m, m);
    for (std::size_t j = 0; j < bb.size(); ++j)
      row += d.gamma(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * bb[j];
    out += kron(ba[i], row);
  }
  return out / static_cast<double>(d.n * d.m);
}

DensityOperator compose(const BlochDecomposition& d) { return DensityOperator(compose_matrix(d)); }

ComplexMatrix correlation_operator(const CorrelationResidual& r, const GeneratorBasis& basis_a,
                                   const GeneratorBasis& basis_b) {
  if (r.gamma_prime.rows() != static_cast<Eigen::Index>(basis_a.size()) ||
      r.gamma_prime.cols() != static_cast<Eigen::Index>(basis_b.size())) {
    throw DimensionMismatch("correlation_operator: residual shape does not match the bases");
  }
  const auto m = static_cast<Eigen::Index>(basis_b.dim());
  ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(basis_a.dim()) * m,
                                          static_cast<Eigen::Index>(basis_a.dim()) * m);
  for (std::size_t i = 0; i < basis_a.size(); ++i) {
    ComplexMatrix row = ComplexMatrix::Zero(m, m);
    for (std::size_t j = 0; j < basis_b.size(); ++j)
      row += r.gamma_prime(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * basis_b[j];
    out += kron(basis_a[i], row);
  }
  return out;
}

RealVector bloch_vector(const ComplexMatrix& rho, const GeneratorBasis& basis) {
  return static_cast<double>(basis.dim()) * basis.coefficients(rho);
}

PureStateCheck check_pure_state_constraint(const DensityOperator& rho_a,
                                           const CorrelationResidual& r) {
  const bool pure = rho_a.purity() >= 1.0 - kPurityTol;
  const double largest = r.gamma_prime.size() == 0 ? 0.0 : r.gamma_prime.cwiseAbs().maxCoeff();
  return (pure && largest > kResidualTol) ? PureStateCheck::violation : PureStateCheck::consistent;
}

}  // namespace corrdyn
