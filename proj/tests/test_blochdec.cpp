#include <gtest/gtest.h>

#include <cmath>

#include "corrdyn/blochdec.hpp"
#include "corrdyn/errors.hpp"
#include "corrdyn/random.hpp"
#include "oracle.hpp"

using namespace corrdyn;

namespace {

DensityOperator phi_plus() {
  ComplexVector psi = ComplexVector::Zero(4);
  psi[0] = psi[3] = 1.0;
  return DensityOperator::pure(psi);
}

// Coefficients straight from the defining traces, on the oracle's arrays.
struct OracleCoefficients {
  std::vector<double> alpha, beta;
  std::vector<std::vector<double>> gamma;
};

OracleCoefficients oracle_decompose(const DensityOperator& rho, const GeneratorBasis& ba,
                                    const GeneratorBasis& bb) {
  const std::size_t n = ba.dim(), m = bb.dim();
  const oracle::Mat r = oracle::from(rho.matrix());
  OracleCoefficients c;
  for (std::size_t i = 0; i < ba.size(); ++i)
    c.alpha.push_back(0.5 * n *
                      oracle::trace(oracle::mul(r, oracle::kron(oracle::from(ba[i]), oracle::identity(m)))).real());
  for (std::size_t j = 0; j < bb.size(); ++j)
    c.beta.push_back(0.5 * m *
                     oracle::trace(oracle::mul(r, oracle::kron(oracle::identity(n), oracle::from(bb[j])))).real());
  for (std::size_t i = 0; i < ba.size(); ++i) {
    c.gamma.emplace_back();
    for (std::size_t j = 0; j < bb.size(); ++j)
      c.gamma.back().push_back(
          0.25 * n * m *
          oracle::trace(oracle::mul(r, oracle::kron(oracle::from(ba[i]), oracle::from(bb[j])))).real());
  }
  return c;
}

}  // namespace

TEST(GeneratorBasis, SU2IsPauli) {
  const GeneratorBasis b = GeneratorBasis::su(2);
  ASSERT_EQ(b.size(), 3u);
  EXPECT_EQ(max_abs(b[0] - pauli::x()), 0.0);
  EXPECT_EQ(max_abs(b[1] - pauli::y()), 0.0);
  EXPECT_EQ(max_abs(b[2] - pauli::z()), 0.0);
}

TEST(GeneratorBasis, HermitianTracelessOrthogonal) {
  for (std::size_t n : {2, 3, 4, 5}) {
    const GeneratorBasis b = GeneratorBasis::su(n);
    ASSERT_EQ(b.size(), n * n - 1);
    for (std::size_t i = 0; i < b.size(); ++i) {
      EXPECT_LE(hermiticity_error(b[i]), 1e-14);
      EXPECT_LE(std::abs(b[i].trace()), 1e-14);
      // Pairwise trace table on the oracle's arrays.
      for (std::size_t j = 0; j < b.size(); ++j) {
        const oracle::cd t = oracle::trace(oracle::mul(oracle::from(b[i]), oracle::from(b[j])));
        EXPECT_NEAR(std::abs(t - oracle::cd(i == j ? 2.0 : 0.0)), 0.0, 1e-12) << n << ' ' << i << ' ' << j;
      }
    }
  }
}

TEST(GeneratorBasis, SU3Ordering) {
  const GeneratorBasis b = GeneratorBasis::su(3);
  // Symmetric (0,1), (0,2), (1,2), then antisymmetric, then diagonal.
  EXPECT_EQ(b[0](0, 1), Complex(1.0));
  EXPECT_EQ(b[1](0, 2), Complex(1.0));
  EXPECT_EQ(b[2](1, 2), Complex(1.0));
  EXPECT_EQ(b[3](0, 1), Complex(0.0, -1.0));
  EXPECT_EQ(b[5](1, 2), Complex(0.0, -1.0));
  EXPECT_NEAR(b[6](0, 0).real(), 1.0, 1e-15);
  EXPECT_NEAR(b[6](1, 1).real(), -1.0, 1e-15);
  EXPECT_NEAR(b[7](2, 2).real(), -2.0 / std::sqrt(3.0), 1e-15);
}

TEST(GeneratorBasis, RejectsDimensionOne) {
  EXPECT_THROW(GeneratorBasis::su(1), InvalidDimension);
  EXPECT_THROW(GeneratorBasis::su(0), InvalidDimension);
}

TEST(Decompose, MaximallyMixedIsZero) {
  const BlochDecomposition d = decompose(DensityOperator::maximally_mixed(4), 2, 2);
  EXPECT_LE(d.alpha.cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LE(d.beta.cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LE(d.gamma.cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Decompose, BellState) {
  const BlochDecomposition d = decompose(phi_plus(), 2, 2);
  RealMatrix want = RealMatrix::Zero(3, 3);
  want.diagonal() << 1, -1, 1;
  EXPECT_LE(d.alpha.cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LE(d.beta.cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LE((d.gamma - want).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Decompose, AgreesWithDirectTraces) {
  Rng rng(41);
  for (auto [n, m] : {std::pair<std::size_t, std::size_t>{2, 2}, {2, 3}, {3, 2}, {3, 3}}) {
    const GeneratorBasis ba = GeneratorBasis::su(n), bb = GeneratorBasis::su(m);
    const DensityOperator rho = random_density(n * m, rng);
    const BlochDecomposition d = decompose(rho, ba, bb);
    const OracleCoefficients c = oracle_decompose(rho, ba, bb);
    for (std::size_t i = 0; i < ba.size(); ++i) EXPECT_NEAR(d.alpha[i], c.alpha[i], 1e-14);
    for (std::size_t j = 0; j < bb.size(); ++j) EXPECT_NEAR(d.beta[j], c.beta[j], 1e-14);
    for (std::size_t i = 0; i < ba.size(); ++i)
      for (std::size_t j = 0; j < bb.size(); ++j) EXPECT_NEAR(d.gamma(i, j), c.gamma[i][j], 1e-14);
  }
}

TEST(Decompose, DimensionMismatch) {
  EXPECT_THROW(decompose(DensityOperator::maximally_mixed(4), 2, 3), DimensionMismatch);
}

TEST(Decompose, RoundTripOnRandomStates) {
  Rng rng(43);
  for (int k = 0; k < 1000; ++k) {
    const std::size_t n = 2 + k % 2, m = 2 + (k / 2) % 2;
    const DensityOperator rho = random_density(n * m, rng);
    const BlochDecomposition d = decompose(rho, n, m);
    ASSERT_LE(max_abs(compose(d).matrix() - rho.matrix()), 1e-12) << k;
    const CorrelationResidual r = residual(d);
    ASSERT_LE((n * m * r.gamma_prime + d.alpha * d.beta.transpose() - d.gamma).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Residual, ProductStatesHaveNone) {
  Rng rng(47);
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = 2 + k % 2, m = 2 + (k / 2) % 2;
    const DensityOperator rho(kron(random_density(n, rng).matrix(), random_density(m, rng).matrix()));
    const BlochDecomposition d = decompose(rho, n, m);
    EXPECT_LE(residual(d).gamma_prime.cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LE((d.gamma - d.alpha * d.beta.transpose()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Residual, BellState) {
  RealMatrix want = RealMatrix::Zero(3, 3);
  want.diagonal() << 0.25, -0.25, 0.25;
  EXPECT_LE((residual(decompose(phi_plus(), 2, 2)).gamma_prime - want).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Residual, ClassicalPairEqualWeights) {
  ComplexMatrix rho = ComplexMatrix::Zero(4, 4);
  rho(0, 0) = rho(3, 3) = 0.5;
  const RealMatrix g = residual(decompose(DensityOperator(rho), 2, 2)).gamma_prime;
  EXPECT_NEAR(g(2, 2), 0.25, 1e-15);
  EXPECT_NEAR(g(0, 0), 0.0, 1e-15);
  EXPECT_NEAR(g(1, 1), 0.0, 1e-15);
}

TEST(Residual, CorrelationOperatorIsJointMinusProduct) {
  Rng rng(53);
  const DensityOperator rho = random_density(6, rng);
  const GeneratorBasis ba = GeneratorBasis::su(2), bb = GeneratorBasis::su(3);
  const ComplexMatrix c = correlation_operator(residual(decompose(rho, ba, bb)), ba, bb);
  const ComplexMatrix prod = kron(partial_trace(rho.matrix(), {2, 3}, Keep::first),
                                  partial_trace(rho.matrix(), {2, 3}, Keep::second));
  EXPECT_LE(max_abs(c - (rho.matrix() - prod)), 1e-14);
}

TEST(Compose, ZeroCoefficientsGiveMaximallyMixed) {
  BlochDecomposition d{2, 3, RealVector::Zero(3), RealVector::Zero(8), RealMatrix::Zero(3, 8)};
  EXPECT_LE(max_abs(compose(d).matrix() - ComplexMatrix::Identity(6, 6) / 6.0), 1e-15);
}

TEST(Compose, RejectsOutsidePhysicalSet) {
  RealVector alpha = RealVector::Zero(3);
  alpha[2] = 1.0;
  CorrelationResidual r{RealMatrix::Zero(3, 3)};
  r.gamma_prime(2, 2) = 0.1;
  const BlochDecomposition d = from_residual(2, 2, alpha, RealVector::Zero(3), r);
  EXPECT_NEAR(d.gamma(2, 2), 0.4, 1e-15);
  try {
    compose(d);
    FAIL();
  } catch (const UnphysicalState& e) {
    // Diagonal spectrum (1 +- 1 +- 0.4) / 4.
    EXPECT_NEAR(e.min_eigenvalue(), -0.1, 1e-14);
  }
}

TEST(Compose, AcceptedSetIsConvex) {
  Rng rng(59);
  for (int k = 0; k < 100; ++k) {
    const DensityOperator a = random_density(4, rng), b = random_density(4, rng);
    const BlochDecomposition da = decompose(a, 2, 2), db = decompose(b, 2, 2);
    for (int s = 0; s <= 10; ++s) {
      const double w = s / 10.0;
      BlochDecomposition mix{2, 2, w * da.alpha + (1 - w) * db.alpha, w * da.beta + (1 - w) * db.beta,
                             w * da.gamma + (1 - w) * db.gamma};
      EXPECT_NO_THROW(compose(mix));
    }
  }
}

TEST(BlochVector, QubitPlusState) {
  ComplexVector plus = ComplexVector::Ones(2);
  const RealVector a = bloch_vector(DensityOperator::pure(plus).matrix(), GeneratorBasis::su(2));
  EXPECT_NEAR(a[0], 1.0, 1e-15);
  EXPECT_NEAR(a[1], 0.0, 1e-15);
  EXPECT_NEAR(a[2], 0.0, 1e-15);
}

TEST(PureStateConstraint, Examples) {
  const DensityOperator zero = DensityOperator::basis(2, 0);
  CorrelationResidual none{RealMatrix::Zero(3, 3)};
  EXPECT_EQ(check_pure_state_constraint(zero, none), PureStateCheck::consistent);

  CorrelationResidual zz = none;
  zz.gamma_prime(2, 2) = 0.1;
  EXPECT_EQ(check_pure_state_constraint(zero, zz), PureStateCheck::violation);

  CorrelationResidual bell = none;
  bell.gamma_prime.diagonal() << 0.25, -0.25, 0.25;
  EXPECT_EQ(check_pure_state_constraint(DensityOperator::maximally_mixed(2), bell),
            PureStateCheck::consistent);
}

TEST(PureStateConstraint, ComposeRejectsPureMarginalWithCorrelations) {
  Rng rng(61);
  std::normal_distribution<double> g;
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 2 + k % 2, m = 2 + (k / 2) % 2;
    const RealVector alpha = bloch_vector(random_pure_state(n, rng).matrix(), GeneratorBasis::su(n));
    const RealVector beta = bloch_vector(random_density(m, rng).matrix(), GeneratorBasis::su(m));
    CorrelationResidual r{RealMatrix::Zero(n * n - 1, m * m - 1)};
    for (Eigen::Index i = 0; i < r.gamma_prime.size(); ++i) r.gamma_prime.data()[i] = g(rng);
    r.gamma_prime *= 1e-4 / r.gamma_prime.norm();
    EXPECT_THROW(compose(from_residual(n, m, alpha, beta, r)), UnphysicalState) << k;
  }
}
