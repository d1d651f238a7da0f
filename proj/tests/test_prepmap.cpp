#include <gtest/gtest.h>

#include <cmath>

#include "corrdyn/blochdec.hpp"
#include "corrdyn/corrchan.hpp"
#include "corrdyn/errors.hpp"
#include "corrdyn/prepmap.hpp"
#include "corrdyn/random.hpp"
#include "oracle.hpp"

using namespace corrdyn;

namespace {

UnitaryOperator cnot() {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
  return UnitaryOperator(m);
}

DensityOperator ket(double re0, double re1) {
  ComplexVector v(2);
  v << re0, re1;
  return DensityOperator::pure(v);
}

PreparationMap bell_correlated() {
  CorrelationResidual r{RealMatrix::Zero(3, 3)};
  r.gamma_prime.diagonal() << 0.25, -0.25, 0.25;
  return PreparationMap::fixed_correlation(2, 2, RealVector::Zero(3), r);
}

PreparationMap weakly_correlated() {
  CorrelationResidual r{RealMatrix::Zero(3, 3)};
  r.gamma_prime.diagonal() << 0.02, -0.02, 0.02;
  RealVector beta = RealVector::Zero(3);
  beta[2] = 0.2;
  return PreparationMap::fixed_correlation(2, 2, beta, r);
}

}  // namespace

TEST(Prep, ProductOnMaximallyMixed) {
  const PreparationMap p = PreparationMap::product(2, DensityOperator::basis(2, 0));
  const ComplexMatrix got = prep_apply(p, DensityOperator::maximally_mixed(2)).matrix();
  EXPECT_LE(max_abs(got - kron(0.5 * pauli::identity(), DensityOperator::basis(2, 0).matrix())), 1e-15);
}

TEST(Prep, CloneOnPlus) {
  const DensityOperator plus = ket(1, 1);
  EXPECT_LE(max_abs(PreparationMap::clone(2).apply(plus).matrix() - kron(plus.matrix(), plus.matrix())), 1e-15);
}

TEST(Prep, TransposeClone) {
  Rng rng(191);
  const DensityOperator rho = random_density(3, rng);
  EXPECT_LE(max_abs(PreparationMap::transpose_clone(3).apply(rho).matrix() -
                    kron(rho.matrix(), rho.matrix().transpose())),
            1e-15);
}

TEST(Prep, FixedCorrelationRejectsPureInput) {
  try {
    bell_correlated().apply(DensityOperator::basis(2, 0));
    FAIL();
  } catch (const OutsideDomain& e) {
    EXPECT_LT(e.min_eigenvalue(), -1e-10);
  }
}

TEST(Prep, FixedCorrelationAcceptsCentre) {
  const DensityOperator joint = bell_correlated().apply(DensityOperator::maximally_mixed(2));
  ComplexVector phi = ComplexVector::Zero(4);
  phi[0] = phi[3] = 1.0 / std::sqrt(2.0);
  EXPECT_LE(max_abs(joint.matrix() - phi * phi.adjoint()), 1e-15);
}

TEST(Prep, DimensionMismatch) {
  EXPECT_THROW(PreparationMap::clone(2).apply(DensityOperator::maximally_mixed(3)), DimensionMismatch);
}

TEST(Prep, ConsistencyForAllKinds) {
  Rng rng(193);
  const std::vector<PreparationMap> maps = {PreparationMap::product(2, random_density(3, rng)),
                                            PreparationMap::clone(2), PreparationMap::transpose_clone(2),
                                            weakly_correlated()};
  for (const auto& p : maps) {
    std::size_t accepted = 0;
    for (int k = 0; k < 1000; ++k) {
      const DensityOperator rho = random_density(2, rng);
      try {
        const DensityOperator joint = p.apply(rho);
        ++accepted;
        ASSERT_LE(max_abs(partial_trace(joint.matrix(), {p.system_dim(), p.env_dim()}, Keep::first) - rho.matrix()),
                  1e-12);
      } catch (const OutsideDomain&) {
      }
    }
    EXPECT_GT(accepted, 100u) << to_string(p.kind());
  }
}

TEST(Prep, FixedCorrelationDomainIsConvex) {
  Rng rng(197);
  const PreparationMap p = weakly_correlated();
  std::vector<DensityOperator> inside;
  while (inside.size() < 20) {
    const DensityOperator rho = random_density(2, rng);
    try {
      p.apply(rho);
      inside.push_back(rho);
    } catch (const OutsideDomain&) {
    }
  }
  for (std::size_t i = 0; i + 1 < inside.size(); ++i)
    for (int s = 1; s < 10; ++s) {
      const double w = s / 10.0;
      const DensityOperator mix(w * inside[i].matrix() + (1 - w) * inside[i + 1].matrix());
      EXPECT_NO_THROW(p.apply(mix));
    }
}

TEST(Induced, ProductIdentityIsIdentity) {
  Rng rng(199);
  const InducedEvolution e{PreparationMap::product(2, random_density(2, rng)), UnitaryOperator::identity(4)};
  const DensityOperator rho = random_density(2, rng);
  EXPECT_LE(max_abs(induced_apply(e, rho).matrix() - rho.matrix()), 1e-15);
}

TEST(Induced, ProductSwapIsConstant) {
  Rng rng(211);
  const DensityOperator rb = random_density(3, rng);
  const InducedEvolution e{PreparationMap::product(3, rb), swap_unitary(3)};
  for (int k = 0; k < 5; ++k) {
    const DensityOperator rho = random_density(3, rng);
    const oracle::Mat want = oracle::reduced_evolution(
        oracle::from(swap_unitary(3).matrix()), oracle::kron(oracle::from(rho.matrix()), oracle::from(rb.matrix())), 3, 3);
    EXPECT_LE(oracle::max_abs_diff(want, e.apply(rho).matrix()), 1e-14);
  }
}

TEST(Induced, CloneIdentityIsIdentity) {
  Rng rng(223);
  const InducedEvolution e{PreparationMap::clone(3), UnitaryOperator::identity(9)};
  const DensityOperator rho = random_density(3, rng);
  EXPECT_LE(max_abs(e.apply(rho).matrix() - rho.matrix()), 1e-15);
}

TEST(Induced, ProductMatchesKrausAndIsValid) {
  Rng rng(227);
  for (int k = 0; k < 20; ++k) {
    const DensityOperator rb = random_density(2, rng);
    const UnitaryOperator u = random_unitary(6, rng);
    const InducedEvolution e{PreparationMap::product(3, rb), u};
    const KrausSet kr = kraus_from_unitary(u, rb, 3, 2);
    const DensityOperator rho = random_density(3, rng);
    EXPECT_LE(max_abs(e.apply(rho).matrix() - apply_kraus(kr, rho).matrix()), 1e-10);
  }
}

TEST(Induced, OutputsAreStatesForEveryKind) {
  Rng rng(229);
  const UnitaryOperator u = random_unitary(4, rng);
  for (const auto& p : {PreparationMap::product(2, random_density(2, rng)), PreparationMap::clone(2),
                        PreparationMap::transpose_clone(2), weakly_correlated()}) {
    for (int k = 0; k < 50; ++k) {
      const DensityOperator rho = random_density(2, rng);
      try {
        const DensityOperator out = induced_apply(InducedEvolution{p, u}, rho);
        EXPECT_GE(out.min_eigenvalue(), -1e-10);
      } catch (const OutsideDomain&) {
      }
    }
  }
}

TEST(Linearity, ProductIsLinear) {
  Rng rng(233);
  const InducedEvolution e{PreparationMap::product(2, random_density(3, rng)), random_unitary(6, rng)};
  const LinearityResult r = linearity_test(e, 200, 3, 1e-10, rng);
  EXPECT_TRUE(r.linear);
  EXPECT_FALSE(r.witness.has_value());
  EXPECT_EQ(r.mixtures_tested, 600u);
}

TEST(Linearity, CloneWithIdentityIsLinear) {
  Rng rng(239);
  const LinearityResult r =
      linearity_test(InducedEvolution{PreparationMap::clone(2), UnitaryOperator::identity(4)}, 200, 3, 1e-10, rng);
  EXPECT_TRUE(r.linear);
}

TEST(Linearity, CloneWithCnotHasPlusMinusWitness) {
  const InducedEvolution e{PreparationMap::clone(2), cnot()};
  const DensityOperator p = ket(1, 1), m = ket(1, -1);
  const LinearityWitness w = linearity_deviation(e, {p, m}, {0.5, 0.5});
  EXPECT_LE(max_abs(w.output_of_mixture - 0.5 * pauli::identity()), 1e-15);
  EXPECT_LE(max_abs(w.mixture_of_outputs - p.matrix()), 1e-15);
  const GeneratorBasis b = GeneratorBasis::su(2);
  const RealVector gap = bloch_vector(w.mixture_of_outputs, b) - bloch_vector(w.output_of_mixture, b);
  EXPECT_NEAR(gap[0], 1.0, 1e-14);
  EXPECT_NEAR(w.deviation, 0.5, 1e-15);
}

TEST(Linearity, CloneWithCnotFailsRandomTest) {
  Rng rng(241);
  const LinearityResult r = linearity_test(InducedEvolution{PreparationMap::clone(2), cnot()}, 200, 3, 1e-10, rng);
  EXPECT_FALSE(r.linear);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_GT(r.witness->deviation, 1e-10);
}

TEST(Linearity, RejectsTooFewSamples) {
  Rng rng(1);
  EXPECT_THROW(linearity_test(InducedEvolution{PreparationMap::clone(2), cnot()}, 1, 3, 1e-10, rng), InputError);
}

TEST(ConstantEnvironment, Product) {
  Rng rng(251);
  const DensityOperator rb = random_density(3, rng);
  const ConstantEnvironmentResult r = constant_environment_test(PreparationMap::product(2, rb), 50, 1e-10, rng);
  EXPECT_TRUE(r.constant);
  ASSERT_TRUE(r.env_state.has_value());
  EXPECT_LE(max_abs(*r.env_state - rb.matrix()), 1e-14);
}

TEST(ConstantEnvironment, CloneVaries) {
  Rng rng(257);
  const ConstantEnvironmentResult r = constant_environment_test(PreparationMap::clone(2), 50, 1e-10, rng);
  EXPECT_FALSE(r.constant);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_GT(r.witness->deviation, 1e-10);
}

TEST(ConstantEnvironment, FixedCorrelationKeepsBeta) {
  Rng rng(263);
  const ConstantEnvironmentResult r = constant_environment_test(weakly_correlated(), 50, 1e-10, rng);
  EXPECT_TRUE(r.constant);
  ASSERT_TRUE(r.env_state.has_value());
  const ComplexMatrix want = 0.5 * (pauli::identity() + 0.2 * pauli::z());
  EXPECT_LE(max_abs(*r.env_state - want), 1e-14);
}

TEST(Swap, UnitaryAndSelfInverse) {
  for (std::size_t n : {2, 3, 4}) {
    const ComplexMatrix s = swap_unitary(n).matrix();
    const auto id = ComplexMatrix::Identity(s.rows(), s.cols());
    EXPECT_EQ(max_abs(s * s - id), 0.0);
    EXPECT_EQ(max_abs(s.adjoint() * s - id), 0.0);
  }
}

TEST(Swap, ConstructionHitsTarget) {
  Rng rng(269);
  const DensityOperator target = DensityOperator::basis(2, 1);
  const InducedEvolution e = swap_construction(target);
  EXPECT_EQ(e.prep.kind(), PreparationMap::Kind::product);
  for (const DensityOperator& in : {DensityOperator::basis(2, 0), ket(1, 1), DensityOperator::maximally_mixed(2),
                                    random_density(2, rng)})
    EXPECT_LE(max_abs(e.apply(in).matrix() - target.matrix()), 1e-12);
  const InducedEvolution centre = swap_construction(DensityOperator::maximally_mixed(3));
  EXPECT_LE(max_abs(centre.apply(random_density(3, rng)).matrix() - ComplexMatrix::Identity(3, 3) / 3.0), 1e-12);
}

TEST(Swap, TargetEqualToProbe) {
  Rng rng(271);
  const DensityOperator rho = random_density(2, rng);
  EXPECT_LE(max_abs(swap_construction(rho).apply(rho).matrix() - rho.matrix()), 1e-12);
}
