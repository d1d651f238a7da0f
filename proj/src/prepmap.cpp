#include "corrdyn/prepmap.hpp"

#include <string>

namespace corrdyn {

PreparationMap PreparationMap::product(std::size_t n, const DensityOperator& rho_b) {
  if (n < 1) throw InvalidDimension("product preparation needs N >= 1");
  PreparationMap p(Kind::product, n, rho_b.dim());
  p.env_state_ = rho_b;
  return p;
}

PreparationMap PreparationMap::clone(std::size_t n) {
  if (n < 1) throw InvalidDimension("clone preparation needs N >= 1");
  return PreparationMap(Kind::clone, n, n);
}

PreparationMap PreparationMap::transpose_clone(std::size_t n) {
  if (n < 1) throw InvalidDimension("transpose-clone preparation needs N >= 1");
  return PreparationMap(Kind::transpose_clone, n, n);
}

PreparationMap PreparationMap::fixed_correlation(std::size_t n, std::size_t m,
                                                 const RealVector& beta,
                                                 const CorrelationResidual& r) {
  if (n < 2 || m < 2) throw InvalidDimension("fixed-correlation preparation needs N, M >= 2");
  const auto ka = static_cast<Eigen::Index>(n * n - 1);
  const auto kb = static_cast<Eigen::Index>(m * m - 1);
  if (beta.size() != kb || r.gamma_prime.rows() != ka || r.gamma_prime.cols() != kb)
    throw DimensionMismatch("fixed-correlation preparation: coefficient shapes do not match");
  PreparationMap p(Kind::fixed_correlation, n, m);
  p.beta_ = beta;
  p.residual_ = r;
  return p;
}

std::string to_string(PreparationMap::Kind kind) {
  switch (kind) {
    case PreparationMap::Kind::product: return "product";
    case PreparationMap::Kind::clone: return "clone";
    case PreparationMap::Kind::transpose_clone: return "transpose-clone";
    case PreparationMap::Kind::fixed_correlation: return "fixed-correlation";
  }
  return "unknown";
}

DensityOperator PreparationMap::apply(const DensityOperator& rho_a) const {
  if (rho_a.dim() != n_)
    throw DimensionMismatch("preparation map expects a " + std::to_string(n_) +
                            "-dimensional input, got " + std::to_string(rho_a.dim()));
  switch (kind_) {
    case Kind::product:
      return DensityOperator(kron(rho_a.matrix(), env_state_->matrix()));
    case Kind::clone:
      return DensityOperator(kron(rho_a.matrix(), rho_a.matrix()));
    case Kind::transpose_clone:
      return DensityOperator(kron(rho_a.matrix(), rho_a.matrix().transpose()));
    case Kind::fixed_correlation: {
      const RealVector alpha = bloch_vector(rho_a.matrix(), GeneratorBasis::su(n_));
      const ComplexMatrix joint = compose_matrix(from_residual(n_, m_, alpha, beta_, residual_));
      try {
        return DensityOperator(joint);
      } catch (const UnphysicalState& e) {
        throw OutsideDomain(e.min_eigenvalue(),
                            "input lies outside the domain of the fixed-correlation preparation (" +
                                std::string(e.what()) + ")");
      }
    }
  }
  throw InputError("prep.kind", "unknown preparation kind");
}

DensityOperator prep_apply(const PreparationMap& p, const DensityOperator& rho_a) {
  return p.apply(rho_a);
}

DensityOperator InducedEvolution::apply(const DensityOperator& rho_a) const {
  const DensityOperator joint = prep.apply(rho_a);
  if (unitary.dim() != joint.dim())
    throw DimensionMismatch("induced evolution: unitary does not act on the prepared state");
  const ComplexMatrix& u = unitary.matrix();
  return DensityOperator(partial_trace(u * joint.matrix() * u.adjoint(),
                                       {prep.system_dim(), prep.env_dim()}, Keep::first));
}

DensityOperator induced_apply(const InducedEvolution& e, const DensityOperator& rho_a) {
  return e.apply(rho_a);
}

LinearityWitness linearity_deviation(const InducedEvolution& e,
                                     const std::vector<DensityOperator>& inputs,
                                     const std::vector<double>& weights) {
  if (inputs.empty() || inputs.size() != weights.size())
    throw InputError("linearity.inputs", "need matching, non-empty inputs and weights");
  const auto n = static_cast<Eigen::Index>(e.prep.system_dim());
  ComplexMatrix mixed_input = ComplexMatrix::Zero(n, n);
  ComplexMatrix mixed_output = ComplexMatrix::Zero(n, n);
  for (std::size_t j = 0; j < inputs.size(); ++j) {
    mixed_input += weights[j] * inputs[j].matrix();
    mixed_output += weights[j] * e.apply(inputs[j]).matrix();
  }
  ComplexMatrix of_mixture = e.apply(DensityOperator(mixed_input)).matrix();
  const double dev = max_abs(of_mixture - mixed_output);
  return {inputs, weights, std::move(of_mixture), std::move(mixed_output), dev};
}

namespace {

// Random input inside the preparation's domain, or nullopt after repeated rejection.
std::optional<DensityOperator> draw_in_domain(const PreparationMap& p, Rng& rng) {
  constexpr int kMaxAttempts = 1000;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    DensityOperator candidate = random_density(p.system_dim(), rng);
    try {
      (void)p.apply(candidate);
      return candidate;
    } catch (const OutsideDomain&) {
    }
  }
  return std::nullopt;
}

}  // namespace

LinearityResult linearity_test(const InducedEvolution& e, std::size_t samples,
                               std::size_t mix_weights, double tol, Rng& rng) {
  if (samples < 2) throw InputError("linearity.samples", "linearity test needs at least 2 samples");
  if (mix_weights < 1) throw InputError("linearity.weights", "need at least one mixing weight");
  LinearityResult result;
  for (std::size_t s = 0; s < samples; ++s) {
    auto first = draw_in_domain(e.prep, rng);
    auto second = draw_in_domain(e.prep, rng);
    if (!first || !second) break;
    for (std::size_t k = 1; k <= mix_weights; ++k) {
      const double lambda = static_cast<double>(k) / static_cast<double>(mix_weights + 1);
      LinearityWitness w = linearity_deviation(e, {*first, *second}, {lambda, 1.0 - lambda});
      ++result.mixtures_tested;
      result.max_deviation = std::max(result.max_deviation, w.deviation);
      if (w.deviation > tol) {
        result.linear = false;
        result.witness = std::move(w);
        return result;
      }
    }
  }
  return result;
}

ConstantEnvironmentResult constant_environment_test(const PreparationMap& p, std::size_t samples,
                                                    double tol, Rng& rng) {
  if (samples < 2)
    throw InputError("environment.samples", "constant-environment test needs at least 2 samples");
  const Dims dims{p.system_dim(), p.env_dim()};
  ConstantEnvironmentResult result;
  std::optional<DensityOperator> reference_input;
  ComplexMatrix reference_env;
  for (std::size_t s = 0; s < samples; ++s) {
    auto input = draw_in_domain(p, rng);
    if (!input) break;
    ComplexMatrix env = partial_trace(p.apply(*input).matrix(), dims, Keep::second);
    ++result.accepted_inputs;
    if (!reference_input) {
      reference_input = *input;
      reference_env = std::move(env);
      continue;
    }
    const double dev = max_abs(env - reference_env);
    if (dev > tol) {
      result.constant = false;
      result.witness = EnvironmentWitness{*reference_input, *input, reference_env, env, dev};
      return result;
    }
  }
  if (result.accepted_inputs > 0) result.env_state = reference_env;
  return result;
}

UnitaryOperator swap_unitary(std::size_t n) {
  const auto d = static_cast<Eigen::Index>(n);
  ComplexMatrix s = ComplexMatrix::Zero(d * d, d * d);
  // |i><j| (x) |j><i| maps |j, i> to |i, j>.
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) s(i * d + j, j * d + i) = 1.0;
  return UnitaryOperator(s);
}

InducedEvolution swap_construction(const DensityOperator& target) {
  return {PreparationMap::product(target.dim(), target), swap_unitary(target.dim())};
}

}  // namespace corrdyn
