#include "corrdyn/densemat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

namespace corrdyn {

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw DimensionMismatch(std::string(what) + ": expected a square matrix, got " +
                            std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

constexpr double kEigenTieTol = 1e-12;

// Rotate the global phase so the first entry that is not negligible is real positive.
void fix_phase(Eigen::Ref<ComplexVector> v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v[i]);
    if (mag > 1e-12) {
      v *= std::conj(v[i]) / mag;
      return;
    }
  }
}

}  // namespace

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermiticity_error(const ComplexMatrix& m) {
  require_square(m, "hermiticity_error");
  return max_abs(m - m.adjoint());
}

bool all_finite(const ComplexMatrix& m) {
  return std::all_of(m.data(), m.data() + m.size(),
                     [](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

// ---------------------------------------------------------------------------
// DensityOperator

DensityOperator::DensityOperator(const ComplexMatrix& m, const StateTolerances& tol) {
  require_square(m, "DensityOperator");
  if (m.rows() == 0) throw InvalidDimension("DensityOperator: empty matrix");
  if (!all_finite(m)) {
    throw UnphysicalState(std::numeric_limits<double>::quiet_NaN(),
                          "density operator has non-finite entries");
  }
  const double herm = hermiticity_error(m);
  if (herm > tol.hermiticity) throw NotHermitian(herm);

  ComplexMatrix h = 0.5 * (m + m.adjoint());
  const Complex tr = h.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > tol.trace) {
    throw UnphysicalState(std::numeric_limits<double>::quiet_NaN(),
                          "density operator trace is " + std::to_string(tr.real()) +
                              ", expected 1");
  }

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  const RealVector& lambda = es.eigenvalues();
  min_eigenvalue_ = lambda.minCoeff();
  if (min_eigenvalue_ < -tol.positivity) {
    throw UnphysicalState(min_eigenvalue_, "density operator has negative eigenvalue " +
                                               std::to_string(min_eigenvalue_));
  }
  if (min_eigenvalue_ < 0.0) {
    const RealVector clamped = lambda.cwiseMax(0.0);
    h = es.eigenvectors() * clamped.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
  }
  matrix_ = std::move(h);
}

DensityOperator DensityOperator::pure(const ComplexVector& psi) {
  const double n = psi.norm();
  if (n == 0.0) throw InvalidDimension("pure state from a zero vector");
  const ComplexVector u = psi / n;
  return DensityOperator(u * u.adjoint());
}

DensityOperator DensityOperator::maximally_mixed(std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  return DensityOperator(ComplexMatrix::Identity(d, d) / static_cast<double>(dim));
}

DensityOperator DensityOperator::basis(std::size_t dim, std::size_t k) {
  if (k >= dim) throw InvalidDimension("basis index out of range");
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
  v[static_cast<Eigen::Index>(k)] = 1.0;
  return pure(v);
}

double DensityOperator::purity() const { return (matrix_ * matrix_).trace().real(); }

// ---------------------------------------------------------------------------
// UnitaryOperator

UnitaryOperator::UnitaryOperator(const ComplexMatrix& m, double tol) {
  require_square(m, "UnitaryOperator");
  if (!all_finite(m)) throw NotUnitary(std::numeric_limits<double>::infinity());
  const double dev = max_abs(m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols()));
  if (dev > tol) throw NotUnitary(dev);
  matrix_ = m;
}

UnitaryOperator UnitaryOperator::identity(std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  return UnitaryOperator(ComplexMatrix::Identity(d, d));
}

UnitaryOperator UnitaryOperator::adjoint() const { return UnitaryOperator(matrix_.adjoint()); }

// ---------------------------------------------------------------------------
// Tensor structure

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const Eigen::Index p = b.rows();
  const Eigen::Index q = b.cols();
  ComplexMatrix out(a.rows() * p, a.cols() * q);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * p, j * q, p, q) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, Dims dims, Keep keep) {
  require_square(m, "partial_trace");
  const auto n = static_cast<Eigen::Index>(dims.system);
  const auto e = static_cast<Eigen::Index>(dims.environment);
  if (m.rows() != n * e) {
    throw DimensionMismatch("partial_trace: operator dimension " + std::to_string(m.rows()) +
                            " != " + std::to_string(n) + "*" + std::to_string(e));
  }
  if (keep == Keep::first) {
    ComplexMatrix out = ComplexMatrix::Zero(n, n);
    for (Eigen::Index a = 0; a < n; ++a)
      for (Eigen::Index b = 0; b < n; ++b)
        for (Eigen::Index mu = 0; mu < e; ++mu) out(a, b) += m(a * e + mu, b * e + mu);
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(e, e);
  for (Eigen::Index a = 0; a < n; ++a) out += m.block(a * e, a * e, e, e);
  return out;
}

DensityOperator partial_trace(const DensityOperator& rho, Dims dims, Keep keep) {
  return DensityOperator(partial_trace(rho.matrix(), dims, keep));
}

ComplexMatrix swap_tensor_factors(const ComplexMatrix& m, Dims dims) {
  require_square(m, "swap_tensor_factors");
  const auto a = static_cast<Eigen::Index>(dims.system);
  const auto b = static_cast<Eigen::Index>(dims.environment);
  if (m.rows() != a * b) throw DimensionMismatch("swap_tensor_factors: dimension mismatch");
  ComplexMatrix out(a * b, a * b);
  for (Eigen::Index i = 0; i < a; ++i)
    for (Eigen::Index k = 0; k < b; ++k)
      for (Eigen::Index j = 0; j < a; ++j)
        for (Eigen::Index l = 0; l < b; ++l) out(k * a + i, l * a + j) = m(i * b + k, j * b + l);
  return out;
}

// ---------------------------------------------------------------------------
// Spectral routines

HermitianEigen eig_hermitian(const ComplexMatrix& m, double tol) {
  require_square(m, "eig_hermitian");
  const double herm = hermiticity_error(m);
  if (herm > tol) throw NotHermitian(herm);

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (m + m.adjoint()));
  const RealVector& lam = es.eigenvalues();
  ComplexMatrix vecs = es.eigenvectors();
  for (Eigen::Index k = 0; k < vecs.cols(); ++k) fix_phase(vecs.col(k));

  std::vector<Eigen::Index> order(static_cast<std::size_t>(lam.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  auto lex_less = [&](Eigen::Index i, Eigen::Index j) {
    for (Eigen::Index r = 0; r < vecs.rows(); ++r) {
      const double a = vecs(r, i).real();
      const double b = vecs(r, j).real();
      if (std::abs(a - b) > kEigenTieTol) return a < b;
    }
    return false;
  };
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    if (std::abs(lam[i] - lam[j]) > kEigenTieTol) return lam[i] > lam[j];
    return lex_less(i, j);
  });

  HermitianEigen out{RealVector(lam.size()), ComplexMatrix(vecs.rows(), vecs.cols())};
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto dst = static_cast<Eigen::Index>(k);
    out.values[dst] = lam[order[k]];
    out.vectors.col(dst) = vecs.col(order[k]);
  }
  return out;
}

UnitaryOperator matrix_exp_unitary(const ComplexMatrix& h, double t) {
  const HermitianEigen eig = eig_hermitian(h);
  ComplexVector phases(eig.values.size());
  for (Eigen::Index k = 0; k < phases.size(); ++k)
    phases[k] = std::exp(Complex(0.0, -eig.values[k] * t));
  return UnitaryOperator(eig.vectors * phases.asDiagonal() * eig.vectors.adjoint());
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  const ComplexMatrix d = a - b;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (d + d.adjoint()), Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double condition_number(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  const RealVector& s = svd.singularValues();
  if (s.size() == 0) return 1.0;
  const double smin = s[s.size() - 1];
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return s[0] / smin;
}

// ---------------------------------------------------------------------------
// Vectorization

ComplexVector vectorize(const ComplexMatrix& m) {
  require_square(m, "vectorize");
  // Eigen storage is column-major, which is exactly column stacking.
  return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

ComplexMatrix devectorize(const ComplexVector& v) {
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(v.size()))));
  if (d * d != v.size()) {
    throw DimensionMismatch("devectorize: length " + std::to_string(v.size()) +
                            " is not a perfect square");
  }
  return Eigen::Map<const ComplexMatrix>(v.data(), d, d);
}

namespace pauli {
ComplexMatrix identity() { return ComplexMatrix::Identity(2, 2); }
ComplexMatrix x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}
ComplexMatrix y() {
  ComplexMatrix m(2, 2);
  m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return m;
}
ComplexMatrix z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}
}  // namespace pauli

}  // namespace corrdyn
