#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "vqalab/linalg.hpp"
#include "vqalab/reductions.hpp"

using namespace vqalab;
using std::numbers::pi;

namespace {

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

CMatrix identity(int n) { return CMatrix::Identity(n, n); }

}  // namespace

TEST(HermExp, ZeroAngleIsIdentity) {
  std::mt19937_64 rng(1);
  const CMatrix h = oracle::random_hermitian(5, rng);
  EXPECT_LE(max_abs(herm_exp(h, 0.0) - identity(5)), 1e-12);
}

TEST(HermExp, DiagonalPiIsMinusIdentity) {
  const auto h = HermitianOperator::diagonal(Eigen::Vector2d(1.0, -1.0));
  EXPECT_LE(max_abs(herm_exp(h, pi) + identity(2)), 1e-15);
}

TEST(HermExp, MatchesTaylorSeriesAndIsUnitary) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> angle(-5.0, 5.0);
  for (int n : {1, 2, 3, 7, 16}) {
    for (int t = 0; t < 5; ++t) {
      const CMatrix h = oracle::random_hermitian(n, rng);
      const double theta = angle(rng);
      const CMatrix u = herm_exp(h, theta);
      EXPECT_LE(max_abs(u - oracle::expm_taylor(h, theta)), 1e-9);
      EXPECT_LE(max_abs(u.adjoint() * u - identity(n)), 1e-10);
    }
  }
}

TEST(HermExp, GroupProperty) {
  std::mt19937_64 rng(3);
  const CMatrix h = oracle::random_hermitian(6, rng);
  for (auto [a, b] : {std::pair{0.3, 1.7}, {-2.0, 0.5}, {4.0, 4.0}}) {
    EXPECT_LE(max_abs(herm_exp(h, a + b) - herm_exp(h, a) * herm_exp(h, b)), 1e-9);
  }
}

TEST(HermExp, RejectsNonHermitian) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(herm_exp(m, 1.0), std::invalid_argument);
}

TEST(HermitianOperatorType, SymmetrizesSmallDeviationsRejectsLarge) {
  CMatrix m = CMatrix::Identity(2, 2);
  m(0, 1) = 1e-9;
  const auto op = HermitianOperator::dense(m);
  EXPECT_LE(max_abs(op.matrix() - op.matrix().adjoint()), 0.0);
  m(0, 1) = 1e-3;
  EXPECT_THROW(HermitianOperator::dense(m), std::invalid_argument);
}

TEST(HermitianOperatorType, EvolveMatchesExponential) {
  std::mt19937_64 rng(4);
  const CMatrix h = oracle::random_hermitian(8, rng);
  const auto op = HermitianOperator::dense(h);
  CVector v = oracle::random_hermitian(8, rng).col(0);
  v.normalize();
  EXPECT_LE((op.evolve(v, 0.7) - oracle::expm_taylor(h, 0.7) * v).cwiseAbs().maxCoeff(), 1e-10);
  const auto diag = HermitianOperator::diagonal(Eigen::Vector3d(0.5, -2.0, 0.0));
  const CVector w = CVector::Ones(3) / std::sqrt(3.0);
  EXPECT_LE((diag.evolve(w, 1.3) - oracle::expm_taylor(diag.matrix(), 1.3) * w).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(HermitianOperatorType, SpectrumAscending) {
  const auto op = HermitianOperator::diagonal(Eigen::Vector4d(3.0, -1.0, 2.0, 0.0));
  const Spectrum& s = op.spectrum();
  for (int k = 1; k < 4; ++k) EXPECT_LE(s.values[k - 1], s.values[k]);
  const CMatrix rebuilt = s.vectors * s.values.cast<Complex>().asDiagonal() * s.vectors.adjoint();
  EXPECT_LE(max_abs(rebuilt - op.matrix()), 1e-15);
}

TEST(StateVectorType, NormalizationEnforced) {
  EXPECT_THROW(StateVector(CVector::Ones(2)), std::invalid_argument);
  EXPECT_NO_THROW(StateVector::uniform(5));
  EXPECT_THROW(StateVector::basis(3, 3), std::invalid_argument);
}

TEST(ApplyCircuit, ZeroAnglesLeaveStateUnchanged) {
  std::mt19937_64 rng(5);
  std::vector<HermitianOperator> gens;
  for (int i = 0; i < 3; ++i) gens.push_back(HermitianOperator::dense(oracle::random_hermitian(4, rng)));
  const VqaInstance inst(StateVector::basis(4, 1), gens, HermitianOperator::dense(oracle::random_hermitian(4, rng)));
  const StateVector out = apply_circuit(inst, PhaseVector::zeros(3));
  EXPECT_LE((out.amplitudes() - inst.initial.amplitudes()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_THROW(apply_circuit(inst, PhaseVector::zeros(2)), std::invalid_argument);
}

TEST(ApplyCircuit, DiagonalGeneratorOnlyChangesPhases) {
  const VqaInstance inst(StateVector::basis(2, 0), {HermitianOperator::diagonal(Eigen::Vector2d(1, -1))},
                         HermitianOperator::diagonal(Eigen::Vector2d(1, 0)));
  const StateVector out = apply_circuit(inst, PhaseVector{1.234});
  EXPECT_NEAR(std::norm(out.amplitudes()[0]), 1.0, 1e-15);
  EXPECT_NEAR(std::norm(out.amplitudes()[1]), 0.0, 1e-15);
}

TEST(ApplyCircuit, EqualsChainedMatrixProduct) {
  std::mt19937_64 rng(6);
  for (int n : {2, 5, 16}) {
    std::vector<HermitianOperator> gens;
    std::vector<CMatrix> raw;
    for (int i = 0; i < 4; ++i) {
      raw.push_back(oracle::random_hermitian(n, rng));
      gens.push_back(HermitianOperator::dense(raw.back()));
    }
    const VqaInstance inst(StateVector::uniform(n), gens, HermitianOperator::dense(raw[0]));
    const Eigen::VectorXd phi = oracle::random_angles(4, rng);
    CVector psi = inst.initial.amplitudes();
    for (int i = 0; i < 4; ++i) psi = oracle::expm_taylor(raw[i], phi[i]) * psi;
    const StateVector out = apply_circuit(inst, PhaseVector(phi));
    EXPECT_LE((out.amplitudes() - psi).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_NEAR(out.amplitudes().norm(), 1.0, 1e-10);
  }
}

TEST(Expectation, IdentityAndEigenvectors) {
  std::mt19937_64 rng(7);
  const CMatrix h = oracle::random_hermitian(6, rng);
  const auto op = HermitianOperator::dense(h);
  EXPECT_NEAR(expectation(StateVector::uniform(6), HermitianOperator::dense(CMatrix(identity(6)))), 1.0, 1e-15);
  const Spectrum& s = op.spectrum();
  for (int k = 0; k < 6; ++k) {
    EXPECT_NEAR(expectation(StateVector(s.vectors.col(k)), op), s.values[k], 1e-10);
  }
}

TEST(Expectation, WithinSpectralBounds) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 50; ++t) {
    const auto op = HermitianOperator::dense(oracle::random_hermitian(5, rng));
    CVector v = oracle::random_hermitian(5, rng).col(1);
    v.normalize();
    const double e = expectation(StateVector(v), op);
    const auto ext = spectral_extremes(op);
    EXPECT_GE(e, ext.lambda_min - 1e-9);
    EXPECT_LE(e, ext.lambda_max + 1e-9);
  }
}

TEST(Expectation, DimensionMismatch) {
  EXPECT_THROW(expectation(StateVector::uniform(3), HermitianOperator::diagonal(Eigen::Vector2d(1, 2))),
               std::invalid_argument);
}

TEST(SpectralExtremes, Examples) {
  const auto e = spectral_extremes(HermitianOperator::diagonal(Eigen::Vector2d(3, -1)));
  EXPECT_EQ(e.lambda_min, -1.0);
  EXPECT_EQ(e.lambda_max, 3.0);
  EXPECT_EQ(e.sw, 4.0);
  const auto k3 = spectral_extremes(ising_observable(parse_graph("3\n1 2\n2 3\n1 3")));
  EXPECT_EQ(k3.lambda_min, -2.0);
  EXPECT_EQ(k3.lambda_max, 0.0);
  EXPECT_EQ(k3.sw, 2.0);
}

TEST(SpectralExtremes, DenseMatchesEigenvalues) {
  CMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  const auto e = spectral_extremes(HermitianOperator::dense(m));
  EXPECT_NEAR(e.lambda_min, -1.0, 1e-15);
  EXPECT_NEAR(e.lambda_max, 1.0, 1e-15);
  EXPECT_NEAR(operator_norm(HermitianOperator::diagonal(Eigen::Vector3d(-4, 1, 2))), 4.0, 0.0);
}

TEST(Qubits, PauliAlgebra) {
  const CMatrix x = pauli_x(), y = pauli_y(), z = pauli_z();
  EXPECT_LE(max_abs(x * y - Complex(0, 1) * z), 0.0);
  EXPECT_LE(max_abs(y * y - identity(2)), 0.0);
  const CMatrix z0 = single_qubit_operator(2, 0, z);
  EXPECT_LE(max_abs(z0 - kron(z, identity(2))), 0.0);
  for (std::uint64_t idx = 0; idx < 4; ++idx) {
    EXPECT_EQ(z0(idx, idx).real(), z_eigenvalue(2, 0, idx));
    EXPECT_EQ(single_qubit_operator(2, 1, z)(idx, idx).real(), z_eigenvalue(2, 1, idx));
  }
}
