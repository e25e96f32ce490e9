#include "vqalab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <mutex>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace vqalab {

struct HermitianOperator::Data {
  int dim = 0;
  bool diagonal = false;
  Eigen::VectorXd diag;
  CMatrix dense;

  mutable std::once_flag spectrum_once;
  mutable Spectrum spectrum;
};

HermitianOperator HermitianOperator::diagonal(Eigen::VectorXd entries) {
  if (entries.size() == 0) throw std::invalid_argument("operator dimension must be positive");
  if (!entries.allFinite()) throw std::invalid_argument("operator entries must be finite");
  auto data = std::make_shared<Data>();
  data->dim = static_cast<int>(entries.size());
  data->diagonal = true;
  data->diag = std::move(entries);
  return HermitianOperator(std::move(data));
}

HermitianOperator HermitianOperator::dense(const CMatrix& m) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw std::invalid_argument("operator must be a non-empty square matrix");
  }
  if (!m.allFinite()) throw std::invalid_argument("operator entries must be finite");
  const double deviation = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (deviation > kHermitianRejectTolerance) {
    throw std::invalid_argument("matrix is not Hermitian (max |H - H^dagger| = " +
                                std::to_string(deviation) + ")");
  }
  if (deviation > kHermitianTolerance) {
    std::clog << "warning: symmetrizing operator with Hermiticity defect " << deviation << '\n';
  }
  auto data = std::make_shared<Data>();
  data->dim = static_cast<int>(m.rows());
  data->dense = 0.5 * (m + m.adjoint());
  return HermitianOperator(std::move(data));
}

int HermitianOperator::dim() const { return data_->dim; }

bool HermitianOperator::is_diagonal() const { return data_->diagonal; }

const Eigen::VectorXd& HermitianOperator::diagonal_entries() const {
  if (!data_->diagonal) throw std::logic_error("operator is not stored as diagonal");
  return data_->diag;
}

CMatrix HermitianOperator::matrix() const {
  if (data_->diagonal) return data_->diag.cast<Complex>().asDiagonal();
  return data_->dense;
}

const Spectrum& HermitianOperator::spectrum() const {
  std::call_once(data_->spectrum_once, [this] {
    auto& s = data_->spectrum;
    if (data_->diagonal) {
      // Sort so values are ascending as documented; vectors become a permutation.
      const int n = data_->dim;
      std::vector<int> order(n);
      for (int i = 0; i < n; ++i) order[i] = i;
      std::stable_sort(order.begin(), order.end(),
                       [&](int a, int b) { return data_->diag[a] < data_->diag[b]; });
      s.values.resize(n);
      s.vectors = CMatrix::Zero(n, n);
      for (int k = 0; k < n; ++k) {
        s.values[k] = data_->diag[order[k]];
        s.vectors(order[k], k) = 1.0;
      }
    } else {
      Eigen::SelfAdjointEigenSolver<CMatrix> solver(data_->dense);
      if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
      s.values = solver.eigenvalues();
      s.vectors = solver.eigenvectors();
    }
  });
  return data_->spectrum;
}

CVector HermitianOperator::apply(const CVector& v) const {
  if (v.size() != dim()) throw std::invalid_argument("dimension mismatch in operator application");
  if (data_->diagonal) return data_->diag.cast<Complex>().cwiseProduct(v);
  return data_->dense * v;
}

CVector HermitianOperator::evolve(const CVector& v, double theta) const {
  if (v.size() != dim()) throw std::invalid_argument("dimension mismatch in evolution");
  if (data_->diagonal) {
    CVector out = v;
    for (Eigen::Index k = 0; k < v.size(); ++k) {
      if (data_->diag[k] != 0.0) out[k] *= std::polar(1.0, -data_->diag[k] * theta);
    }
    return out;
  }
  const auto& s = spectrum();
  CVector coeffs = s.vectors.adjoint() * v;
  for (Eigen::Index k = 0; k < coeffs.size(); ++k) coeffs[k] *= std::polar(1.0, -s.values[k] * theta);
  return s.vectors * coeffs;
}

StateVector::StateVector(CVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) throw std::invalid_argument("state dimension must be positive");
  if (std::abs(amplitudes_.norm() - 1.0) > kNormTolerance) {
    throw std::invalid_argument("state vector is not normalized (norm " +
                                std::to_string(amplitudes_.norm()) + ")");
  }
}

StateVector StateVector::basis(int dim, int index) {
  if (index < 0 || index >= dim) throw std::invalid_argument("basis index out of range");
  CVector v = CVector::Zero(dim);
  v[index] = 1.0;
  return StateVector(std::move(v));
}

StateVector StateVector::uniform(int dim) {
  return StateVector(CVector::Constant(dim, Complex(1.0 / std::sqrt(static_cast<double>(dim)), 0.0)));
}

VqaInstance::VqaInstance(StateVector initial_state, std::vector<HermitianOperator> gens,
                         HermitianOperator obs, std::function<double(const PhaseVector&)> closed)
    : initial(std::move(initial_state)),
      generators(std::move(gens)),
      observable(std::move(obs)),
      closed_form(std::move(closed)) {
  if (generators.empty()) throw std::invalid_argument("generator list must be nonempty");
  if (observable.dim() != initial.dim()) throw std::invalid_argument("observable dimension mismatch");
  for (const auto& h : generators) {
    if (h.dim() != initial.dim()) throw std::invalid_argument("generator dimension mismatch");
  }
}

CMatrix herm_exp(const HermitianOperator& h, double theta) {
  const Complex minus_i(0.0, -1.0);
  if (h.is_diagonal()) {
    const auto& diag = h.diagonal_entries();
    CVector phases(diag.size());
    for (Eigen::Index k = 0; k < diag.size(); ++k) phases[k] = std::exp(minus_i * (diag[k] * theta));
    return phases.asDiagonal();
  }
  const auto& s = h.spectrum();
  CVector phases(s.values.size());
  for (Eigen::Index k = 0; k < s.values.size(); ++k) phases[k] = std::exp(minus_i * (s.values[k] * theta));
  return s.vectors * phases.asDiagonal() * s.vectors.adjoint();
}

CMatrix herm_exp(const CMatrix& h, double theta) {
  return herm_exp(HermitianOperator::dense(h), theta);
}

StateVector apply_circuit(const VqaInstance& inst, const PhaseVector& phi) {
  if (phi.size() != inst.layers()) {
    throw std::invalid_argument("expected " + std::to_string(inst.layers()) + " angles, got " +
                                std::to_string(phi.size()));
  }
  CVector psi = inst.initial.amplitudes();
  for (int i = 0; i < inst.layers(); ++i) psi = inst.generators[i].evolve(psi, phi[i]);
  psi.normalize();
  return StateVector(std::move(psi));
}

double expectation(const StateVector& psi, const HermitianOperator& obs) {
  if (psi.dim() != obs.dim()) throw std::invalid_argument("state/observable dimension mismatch");
  const Complex value = psi.amplitudes().dot(obs.apply(psi.amplitudes()));
  if (std::abs(value.imag()) > kImaginaryResidueTolerance) {
    throw std::runtime_error("expectation has imaginary residue " + std::to_string(value.imag()) +
                             "; observable is not Hermitian");
  }
  return value.real();
}

SpectralExtremes spectral_extremes(const HermitianOperator& obs) {
  SpectralExtremes out;
  if (obs.is_diagonal()) {
    out.lambda_min = obs.diagonal_entries().minCoeff();
    out.lambda_max = obs.diagonal_entries().maxCoeff();
  } else {
    const auto& values = obs.spectrum().values;
    out.lambda_min = values[0];
    out.lambda_max = values[values.size() - 1];
  }
  out.sw = out.lambda_max - out.lambda_min;
  return out;
}

double operator_norm(const HermitianOperator& h) {
  const auto e = spectral_extremes(h);
  return std::max(std::abs(e.lambda_min), std::abs(e.lambda_max));
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

CMatrix pauli_y() {
  CMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

CMatrix pauli_z() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

CMatrix single_qubit_operator(int n_qubits, int qubit, const CMatrix& op) {
  if (qubit < 0 || qubit >= n_qubits) throw std::invalid_argument("qubit index out of range");
  CMatrix out = CMatrix::Identity(1, 1);
  for (int q = 0; q < n_qubits; ++q) out = kron(out, q == qubit ? op : CMatrix::Identity(2, 2));
  return out;
}

int z_eigenvalue(int n_qubits, int qubit, std::uint64_t index) {
  return ((index >> (n_qubits - 1 - qubit)) & 1U) ? -1 : 1;
}

}  // namespace vqalab
