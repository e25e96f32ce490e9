#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vqalab/maxcut.hpp"

namespace vqalab {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr double kHermitianTolerance = 1e-12;
/// Deviations above this are treated as a non-Hermitian input, not rounding noise.
inline constexpr double kHermitianRejectTolerance = 1e-6;
inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kImaginaryResidueTolerance = 1e-10;

/// Eigendecomposition h = V diag(values) V^dagger, values ascending.
struct Spectrum {
  Eigen::VectorXd values;
  CMatrix vectors;
};

/// Immutable dense or diagonal Hermitian matrix.
///
/// Diagonal operators keep only their (real) diagonal and skip diagonalization.
/// Dense operators are symmetrized on construction and cache their spectrum on
/// first use; copies share the cache.
class HermitianOperator {
 public:
  static HermitianOperator diagonal(Eigen::VectorXd entries);
  /// Symmetrizes (H + H^dagger)/2. Warns on stderr if the correction exceeds
  /// 1e-12 and throws if it exceeds 1e-6.
  static HermitianOperator dense(const CMatrix& m);
  static HermitianOperator dense(const Eigen::MatrixXd& m) { return dense(CMatrix(m.cast<Complex>())); }

  int dim() const;
  bool is_diagonal() const;
  /// Diagonal entries; only valid for diagonal operators.
  const Eigen::VectorXd& diagonal_entries() const;
  /// Materialized matrix (allocates dim^2 for diagonal operators).
  CMatrix matrix() const;
  const Spectrum& spectrum() const;

  CVector apply(const CVector& v) const;
  /// e^{-i H theta} v
  CVector evolve(const CVector& v, double theta) const;

 private:
  struct Data;
  explicit HermitianOperator(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
  std::shared_ptr<const Data> data_;
};

/// Unit-norm complex vector.
class StateVector {
 public:
  explicit StateVector(CVector amplitudes);
  static StateVector basis(int dim, int index);
  static StateVector uniform(int dim);

  int dim() const { return static_cast<int>(amplitudes_.size()); }
  const CVector& amplitudes() const { return amplitudes_; }

 private:
  CVector amplitudes_;
};

/// Initial state, generators applied in index order, observable.
struct VqaInstance {
  StateVector initial;
  std::vector<HermitianOperator> generators;
  HermitianOperator observable;
  std::function<double(const PhaseVector&)> closed_form;

  VqaInstance(StateVector initial, std::vector<HermitianOperator> generators,
              HermitianOperator observable,
              std::function<double(const PhaseVector&)> closed_form = {});

  int dim() const { return initial.dim(); }
  int layers() const { return static_cast<int>(generators.size()); }
};

/// e^{-i h theta} via spectral decomposition.
CMatrix herm_exp(const HermitianOperator& h, double theta);
/// Overload for raw matrices; throws std::invalid_argument on non-Hermitian input.
CMatrix herm_exp(const CMatrix& h, double theta);

StateVector apply_circuit(const VqaInstance& inst, const PhaseVector& phi);

/// <psi|O|psi>; throws if the imaginary part exceeds 1e-10.
double expectation(const StateVector& psi, const HermitianOperator& obs);

struct SpectralExtremes {
  double lambda_min = 0;
  double lambda_max = 0;
  double sw = 0;
};

SpectralExtremes spectral_extremes(const HermitianOperator& obs);

/// Largest absolute eigenvalue.
double operator_norm(const HermitianOperator& h);

// Qubit helpers. Qubit 0 is the most significant bit of the basis index.
CMatrix kron(const CMatrix& a, const CMatrix& b);
CMatrix pauli_x();
CMatrix pauli_y();
CMatrix pauli_z();
/// Embeds a single-qubit operator on `qubit` of an n-qubit register.
CMatrix single_qubit_operator(int n_qubits, int qubit, const CMatrix& op);
/// Spin (+1 for bit 0, -1 for bit 1) of `qubit` in basis state `index`.
int z_eigenvalue(int n_qubits, int qubit, std::uint64_t index);

}  // namespace vqalab
