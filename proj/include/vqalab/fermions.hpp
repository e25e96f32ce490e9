#pragma once

#include <functional>
#include <vector>

#include "vqalab/linalg.hpp"
#include "vqalab/maxcut.hpp"

namespace vqalab {

/// n x n Hermitian coefficient matrix h of the quadratic operator sum_ij h_ij c_i^dag c_j.
class CoefficientMatrix {
 public:
  /// Throws if not Hermitian within 1e-12.
  explicit CoefficientMatrix(CMatrix entries);
  explicit CoefficientMatrix(const Eigen::MatrixXd& entries)
      : CoefficientMatrix(CMatrix(entries.cast<Complex>())) {}

  int modes() const { return static_cast<int>(entries_.rows()); }
  const CMatrix& entries() const { return entries_; }

 private:
  CMatrix entries_;
};

/// Gamma_ij = <c_j^dag c_i>. Hermitian with spectrum in [0, 1].
class CorrelationMatrix {
 public:
  /// Throws if not Hermitian or if an eigenvalue leaves [0, 1] by more than 1e-9.
  explicit CorrelationMatrix(CMatrix entries);

  int modes() const { return static_cast<int>(entries_.rows()); }
  const CMatrix& entries() const { return entries_; }

 private:
  CMatrix entries_;
};

struct FermionInstance {
  CoefficientMatrix h0;
  std::vector<CoefficientMatrix> generators;
  CoefficientMatrix o;
  std::function<double(const PhaseVector&)> closed_form;

  FermionInstance(CoefficientMatrix h0, std::vector<CoefficientMatrix> generators,
                  CoefficientMatrix o, std::function<double(const PhaseVector&)> closed_form = {});

  int modes() const { return o.modes(); }
  int layers() const { return static_cast<int>(generators.size()); }
};

/// Fermi-Dirac occupation 1/(e^{beta lambda} + 1) applied in the eigenbasis of h.
CorrelationMatrix thermal_covariance(const CoefficientMatrix& h, double beta);

/// Projector onto the negative eigenspace of h; zero modes get occupation 1/2.
CorrelationMatrix ground_covariance(const CoefficientMatrix& h);

/// Heisenberg-picture coefficient matrix of O after the circuit U_L ... U_1,
///   o(phi) = e^{i h_1 phi_1} ... e^{i h_L phi_L} o e^{-i h_L phi_L} ... e^{-i h_1 phi_1}.
CoefficientMatrix evolve_coefficient(const CoefficientMatrix& o,
                                     const std::vector<CoefficientMatrix>& generators,
                                     const PhaseVector& phi);

/// sum_ij o_ij Gamma_ji
double fermion_expectation(const CoefficientMatrix& o, const CorrelationMatrix& gamma);

/// Covariance-matrix evaluation of Tr[O rho(phi)] with rho_0 the ground state of H_0.
double fermion_instance_expectation(const FermionInstance& inst, const PhaseVector& phi);

/// Extreme eigenvalues of the second-quantized O: sums of the negative
/// (respectively positive) single-particle eigenvalues of o.
SpectralExtremes fermion_spectral_extremes(const CoefficientMatrix& o);

/// 2d modes: o = logdim observable, h_i = +1 on mode 2i-1 and -1 on mode 2i,
/// h0 = 1 - 2 J / n with J the all-ones matrix. Closed form mu.
FermionInstance fermionic_vqa_instance(const Graph& g);

// ---------------------------------------------------------------------------
// Fock-space reference (2^n dimensional), independent of the covariance route.

inline constexpr int kMaxFockModes = 8;

/// Jordan-Wigner annihilation operator c_j; bit j of the basis index is the
/// occupation of mode j.
CMatrix fock_annihilation(int modes, int j);
/// sum_ij h_ij c_i^dag c_j as a 2^n x 2^n matrix.
CMatrix fock_operator(const CoefficientMatrix& h);
/// Orthonormal basis of the ground space of fock_operator(h), one vector per column.
CMatrix fock_ground_space(const CoefficientMatrix& h);
/// Uniform mixture over the ground space of fock_operator(h).
CMatrix fock_ground_state(const CoefficientMatrix& h);
/// e^{-beta H} / Z
CMatrix fock_thermal_state(const CoefficientMatrix& h, double beta);
/// Tr[O rho]
double fock_expectation(const CoefficientMatrix& o, const CMatrix& rho);

/// FermionInstance second-quantized once: ground space of H0, generators and O.
/// The initial state is the uniform mixture over the columns of `ground`.
struct FockInstance {
  CMatrix ground;
  std::vector<HermitianOperator> generators;
  CMatrix o;
};

FockInstance fock_lift(const FermionInstance& inst);

/// Evolves the ground state of H0 through the circuit and returns Tr[O rho(phi)].
double fock_bruteforce_expectation(const FockInstance& inst, const PhaseVector& phi);
double fock_bruteforce_expectation(const FermionInstance& inst, const PhaseVector& phi);

}  // namespace vqalab
