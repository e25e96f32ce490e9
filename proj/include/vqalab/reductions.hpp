#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "vqalab/linalg.hpp"
#include "vqalab/maxcut.hpp"

namespace vqalab {

/// Instance families built from a MaxCut graph.
enum class Family { oracular, boosted, logdim, single_layer, qaoa1, qaoa_multi, fermion };

std::string_view family_tag(Family f);
std::optional<Family> parse_family(std::string_view tag);
const std::vector<Family>& all_families();

// ---------------------------------------------------------------------------
// Qubit encodings

inline constexpr int kMaxDiagonalQubits = 12;
/// Dense simulation cap for circuits of single-qubit sigma_y rotations.
inline constexpr int kMaxSimulatedQubits = 8;

/// O = 1/4 sum_{i,j} A_ij (Z_i Z_j - 1), diagonal over the 2^d computational basis.
HermitianOperator ising_observable(const Graph& g);

/// |0...0>, generators sigma_y^(i)/2, Ising observable; closed form mu.
VqaInstance oracular_vqa_instance(const Graph& g);
/// Exact stand-in for the expectation oracle of the sigma_y circuit: mu(g, phi).
double oracular_vqa_expectation(const Graph& g, const PhaseVector& phi);

/// (-1)^(k-1) O^{tensor k} on k*d qubits (diagonal).
HermitianOperator boosted_observable(const Graph& g, int k);
/// k copies of the oracular circuit; generator i rotates qubit i of every copy.
VqaInstance boosted_vqa_instance(const Graph& g, int k);
/// -|mu(g, phi)|^k
double boosted_expectation(const Graph& g, int k, const PhaseVector& phi);

// ---------------------------------------------------------------------------
// Polynomial-dimension encoding on C^{2d}

/// O' = (d/8) A (x) [[1,1],[1,1]] with the diagonal replaced by minus column sums.
Eigen::MatrixXd logdim_observable_matrix(const Graph& g);
/// Uniform initial state, generators |2i-1><2i-1| - |2i><2i|; closed form mu.
VqaInstance logdim_vqa_instance(const Graph& g);

/// Decision-version certificate check: <O>(phi) <= a + 1e-9.
bool verify_certificate(const VqaInstance& inst, const PhaseVector& phi, double a);

// ---------------------------------------------------------------------------
// Ergodic spectra and single-layer circuits

/// E_i = 2 pi / m^i for i = 1..n, epsilon = 4 pi / m.
struct ErgodicSpectrum {
  int m = 2;
  Eigen::VectorXd energies;
  double epsilon = 0;

  int size() const { return static_cast<int>(energies.size()); }
};

ErgodicSpectrum ergodic_energies(int n, int m);

/// inf_k |x - 2 pi k|, in [0, pi].
double mod_norm(double x);

/// Constructive lookup time t = sum_j s_j m^(j-1), s_i = floor(phi_i m / 2pi).
/// Requires phi in [0, 2pi)^n and m^n <= 2^53.
double ergodic_time(const PhaseVector& phi, const ErgodicSpectrum& spec);

/// E_i t reduced into [0, 2pi). Integral t is reduced with integer arithmetic.
double ergodic_phase(const ErgodicSpectrum& spec, int i, double t);

/// max_i ||phi_i - E_i t||_mod
double ergodic_error(const PhaseVector& phi, const ErgodicSpectrum& spec, double t);

/// Logdim state and observable with one generator sum_j E_j (|2j-1><2j-1| - |2j><2j|).
/// Closed form mu(g, E * phi).
VqaInstance single_layer_instance(const Graph& g, int m);

// ---------------------------------------------------------------------------
// QAOA

enum class ClosedFormKind { exact, lower_bound };

/// Mixer hb, cost hc, L layers, initial state = ground state of hb.
struct QaoaInstance {
  HermitianOperator hb;
  HermitianOperator hc;
  int layers;
  StateVector initial;
  std::function<double(const PhaseVector& beta, const PhaseVector& gamma)> closed_form;
  ClosedFormKind closed_form_kind = ClosedFormKind::exact;

  QaoaInstance(HermitianOperator hb, HermitianOperator hc, int layers, StateVector initial,
               std::function<double(const PhaseVector&, const PhaseVector&)> closed_form = {},
               ClosedFormKind kind = ClosedFormKind::exact);

  int dim() const { return hb.dim(); }
};

struct QaoaResult {
  StateVector state;
  double expectation;
};

/// U_b(beta_L) U_c(gamma_L) ... U_b(beta_1) U_c(gamma_1) |psi_0>, measured with hc.
QaoaResult qaoa_apply(const QaoaInstance& inst, const PhaseVector& beta, const PhaseVector& gamma);

/// dim 2d+1: hb = diag(E_1, -E_1, ..., E_d, -E_d, -1), hc = O (+) 0 + tau(|+><2d+1| + h.c.).
QaoaInstance qaoa_single_layer_instance(const Graph& g, double tau, int m);

/// f(beta) = mu(g, E beta)
double qaoa1_f(const Graph& g, const ErgodicSpectrum& spec, double beta);
/// g(beta) = -(sin beta / d) sum_j cos(E_j beta)
double qaoa1_g(const ErgodicSpectrum& spec, double beta);
/// sin^2(tau gamma) f(beta) + 2 tau cos(tau gamma) sin(tau gamma) g(beta)
double qaoa1_closed_form(const Graph& g, const ErgodicSpectrum& spec, double tau, double beta,
                         double gamma);

inline constexpr int kMaxMultilayerVertices = 5;

/// Basis index of |i, j, a, b>_ell, lexicographic with ell outermost (all 0-based).
int multilayer_index(int d, int ell, int i, int j, int a, int b);

/// Transfer-Hamiltonian construction of dimension (2d+1) 4 d^2 with L = d layers.
/// Closed form is the last-subspace contribution, a lower bound that is exact
/// whenever every gamma_k = pi and every beta_k is in {pi/2, 3pi/2}.
QaoaInstance qaoa_multilayer_instance(const Graph& g);

/// prod_k sin^2(beta_k) sin^2(gamma_k/2) * sum_{ij} A_ij sin(beta_i) sin(beta_j) / sum A_ij
double multilayer_lower_bound(const Graph& g, const PhaseVector& beta, const PhaseVector& gamma);

/// 1 - 2 MaxCut / |E|
double multilayer_optimum(const Graph& g);

/// beta_i = pi/2 for side +1, 3pi/2 for side -1; gamma = pi.
std::pair<PhaseVector, PhaseVector> multilayer_encoding(const Bipartition& b);

}  // namespace vqalab
