#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "vqalab/reductions.hpp"

namespace vqalab {

QaoaInstance::QaoaInstance(HermitianOperator mixer, HermitianOperator cost, int n_layers,
                           StateVector init,
                           std::function<double(const PhaseVector&, const PhaseVector&)> closed,
                           ClosedFormKind kind)
    : hb(std::move(mixer)),
      hc(std::move(cost)),
      layers(n_layers),
      initial(std::move(init)),
      closed_form(std::move(closed)),
      closed_form_kind(kind) {
  if (layers < 1) throw std::invalid_argument("QAOA needs at least one layer");
  if (hb.dim() != hc.dim() || hb.dim() != initial.dim()) {
    throw std::invalid_argument("QAOA dimensions do not agree");
  }
  const double lambda_min = spectral_extremes(hb).lambda_min;
  const double residual =
      (hb.apply(initial.amplitudes()) - lambda_min * initial.amplitudes()).norm();
  if (residual > 1e-9) {
    throw std::invalid_argument("initial state is not a ground state of the mixer (residual " +
                                std::to_string(residual) + ")");
  }
}

QaoaResult qaoa_apply(const QaoaInstance& inst, const PhaseVector& beta, const PhaseVector& gamma) {
  if (beta.size() != inst.layers || gamma.size() != inst.layers) {
    throw std::invalid_argument("expected " + std::to_string(inst.layers) +
                                " beta and gamma angles");
  }
  CVector psi = inst.initial.amplitudes();
  for (int k = 0; k < inst.layers; ++k) {
    psi = inst.hc.evolve(psi, gamma[k]);
    psi = inst.hb.evolve(psi, beta[k]);
  }
  psi.normalize();
  StateVector state(std::move(psi));
  const double value = expectation(state, inst.hc);
  return {std::move(state), value};
}

// ---------------------------------------------------------------------------
// Single layer

QaoaInstance qaoa_single_layer_instance(const Graph& g, double tau, int m) {
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
  const int d = g.vertex_count();
  const ErgodicSpectrum spec = ergodic_energies(d, m);
  if (!(spec.energies[0] < 1.0)) {
    throw std::invalid_argument("m = " + std::to_string(m) +
                                " gives E_1 >= 1; the mixer ground state needs m >= 7");
  }
  const int n = 2 * d + 1;
  Eigen::VectorXd hb(n);
  for (int j = 0; j < d; ++j) {
    hb[2 * j] = spec.energies[j];
    hb[2 * j + 1] = -spec.energies[j];
  }
  hb[n - 1] = -1.0;

  Eigen::MatrixXd hc = Eigen::MatrixXd::Zero(n, n);
  hc.topLeftCorner(2 * d, 2 * d) = logdim_observable_matrix(g);
  const double plus = tau / std::sqrt(2.0 * d);
  for (int j = 0; j < 2 * d; ++j) {
    hc(j, n - 1) = plus;
    hc(n - 1, j) = plus;
  }
  return QaoaInstance(HermitianOperator::diagonal(std::move(hb)), HermitianOperator::dense(hc), 1,
                      StateVector::basis(n, n - 1),
                      [g, spec, tau](const PhaseVector& beta, const PhaseVector& gamma) {
                        return qaoa1_closed_form(g, spec, tau, beta[0], gamma[0]);
                      });
}

double qaoa1_f(const Graph& g, const ErgodicSpectrum& spec, double beta) {
  return mu(g, PhaseVector(spec.energies * beta));
}

double qaoa1_g(const ErgodicSpectrum& spec, double beta) {
  double sum = 0.0;
  for (int j = 0; j < spec.size(); ++j) sum += std::cos(spec.energies[j] * beta);
  return -std::sin(beta) / spec.size() * sum;
}

double qaoa1_closed_form(const Graph& g, const ErgodicSpectrum& spec, double tau, double beta,
                         double gamma) {
  const double s = std::sin(tau * gamma);
  const double c = std::cos(tau * gamma);
  return s * s * qaoa1_f(g, spec, beta) + 2.0 * tau * c * s * qaoa1_g(spec, beta);
}

// ---------------------------------------------------------------------------
// Multilayer

namespace {

using Block2 = Eigen::Matrix2cd;

// Two-level generators of the transfer Hamiltonians.
Block2 transfer_h0() {
  Block2 h;
  h << 0.5, Complex(0, -0.5), Complex(0, 0.5), 0.5;
  return h;
}
Block2 transfer_h1() {
  Block2 h;
  h << 0, Complex(0, -1), Complex(0, 1), 0;
  return h;
}
Block2 transfer_h2() {
  Block2 h;
  h << -1, -1, -1, -1;
  return h;
}
Block2 transfer_h3() {
  Block2 h;
  h << 1, 1, 1, 1;
  return h;
}

// Selects the two-level generator of H_T^(kappa) for |i,j,a,b>. Clauses are
// tried in order and the first match wins.
Block2 transfer_case(int kappa, int i, int j, int a, int b) {
  if (i == j || a == 0) return transfer_h1();
  if (i == kappa || (j == kappa && b == 0)) return transfer_h2();
  if (j == kappa && b == 1) return transfer_h3();
  return transfer_h1();
}

// Adds a per-basis-state two-level coupling between subspaces `first` and
// `first + 1`.
template <typename CaseFn>
void add_transfer(CMatrix& h, int d, int first, CaseFn&& pick) {
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          const Block2 t = pick(i, j, a, b);
          const int p = multilayer_index(d, first, i, j, a, b);
          const int q = multilayer_index(d, first + 1, i, j, a, b);
          h(p, p) += t(0, 0);
          h(p, q) += t(0, 1);
          h(q, p) += t(1, 0);
          h(q, q) += t(1, 1);
        }
      }
    }
  }
}

}  // namespace

int multilayer_index(int d, int ell, int i, int j, int a, int b) {
  return (((ell * d + i) * d + j) * 2 + a) * 2 + b;
}

QaoaInstance qaoa_multilayer_instance(const Graph& g) {
  const int d = g.vertex_count();
  if (d > kMaxMultilayerVertices) {
    throw std::invalid_argument("multilayer QAOA construction limited to d <= " +
                                std::to_string(kMaxMultilayerVertices));
  }
  const int block = 4 * d * d;
  const int n = (2 * d + 1) * block;
  const double total = 2.0 * g.edge_count();  // sum_{ij} A_ij

  // |gs_b> embedded in subspace 0
  CVector gs = CVector::Zero(n);
  const double amp = 1.0 / (2.0 * std::sqrt(total));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (i == j || !g.adjacent(i, j)) continue;
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) gs[multilayer_index(d, 0, i, j, a, b)] = amp;
      }
    }
  }

  CMatrix hb = CMatrix::Zero(n, n);
  hb.topLeftCorner(block, block) = -3.0 * gs.head(block) * gs.head(block).adjoint();
  for (int kappa = 0; kappa < d; ++kappa) {
    add_transfer(hb, d, 1 + 2 * kappa,
                 [kappa](int i, int j, int a, int b) { return transfer_case(kappa, i, j, a, b); });
  }

  CMatrix hc = CMatrix::Zero(n, n);
  for (int k = 0; k < d; ++k) {
    add_transfer(hc, d, 2 * k, [](int, int, int, int) { return transfer_h0(); });
  }
  const int last = 2 * d;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          for (int b2 = 0; b2 < 2; ++b2) {
            hc(multilayer_index(d, last, i, j, a, b), multilayer_index(d, last, i, j, 1 - a, b2)) = 0.5;
          }
        }
      }
    }
  }

  return QaoaInstance(HermitianOperator::dense(hb), HermitianOperator::dense(hc), d,
                      StateVector(std::move(gs)),
                      [g](const PhaseVector& beta, const PhaseVector& gamma) {
                        return multilayer_lower_bound(g, beta, gamma);
                      },
                      ClosedFormKind::lower_bound);
}

double multilayer_lower_bound(const Graph& g, const PhaseVector& beta, const PhaseVector& gamma) {
  const int d = g.vertex_count();
  if (beta.size() != d || gamma.size() != d) {
    throw std::invalid_argument("multilayer QAOA takes d beta and d gamma angles");
  }
  Eigen::VectorXd sin_beta(d);
  double weight = 1.0;
  for (int k = 0; k < d; ++k) {
    sin_beta[k] = exact_sincos(beta[k]).first;
    const double half_gamma = exact_sincos(0.5 * gamma[k]).first;
    weight *= sin_beta[k] * sin_beta[k] * half_gamma * half_gamma;
  }
  double f = 0.0;
  for (auto [i, j] : g.edges()) f += 2.0 * sin_beta[i] * sin_beta[j];
  return weight * f / (2.0 * g.edge_count());
}

double multilayer_optimum(const Graph& g) {
  return 1.0 - 2.0 * maxcut_bruteforce(g).value / g.edge_count();
}

std::pair<PhaseVector, PhaseVector> multilayer_encoding(const Bipartition& b) {
  Eigen::VectorXd beta(b.size());
  for (int i = 0; i < b.size(); ++i) beta[i] = b[i] == 1 ? std::numbers::pi / 2 : 3 * std::numbers::pi / 2;
  return {PhaseVector(std::move(beta)), PhaseVector(Eigen::VectorXd::Constant(b.size(), std::numbers::pi))};
}

}  // namespace vqalab
