#include "vqalab/fermions.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "vqalab/reductions.hpp"

namespace vqalab {

namespace {

void require_hermitian(const CMatrix& m, const char* what) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw std::invalid_argument(std::string(what) + " must be a non-empty square matrix");
  }
  if (!m.allFinite()) throw std::invalid_argument(std::string(what) + " has non-finite entries");
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kHermitianTolerance) {
    throw std::invalid_argument(std::string(what) + " is not Hermitian");
  }
}

Spectrum diagonalize(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

CMatrix from_occupations(const Spectrum& s, const Eigen::VectorXd& occupation) {
  return s.vectors * occupation.cast<Complex>().asDiagonal() * s.vectors.adjoint();
}

// Parity of the occupied modes strictly below `mode`.
int jw_sign(std::uint32_t state, int mode) {
  const std::uint32_t below = state & ((std::uint32_t{1} << mode) - 1);
  return (std::popcount(below) % 2 == 0) ? 1 : -1;
}

void require_fock_modes(int modes) {
  if (modes > kMaxFockModes) {
    throw std::invalid_argument("Fock-space oracle limited to " + std::to_string(kMaxFockModes) +
                                " modes, got " + std::to_string(modes));
  }
}

}  // namespace

CoefficientMatrix::CoefficientMatrix(CMatrix entries) : entries_(std::move(entries)) {
  require_hermitian(entries_, "coefficient matrix");
  entries_ = 0.5 * (entries_ + entries_.adjoint()).eval();
}

CorrelationMatrix::CorrelationMatrix(CMatrix entries) : entries_(std::move(entries)) {
  require_hermitian(entries_, "correlation matrix");
  entries_ = 0.5 * (entries_ + entries_.adjoint()).eval();
  const Eigen::VectorXd values = diagonalize(entries_).values;
  if (values.minCoeff() < -1e-9 || values.maxCoeff() > 1.0 + 1e-9) {
    throw std::invalid_argument("correlation matrix spectrum leaves [0, 1]");
  }
}

FermionInstance::FermionInstance(CoefficientMatrix initial, std::vector<CoefficientMatrix> gens,
                                 CoefficientMatrix observable,
                                 std::function<double(const PhaseVector&)> closed)
    : h0(std::move(initial)),
      generators(std::move(gens)),
      o(std::move(observable)),
      closed_form(std::move(closed)) {
  if (h0.modes() != o.modes()) throw std::invalid_argument("mode counts do not agree");
  for (const auto& h : generators) {
    if (h.modes() != o.modes()) throw std::invalid_argument("mode counts do not agree");
  }
}

CorrelationMatrix thermal_covariance(const CoefficientMatrix& h, double beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw std::invalid_argument("inverse temperature must be finite and non-negative");
  }
  const Spectrum s = diagonalize(h.entries());
  Eigen::VectorXd occ(s.values.size());
  for (Eigen::Index k = 0; k < occ.size(); ++k) {
    const double x = beta * s.values[k];
    // 1/(e^x + 1) without overflow for large |x|
    occ[k] = x > 0 ? std::exp(-x) / (1.0 + std::exp(-x)) : 1.0 / (std::exp(x) + 1.0);
  }
  return CorrelationMatrix(from_occupations(s, occ));
}

CorrelationMatrix ground_covariance(const CoefficientMatrix& h) {
  const Spectrum s = diagonalize(h.entries());
  const double zero_tol = 1e-10 * std::max(1.0, s.values.cwiseAbs().maxCoeff());
  Eigen::VectorXd occ(s.values.size());
  for (Eigen::Index k = 0; k < occ.size(); ++k) {
    if (s.values[k] < -zero_tol) {
      occ[k] = 1.0;
    } else if (s.values[k] > zero_tol) {
      occ[k] = 0.0;
    } else {
      occ[k] = 0.5;
    }
  }
  return CorrelationMatrix(from_occupations(s, occ));
}

CoefficientMatrix evolve_coefficient(const CoefficientMatrix& o,
                                     const std::vector<CoefficientMatrix>& generators,
                                     const PhaseVector& phi) {
  if (phi.size() != static_cast<int>(generators.size())) {
    throw std::invalid_argument("expected " + std::to_string(generators.size()) + " angles");
  }
  CMatrix current = o.entries();
  for (int i = static_cast<int>(generators.size()) - 1; i >= 0; --i) {
    if (generators[i].modes() != o.modes()) throw std::invalid_argument("mode counts do not agree");
    const CMatrix u = herm_exp(generators[i].entries(), -phi[i]);  // e^{i h phi}
    current = u * current * u.adjoint();
  }
  return CoefficientMatrix(CMatrix(0.5 * (current + current.adjoint())));
}

double fermion_expectation(const CoefficientMatrix& o, const CorrelationMatrix& gamma) {
  if (o.modes() != gamma.modes()) throw std::invalid_argument("mode counts do not agree");
  const Complex value = o.entries().cwiseProduct(gamma.entries().transpose()).sum();
  if (std::abs(value.imag()) > kImaginaryResidueTolerance) {
    throw std::runtime_error("fermionic expectation has imaginary residue " +
                             std::to_string(value.imag()));
  }
  return value.real();
}

double fermion_instance_expectation(const FermionInstance& inst, const PhaseVector& phi) {
  return fermion_expectation(evolve_coefficient(inst.o, inst.generators, phi),
                             ground_covariance(inst.h0));
}

SpectralExtremes fermion_spectral_extremes(const CoefficientMatrix& o) {
  const Eigen::VectorXd values = diagonalize(o.entries()).values;
  SpectralExtremes out;
  for (double v : values) {
    if (v < 0) out.lambda_min += v;
    if (v > 0) out.lambda_max += v;
  }
  out.sw = out.lambda_max - out.lambda_min;
  return out;
}

FermionInstance fermionic_vqa_instance(const Graph& g) {
  const int d = g.vertex_count();
  const int n = 2 * d;
  std::vector<CoefficientMatrix> gens;
  gens.reserve(d);
  for (int i = 0; i < d; ++i) {
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    h(2 * i, 2 * i) = 1.0;
    h(2 * i + 1, 2 * i + 1) = -1.0;
    gens.emplace_back(h);
  }
  const Eigen::MatrixXd h0 =
      Eigen::MatrixXd::Identity(n, n) - (2.0 / n) * Eigen::MatrixXd::Ones(n, n);
  return FermionInstance(CoefficientMatrix(h0), std::move(gens),
                         CoefficientMatrix(logdim_observable_matrix(g)),
                         [g](const PhaseVector& phi) { return mu(g, phi); });
}

// ---------------------------------------------------------------------------
// Fock space

CMatrix fock_annihilation(int modes, int j) {
  require_fock_modes(modes);
  if (j < 0 || j >= modes) throw std::invalid_argument("mode index out of range");
  const std::uint32_t dim = std::uint32_t{1} << modes;
  CMatrix c = CMatrix::Zero(dim, dim);
  for (std::uint32_t s = 0; s < dim; ++s) {
    if (s & (std::uint32_t{1} << j)) c(s ^ (std::uint32_t{1} << j), s) = jw_sign(s, j);
  }
  return c;
}

CMatrix fock_operator(const CoefficientMatrix& h) {
  const int n = h.modes();
  require_fock_modes(n);
  const std::uint32_t dim = std::uint32_t{1} << n;
  CMatrix out = CMatrix::Zero(dim, dim);
  for (std::uint32_t s = 0; s < dim; ++s) {
    for (int j = 0; j < n; ++j) {
      const std::uint32_t bit_j = std::uint32_t{1} << j;
      if (!(s & bit_j)) continue;
      const std::uint32_t s1 = s ^ bit_j;
      const int sign1 = jw_sign(s, j);
      for (int i = 0; i < n; ++i) {
        const std::uint32_t bit_i = std::uint32_t{1} << i;
        if (s1 & bit_i) continue;
        const Complex coeff = h.entries()(i, j);
        if (coeff == Complex(0.0)) continue;
        out(s1 | bit_i, s) += coeff * static_cast<double>(sign1 * jw_sign(s1, i));
      }
    }
  }
  return out;
}

CMatrix fock_ground_space(const CoefficientMatrix& h) {
  const Spectrum s = diagonalize(fock_operator(h));
  const double tol = 1e-9 * std::max(1.0, std::abs(s.values[0]));
  int count = 0;
  while (count < s.values.size() && s.values[count] - s.values[0] <= tol) ++count;
  return s.vectors.leftCols(count);
}

CMatrix fock_ground_state(const CoefficientMatrix& h) {
  const CMatrix ground = fock_ground_space(h);
  return ground * ground.adjoint() / static_cast<double>(ground.cols());
}

CMatrix fock_thermal_state(const CoefficientMatrix& h, double beta) {
  const Spectrum s = diagonalize(fock_operator(h));
  Eigen::VectorXd weights = (-beta * (s.values.array() - s.values[0])).exp();
  weights /= weights.sum();
  return from_occupations(s, weights);
}

double fock_expectation(const CoefficientMatrix& o, const CMatrix& rho) {
  const CMatrix big_o = fock_operator(o);
  if (big_o.rows() != rho.rows()) throw std::invalid_argument("density matrix dimension mismatch");
  return (big_o * rho).trace().real();
}

FockInstance fock_lift(const FermionInstance& inst) {
  require_fock_modes(inst.modes());
  FockInstance out{fock_ground_space(inst.h0), {}, fock_operator(inst.o)};
  for (const auto& h : inst.generators) out.generators.push_back(HermitianOperator::dense(fock_operator(h)));
  return out;
}

double fock_bruteforce_expectation(const FockInstance& inst, const PhaseVector& phi) {
  if (phi.size() != static_cast<int>(inst.generators.size())) {
    throw std::invalid_argument("expected " + std::to_string(inst.generators.size()) + " angles");
  }
  double total = 0.0;
  for (Eigen::Index c = 0; c < inst.ground.cols(); ++c) {
    CVector psi = inst.ground.col(c);
    for (std::size_t i = 0; i < inst.generators.size(); ++i) {
      psi = inst.generators[i].evolve(psi, phi[static_cast<int>(i)]);
    }
    total += psi.dot(inst.o * psi).real();
  }
  return total / static_cast<double>(inst.ground.cols());
}

double fock_bruteforce_expectation(const FermionInstance& inst, const PhaseVector& phi) {
  return fock_bruteforce_expectation(fock_lift(inst), phi);
}

}  // namespace vqalab
