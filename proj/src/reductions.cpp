#include "vqalab/reductions.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace vqalab {

namespace {

constexpr std::array<std::pair<Family, std::string_view>, 7> kFamilyTags{{
    {Family::oracular, "oracular"},
    {Family::boosted, "boosted"},
    {Family::logdim, "logdim"},
    {Family::single_layer, "single-layer"},
    {Family::qaoa1, "qaoa1"},
    {Family::qaoa_multi, "qaoa-multi"},
    {Family::fermion, "fermion"},
}};

void require_qubits(int n, int limit, const char* what) {
  if (n > limit) {
    throw std::invalid_argument(std::string(what) + ": " + std::to_string(n) +
                                " qubits exceeds the dense limit of " + std::to_string(limit));
  }
}

// -(number of cut edges) for the spin configuration encoded by `index`.
double ising_energy(const Graph& g, std::uint64_t index) {
  const int d = g.vertex_count();
  double sum = 0.0;
  for (auto [i, j] : g.edges()) {
    sum += 0.5 * (z_eigenvalue(d, i, index) * z_eigenvalue(d, j, index) - 1);
  }
  return sum;
}

}  // namespace

std::string_view family_tag(Family f) {
  for (auto [family, tag] : kFamilyTags) {
    if (family == f) return tag;
  }
  throw std::logic_error("unknown family");
}

std::optional<Family> parse_family(std::string_view tag) {
  for (auto [family, name] : kFamilyTags) {
    if (name == tag) return family;
  }
  return std::nullopt;
}

const std::vector<Family>& all_families() {
  static const std::vector<Family> families = [] {
    std::vector<Family> out;
    for (auto [family, tag] : kFamilyTags) out.push_back(family);
    return out;
  }();
  return families;
}

HermitianOperator ising_observable(const Graph& g) {
  const int d = g.vertex_count();
  require_qubits(d, kMaxDiagonalQubits, "Ising observable");
  const std::uint64_t dim = std::uint64_t{1} << d;
  Eigen::VectorXd diag(static_cast<Eigen::Index>(dim));
  for (std::uint64_t s = 0; s < dim; ++s) diag[static_cast<Eigen::Index>(s)] = ising_energy(g, s);
  return HermitianOperator::diagonal(std::move(diag));
}

VqaInstance oracular_vqa_instance(const Graph& g) {
  const int d = g.vertex_count();
  require_qubits(d, kMaxSimulatedQubits, "oracular circuit simulation");
  std::vector<HermitianOperator> gens;
  gens.reserve(d);
  for (int i = 0; i < d; ++i) {
    gens.push_back(HermitianOperator::dense(single_qubit_operator(d, i, 0.5 * pauli_y())));
  }
  return VqaInstance(StateVector::basis(1 << d, 0), std::move(gens), ising_observable(g),
                     [g](const PhaseVector& phi) { return mu(g, phi); });
}

double oracular_vqa_expectation(const Graph& g, const PhaseVector& phi) { return mu(g, phi); }

HermitianOperator boosted_observable(const Graph& g, int k) {
  if (k < 1) throw std::invalid_argument("boosting power k must be positive");
  const int d = g.vertex_count();
  require_qubits(k * d, kMaxDiagonalQubits, "boosted observable");
  const Eigen::VectorXd base = ising_observable(g).diagonal_entries();
  Eigen::VectorXd diag = Eigen::VectorXd::Ones(1);
  for (int c = 0; c < k; ++c) {
    Eigen::VectorXd next(diag.size() * base.size());
    for (Eigen::Index a = 0; a < diag.size(); ++a) {
      next.segment(a * base.size(), base.size()) = diag[a] * base;
    }
    diag = std::move(next);
  }
  if ((k - 1) % 2 == 1) diag = -diag;
  return HermitianOperator::diagonal(std::move(diag));
}

VqaInstance boosted_vqa_instance(const Graph& g, int k) {
  if (k < 1) throw std::invalid_argument("boosting power k must be positive");
  const int d = g.vertex_count();
  const int n = k * d;
  require_qubits(n, kMaxSimulatedQubits, "boosted circuit simulation");
  std::vector<HermitianOperator> gens;
  gens.reserve(d);
  for (int i = 0; i < d; ++i) {
    CMatrix h = CMatrix::Zero(1 << n, 1 << n);
    for (int c = 0; c < k; ++c) h += single_qubit_operator(n, c * d + i, 0.5 * pauli_y());
    gens.push_back(HermitianOperator::dense(h));
  }
  return VqaInstance(StateVector::basis(1 << n, 0), std::move(gens), boosted_observable(g, k),
                     [g, k](const PhaseVector& phi) { return boosted_expectation(g, k, phi); });
}

double boosted_expectation(const Graph& g, int k, const PhaseVector& phi) {
  if (k < 1) throw std::invalid_argument("boosting power k must be positive");
  return -std::pow(std::abs(mu(g, phi)), k);
}

Eigen::MatrixXd logdim_observable_matrix(const Graph& g) {
  const int d = g.vertex_count();
  const Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(2, 2);
  Eigen::MatrixXd o(2 * d, 2 * d);
  for (int u = 0; u < d; ++u) {
    for (int v = 0; v < d; ++v) {
      o.block<2, 2>(2 * u, 2 * v) = (d / 8.0) * g.adjacency()(u, v) * ones;
    }
  }
  const Eigen::RowVectorXd column_sums = o.colwise().sum();
  for (int j = 0; j < 2 * d; ++j) o(j, j) = -column_sums[j];
  return o;
}

VqaInstance logdim_vqa_instance(const Graph& g) {
  const int d = g.vertex_count();
  std::vector<HermitianOperator> gens;
  gens.reserve(d);
  for (int i = 0; i < d; ++i) {
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(2 * d);
    diag[2 * i] = 1.0;
    diag[2 * i + 1] = -1.0;
    gens.push_back(HermitianOperator::diagonal(std::move(diag)));
  }
  return VqaInstance(StateVector::uniform(2 * d), std::move(gens),
                     HermitianOperator::dense(logdim_observable_matrix(g)),
                     [g](const PhaseVector& phi) { return mu(g, phi); });
}

bool verify_certificate(const VqaInstance& inst, const PhaseVector& phi, double a) {
  return expectation(apply_circuit(inst, phi), inst.observable) <= a + 1e-9;
}

VqaInstance single_layer_instance(const Graph& g, int m) {
  const int d = g.vertex_count();
  const ErgodicSpectrum spec = ergodic_energies(d, m);
  Eigen::VectorXd diag(2 * d);
  for (int j = 0; j < d; ++j) {
    diag[2 * j] = spec.energies[j];
    diag[2 * j + 1] = -spec.energies[j];
  }
  std::vector<HermitianOperator> gens{HermitianOperator::diagonal(std::move(diag))};
  return VqaInstance(StateVector::uniform(2 * d), std::move(gens),
                     HermitianOperator::dense(logdim_observable_matrix(g)),
                     [g, spec](const PhaseVector& phi) {
                       if (phi.size() != 1) throw std::invalid_argument("single-layer circuit takes one angle");
                       return mu(g, PhaseVector(spec.energies * phi[0]));
                     });
}

}  // namespace vqalab
