#include "vqalab/maxcut.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

namespace vqalab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

Graph::Graph(Eigen::MatrixXi adjacency) : adjacency_(std::move(adjacency)) {
  const auto d = adjacency_.rows();
  if (d == 0 || adjacency_.cols() != d) {
    throw std::invalid_argument("adjacency matrix must be square and non-empty");
  }
  neighbors_.resize(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    if (adjacency_(i, i) != 0) throw std::invalid_argument("adjacency diagonal must vanish");
    for (Eigen::Index j = 0; j < d; ++j) {
      const int a = adjacency_(i, j);
      if (a != 0 && a != 1) throw std::invalid_argument("adjacency entries must be 0 or 1");
      if (a != adjacency_(j, i)) throw std::invalid_argument("adjacency matrix must be symmetric");
      if (a) neighbors_[i].push_back(static_cast<int>(j));
      if (a && i < j) ++edge_count_;
    }
  }
  if (edge_count_ == 0) throw std::invalid_argument("graph must have at least one edge");
}

Graph Graph::from_edges(int vertex_count, const std::vector<std::pair<int, int>>& edges) {
  if (vertex_count <= 0) throw std::invalid_argument("vertex count must be positive");
  Eigen::MatrixXi a = Eigen::MatrixXi::Zero(vertex_count, vertex_count);
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    if (u == v) throw std::invalid_argument("self-loop");
    if (a(u, v)) throw std::invalid_argument("duplicate edge");
    a(u, v) = a(v, u) = 1;
  }
  return Graph(std::move(a));
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(edge_count_);
  for (int i = 0; i < vertex_count(); ++i) {
    for (int j : neighbors_[i]) {
      if (i < j) out.emplace_back(i, j);
    }
  }
  return out;
}

Bipartition::Bipartition(std::vector<int> signs) : signs_(std::move(signs)) {
  for (int s : signs_) {
    if (s != 1 && s != -1) throw std::invalid_argument("bipartition entries must be +1 or -1");
  }
}

Bipartition Bipartition::flipped(int i) const {
  auto s = signs_;
  s.at(i) = -s.at(i);
  return Bipartition(std::move(s));
}

PhaseVector::PhaseVector(Eigen::VectorXd angles) : angles_(std::move(angles)) {
  if (!angles_.allFinite()) throw std::invalid_argument("phase vector entries must be finite");
}

PhaseVector::PhaseVector(std::initializer_list<double> angles)
    : PhaseVector(Eigen::Map<const Eigen::VectorXd>(angles.begin(),
                                                     static_cast<Eigen::Index>(angles.size()))) {}

PhaseVector PhaseVector::reduced() const {
  return PhaseVector(angles_.unaryExpr([](double x) { return reduce_angle(x); }));
}

double reduce_angle(double phi) {
  double r = std::fmod(phi, kTwoPi);
  if (r < 0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

std::pair<double, double> exact_sincos(double phi) {
  constexpr double pi = std::numbers::pi;
  const double r = reduce_angle(phi);
  if (r == 0.0) return {0.0, 1.0};
  if (r == pi) return {0.0, -1.0};
  if (r == pi / 2) return {1.0, 0.0};
  if (r == 3 * pi / 2) return {-1.0, 0.0};
  return {std::sin(phi), std::cos(phi)};
}

Graph parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  int d = -1;
  int header_line = 0;
  std::vector<std::pair<int, int>> edges;
  std::set<std::pair<int, int>> seen;

  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;

    std::istringstream fields(line);
    if (d < 0) {
      std::string extra;
      if (!(fields >> d) || (fields >> extra)) throw ParseError(line_no, "expected vertex count");
      if (d <= 0) throw ParseError(line_no, "vertex count must be positive");
      header_line = line_no;
      continue;
    }
    long long u = 0, v = 0;
    std::string extra;
    if (!(fields >> u >> v) || (fields >> extra)) {
      throw ParseError(line_no, "malformed edge line, expected two vertex indices");
    }
    if (u < 1 || v < 1 || u > d || v > d) throw ParseError(line_no, "vertex index out of range");
    if (u == v) throw ParseError(line_no, "self-loop");
    if (u > v) throw ParseError(line_no, "edge must be written as u v with u < v");
    const std::pair<int, int> e{static_cast<int>(u) - 1, static_cast<int>(v) - 1};
    if (!seen.insert(e).second) throw ParseError(line_no, "duplicate edge");
    edges.push_back(e);
  }
  if (d < 0) throw ParseError(line_no == 0 ? 1 : line_no, "missing vertex count");
  if (edges.empty()) throw ParseError(header_line, "graph has no edges");
  return Graph::from_edges(d, edges);
}

std::string format_graph(const Graph& g) {
  std::ostringstream out;
  out << g.vertex_count() << '\n';
  for (auto [u, v] : g.edges()) out << u + 1 << ' ' << v + 1 << '\n';
  return out.str();
}

Graph random_graph(int d, double edge_probability, std::uint64_t seed) {
  if (d < 2) throw std::invalid_argument("random graph needs at least two vertices");
  if (!(edge_probability > 0.0 && edge_probability <= 1.0)) {
    throw std::invalid_argument("edge probability must lie in (0, 1]");
  }
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(edge_probability);
  for (;;) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < d; ++i) {
      for (int j = i + 1; j < d; ++j) {
        if (coin(rng)) edges.emplace_back(i, j);
      }
    }
    if (!edges.empty()) return Graph::from_edges(d, edges);
  }
}

int cut_value(const Graph& g, const Bipartition& b) {
  if (b.size() != g.vertex_count()) throw std::invalid_argument("bipartition size mismatch");
  int cut = 0;
  for (auto [u, v] : g.edges()) {
    if (b[u] != b[v]) ++cut;
  }
  return cut;
}

CutResult maxcut_bruteforce(const Graph& g, int exhaustive_limit) {
  const int d = g.vertex_count();
  if (d > exhaustive_limit) {
    throw std::invalid_argument("exhaustive MaxCut refused: " + std::to_string(d) +
                                " vertices exceeds the limit of " +
                                std::to_string(exhaustive_limit) + " (2^(d-1) bipartitions)");
  }
  // Gray-code walk over vertices 0..d-2; vertex d-1 stays on the +1 side.
  std::vector<int> s(d, 1);
  int cut = 0;
  int best = 0;
  std::vector<int> best_s = s;
  const std::uint64_t count = std::uint64_t{1} << (d - 1);
  for (std::uint64_t k = 1; k < count; ++k) {
    const int v = std::countr_zero(k);
    int delta = 0;
    for (int u : g.neighbors(v)) delta += (s[u] == s[v]) ? 1 : -1;
    s[v] = -s[v];
    cut += delta;
    if (cut > best) {
      best = cut;
      best_s = s;
    }
  }
  return {best, Bipartition(std::move(best_s))};
}

namespace {

int flip_gain(const Graph& g, const std::vector<int>& s, int v) {
  int gain = 0;
  for (int u : g.neighbors(v)) gain += (s[u] == s[v]) ? 1 : -1;
  return gain;
}

}  // namespace

GreedyResult maxcut_greedy(const Graph& g, std::uint64_t seed) {
  const int d = g.vertex_count();
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  std::vector<int> s(d);
  for (int& x : s) x = coin(rng) ? 1 : -1;

  int flips = 0;
  bool improved = true;
  while (improved) {
    improved = false;
    for (int v = 0; v < d; ++v) {
      if (flip_gain(g, s, v) > 0) {
        s[v] = -s[v];
        ++flips;
        improved = true;
        break;
      }
    }
  }
  Bipartition witness(std::move(s));
  const int value = cut_value(g, witness);
  return {value, std::move(witness), flips};
}

bool is_single_flip_optimal(const Graph& g, const Bipartition& b) {
  const int base = cut_value(g, b);
  for (int v = 0; v < b.size(); ++v) {
    if (cut_value(g, b.flipped(v)) > base) return false;
  }
  return true;
}

namespace {

void check_dims(const Graph& g, const PhaseVector& phi) {
  if (phi.size() != g.vertex_count()) {
    throw std::invalid_argument("phase vector length " + std::to_string(phi.size()) +
                                " does not match vertex count " +
                                std::to_string(g.vertex_count()));
  }
}

struct Trig {
  Eigen::VectorXd sin;
  Eigen::VectorXd cos;
};

Trig trig(const PhaseVector& phi) {
  Trig t{Eigen::VectorXd(phi.size()), Eigen::VectorXd(phi.size())};
  for (int i = 0; i < phi.size(); ++i) {
    std::tie(t.sin[i], t.cos[i]) = exact_sincos(phi[i]);
  }
  return t;
}

// sum_{j != i} A_ij cos(phi_j)
Eigen::VectorXd neighbor_cosines(const Graph& g, const Eigen::VectorXd& cos) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(cos.size());
  for (int i = 0; i < g.vertex_count(); ++i) {
    for (int j : g.neighbors(i)) out[i] += cos[j];
  }
  return out;
}

}  // namespace

double mu(const Graph& g, const PhaseVector& phi) {
  check_dims(g, phi);
  const auto t = trig(phi);
  double sum = 0.0;
  for (auto [i, j] : g.edges()) sum += t.cos[i] * t.cos[j] - 1.0;
  // Each unordered edge appears twice in the ordered sum.
  return 0.5 * sum;
}

Eigen::VectorXd mu_gradient(const Graph& g, const PhaseVector& phi) {
  check_dims(g, phi);
  const auto t = trig(phi);
  const Eigen::VectorXd nc = neighbor_cosines(g, t.cos);
  return -0.5 * t.sin.cwiseProduct(nc);
}

Eigen::MatrixXd mu_hessian(const Graph& g, const PhaseVector& phi) {
  check_dims(g, phi);
  const auto t = trig(phi);
  const Eigen::VectorXd nc = neighbor_cosines(g, t.cos);
  const int d = g.vertex_count();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    h(i, i) = -0.5 * t.cos[i] * nc[i];
    for (int k : g.neighbors(i)) h(i, k) = 0.5 * t.sin[i] * t.sin[k];
  }
  return h;
}

PhaseVector round_to_discrete(const Graph& g, const PhaseVector& phi) {
  check_dims(g, phi);
  Eigen::VectorXd x = phi.angles();
  for (int i = 0; i < x.size(); ++i) {
    x[i] = 0.0;
    const double at_zero = mu(g, PhaseVector(x));
    x[i] = std::numbers::pi;
    const double at_pi = mu(g, PhaseVector(x));
    x[i] = (at_pi < at_zero) ? std::numbers::pi : 0.0;
  }
  return PhaseVector(std::move(x));
}

bool is_discrete(const PhaseVector& phi, double tol) {
  for (int i = 0; i < phi.size(); ++i) {
    const double r = reduce_angle(phi[i]);
    const bool near_zero = r <= tol || kTwoPi - r <= tol;
    const bool near_pi = std::abs(r - std::numbers::pi) <= tol;
    if (!near_zero && !near_pi) return false;
  }
  return true;
}

Bipartition to_bipartition(const PhaseVector& phi) {
  if (!is_discrete(phi)) throw std::invalid_argument("phase vector is not in {0, pi}^d");
  std::vector<int> s(phi.size());
  for (int i = 0; i < phi.size(); ++i) {
    s[i] = std::abs(reduce_angle(phi[i]) - std::numbers::pi) <= kDiscreteTolerance ? -1 : 1;
  }
  return Bipartition(std::move(s));
}

PhaseVector to_phases(const Bipartition& b) {
  Eigen::VectorXd x(b.size());
  for (int i = 0; i < b.size(); ++i) x[i] = b[i] == 1 ? 0.0 : std::numbers::pi;
  return PhaseVector(std::move(x));
}

bool is_discrete_local_min(const Graph& g, const PhaseVector& phi) {
  check_dims(g, phi);
  // Canonicalize so that the comparison uses exact +-1 cosines.
  const PhaseVector base = to_phases(to_bipartition(phi));
  const double value = mu(g, base);
  Eigen::VectorXd x = base.angles();
  for (int i = 0; i < x.size(); ++i) {
    const double keep = x[i];
    x[i] = keep == 0.0 ? std::numbers::pi : 0.0;
    const double swapped = mu(g, PhaseVector(x));
    x[i] = keep;
    if (swapped < value) return false;
  }
  return true;
}

}  // namespace vqalab
