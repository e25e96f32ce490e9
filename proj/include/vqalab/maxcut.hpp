#pragma once

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace vqalab {

/// Raised by parse_graph; carries the 1-based line number of the offending line.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Unweighted, undirected, loop-free graph with at least one edge.
///
/// Vertices are 0-indexed internally; the text format is 1-indexed.
class Graph {
 public:
  /// Validates symmetry, zero diagonal, binary entries and edge count >= 1.
  explicit Graph(Eigen::MatrixXi adjacency);

  /// Edges are 0-indexed vertex pairs. Duplicates and self-loops are rejected.
  static Graph from_edges(int vertex_count, const std::vector<std::pair<int, int>>& edges);

  int vertex_count() const { return static_cast<int>(adjacency_.rows()); }
  int edge_count() const { return edge_count_; }
  bool adjacent(int i, int j) const { return adjacency_(i, j) != 0; }
  int degree(int v) const { return static_cast<int>(neighbors_[v].size()); }

  const Eigen::MatrixXi& adjacency() const { return adjacency_; }
  /// Adjacency as doubles, for the operator constructions.
  Eigen::MatrixXd adjacency_real() const { return adjacency_.cast<double>(); }
  const std::vector<int>& neighbors(int v) const { return neighbors_[v]; }
  /// Edge list with i < j, lexicographically ordered.
  std::vector<std::pair<int, int>> edges() const;

  bool operator==(const Graph& other) const { return adjacency_ == other.adjacency_; }

 private:
  Eigen::MatrixXi adjacency_;
  std::vector<std::vector<int>> neighbors_;
  int edge_count_ = 0;
};

/// Vertex assignment to the two sides of a cut, entries in {-1, +1}.
class Bipartition {
 public:
  explicit Bipartition(std::vector<int> signs);
  static Bipartition all_plus(int d) { return Bipartition(std::vector<int>(d, 1)); }

  int size() const { return static_cast<int>(signs_.size()); }
  int operator[](int i) const { return signs_[i]; }
  const std::vector<int>& signs() const { return signs_; }
  Bipartition flipped(int i) const;

  bool operator==(const Bipartition& other) const = default;

 private:
  std::vector<int> signs_;
};

/// Circuit angles. Entries are finite; reduced() maps them into [0, 2pi).
class PhaseVector {
 public:
  PhaseVector() = default;
  explicit PhaseVector(Eigen::VectorXd angles);
  PhaseVector(std::initializer_list<double> angles);
  static PhaseVector zeros(int n) { return PhaseVector(Eigen::VectorXd::Zero(n)); }

  int size() const { return static_cast<int>(angles_.size()); }
  double operator[](int i) const { return angles_[i]; }
  const Eigen::VectorXd& angles() const { return angles_; }
  PhaseVector reduced() const;

 private:
  Eigen::VectorXd angles_;
};

/// Reduces one angle into [0, 2pi).
double reduce_angle(double phi);

/// sin/cos that return exact values at the doubles nearest 0, pi/2, pi and 3pi/2
/// (after reduction), so discrete angle vectors evaluate without rounding noise.
std::pair<double, double> exact_sincos(double phi);

/// Parses the edge-list format: first non-comment line is d, then "u v" lines
/// with 1 <= u < v <= d. Lines starting with '#' and blank lines are skipped.
Graph parse_graph(std::string_view text);
std::string format_graph(const Graph& g);

/// Erdos-Renyi G(d, p). Draws again from the same stream until an edge appears.
Graph random_graph(int d, double edge_probability, std::uint64_t seed);

int cut_value(const Graph& g, const Bipartition& b);

struct CutResult {
  int value = 0;
  Bipartition witness = Bipartition::all_plus(1);
};

inline constexpr int kDefaultExhaustiveLimit = 24;

/// Exhaustive search over the 2^(d-1) distinct bipartitions.
CutResult maxcut_bruteforce(const Graph& g, int exhaustive_limit = kDefaultExhaustiveLimit);

struct GreedyResult {
  int value = 0;
  Bipartition witness = Bipartition::all_plus(1);
  int flips = 0;
};

/// Single-flip local search from a seeded random bipartition. Sweeps vertices in
/// index order, applies the first improving flip and restarts the sweep.
GreedyResult maxcut_greedy(const Graph& g, std::uint64_t seed);

bool is_single_flip_optimal(const Graph& g, const Bipartition& b);

/// mu(phi) = 1/4 sum_{i,j} A_ij [cos(phi_i) cos(phi_j) - 1]
double mu(const Graph& g, const PhaseVector& phi);
Eigen::VectorXd mu_gradient(const Graph& g, const PhaseVector& phi);
Eigen::MatrixXd mu_hessian(const Graph& g, const PhaseVector& phi);

/// Coordinate-wise rounding to {0, pi}^d that never increases mu. Ties go to 0.
PhaseVector round_to_discrete(const Graph& g, const PhaseVector& phi);

inline constexpr double kDiscreteTolerance = 1e-9;

bool is_discrete(const PhaseVector& phi, double tol = kDiscreteTolerance);

/// True iff no single 0 <-> pi swap strictly decreases mu. Throws on non-discrete input.
bool is_discrete_local_min(const Graph& g, const PhaseVector& phi);

/// 0 -> +1, pi -> -1. Throws on non-discrete input.
Bipartition to_bipartition(const PhaseVector& phi);
PhaseVector to_phases(const Bipartition& b);

}  // namespace vqalab
