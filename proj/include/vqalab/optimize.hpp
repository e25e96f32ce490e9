#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vqalab/fermions.hpp"
#include "vqalab/maxcut.hpp"
#include "vqalab/reductions.hpp"

namespace vqalab {

struct OptimizerConfig {
  int max_iters = 10000;
  double grad_tol = 1e-8;
  double initial_step = 0.5;
  std::uint64_t seed = 0;
  int restarts = 10;
  double finite_diff_step = 1e-5;
  double armijo = 1e-4;
  double shrink = 0.5;

  /// Throws std::invalid_argument on non-positive fields or grad_tol >= initial_step.
  void validate() const;
};

/// Scalar landscape over R^n. A missing gradient is replaced by central differences.
struct Objective {
  int dimension = 0;
  std::function<double(const Eigen::VectorXd&)> value;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> gradient;
};

Eigen::VectorXd central_difference_gradient(const Objective& f, const Eigen::VectorXd& x,
                                            double step);

struct TrajectoryPoint {
  int iteration;
  double value;
};

struct DescentResult {
  double value = 0;
  Eigen::VectorXd params;
  std::vector<TrajectoryPoint> trajectory;
  bool converged = false;
  int iterations = 0;
  double gradient_norm = 0;
  /// Set when the restart was aborted (non-finite objective).
  std::optional<std::string> diagnostic;
};

/// Steepest descent with Armijo backtracking. The trajectory is monotone
/// non-increasing; converged means the final gradient norm is <= grad_tol.
DescentResult gradient_descent(const Objective& f, const Eigen::VectorXd& init,
                               const OptimizerConfig& cfg);

struct MultistartResult {
  std::vector<DescentResult> runs;
  /// Index of the best non-aborted run.
  int best = -1;

  const DescentResult& best_run() const { return runs.at(best); }
};

/// cfg.restarts descents from uniform [0, 2pi)^n starts; restart r draws its
/// start from an RNG seeded with cfg.seed + r.
MultistartResult multistart(const Objective& f, const OptimizerConfig& cfg);

Eigen::VectorXd random_start(int dimension, std::uint64_t seed);

struct DiscreteSearchResult {
  double value;
  PhaseVector phases;
};

/// Greedy single-flip search seen through mu: returns mu = -cut at the greedy witness.
DiscreteSearchResult discrete_local_search(const Graph& g, std::uint64_t seed);

/// Largest grid the scalar-parameter reference search may evaluate.
inline constexpr long long kDefaultGridBudget = 4'000'000;

/// <O>_min over the ansatz class.
///
/// Discrete families (oracular, boosted, logdim, fermion) take the minimum of
/// the closed form over {0, pi}^d; single-layer families scan one period of the
/// scalar parameter on a grid with 64 points per fastest oscillation and refine
/// the best candidates by descent.
double reference_minimum(const VqaInstance& inst, Family family, long long grid_budget = kDefaultGridBudget);
/// Multilayer QAOA: minimum of the closed form over beta in {pi/2, 3pi/2}^d, gamma = pi.
/// Single-layer QAOA: minimum over gamma in closed form, then a grid over beta in
/// one period of f.
double reference_minimum(const QaoaInstance& inst, Family family, const Graph& g,
                         long long grid_budget = kDefaultGridBudget);
double reference_minimum(const FermionInstance& inst);

struct ErrorMetrics {
  double delta = 0;
  double delta_m = 0;
  double delta_o = 0;
};

/// delta_m = (<O>_min - lambda_min)/sw, delta_o = (<O>_a - <O>_min)/sw.
/// Values within 1e-9 of [0, 1] are clamped; anything further out throws.
ErrorMetrics error_metrics(double best_value, double reference_min, double lambda_min,
                           double lambda_max);

}  // namespace vqalab
