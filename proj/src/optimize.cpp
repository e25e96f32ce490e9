#include "vqalab/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace vqalab {

void OptimizerConfig::validate() const {
  if (max_iters <= 0) throw std::invalid_argument("max_iters must be positive");
  if (!(grad_tol > 0)) throw std::invalid_argument("grad_tol must be positive");
  if (!(initial_step > 0)) throw std::invalid_argument("initial_step must be positive");
  if (restarts <= 0) throw std::invalid_argument("restarts must be positive");
  if (!(finite_diff_step > 0)) throw std::invalid_argument("finite_diff_step must be positive");
  if (!(armijo > 0 && armijo < 1)) throw std::invalid_argument("armijo constant must lie in (0, 1)");
  if (!(shrink > 0 && shrink < 1)) throw std::invalid_argument("shrink factor must lie in (0, 1)");
  if (!(grad_tol < initial_step)) throw std::invalid_argument("grad_tol must be below initial_step");
}

Eigen::VectorXd central_difference_gradient(const Objective& f, const Eigen::VectorXd& x,
                                            double step) {
  Eigen::VectorXd grad(x.size());
  Eigen::VectorXd probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + step;
    const double up = f.value(probe);
    probe[i] = x[i] - step;
    const double down = f.value(probe);
    probe[i] = x[i];
    grad[i] = (up - down) / (2.0 * step);
  }
  return grad;
}

DescentResult gradient_descent(const Objective& f, const Eigen::VectorXd& init,
                               const OptimizerConfig& cfg) {
  cfg.validate();
  if (init.size() != f.dimension) throw std::invalid_argument("initial point has wrong dimension");
  auto gradient = [&](const Eigen::VectorXd& x) {
    return f.gradient ? f.gradient(x) : central_difference_gradient(f, x, cfg.finite_diff_step);
  };

  DescentResult r;
  r.params = init;
  r.value = f.value(init);
  r.trajectory.push_back({0, r.value});
  if (!std::isfinite(r.value)) {
    r.diagnostic = "objective is not finite at the initial point";
    return r;
  }

  Eigen::VectorXd grad = gradient(r.params);
  for (int it = 1; it <= cfg.max_iters; ++it) {
    r.gradient_norm = grad.norm();
    if (!std::isfinite(r.gradient_norm)) {
      r.diagnostic = "gradient is not finite at iteration " + std::to_string(it - 1);
      return r;
    }
    if (r.gradient_norm <= cfg.grad_tol) break;

    const double slope = r.gradient_norm * r.gradient_norm;
    double step = cfg.initial_step;
    bool accepted = false;
    Eigen::VectorXd candidate;
    double candidate_value = 0;
    while (step > 1e-20) {
      candidate = r.params - step * grad;
      candidate_value = f.value(candidate);
      if (!std::isfinite(candidate_value)) {
        r.diagnostic = "objective is not finite during line search at iteration " + std::to_string(it);
        return r;
      }
      if (candidate_value <= r.value - cfg.armijo * step * slope) {
        accepted = true;
        break;
      }
      step *= cfg.shrink;
    }
    if (!accepted) break;  // no representable step gives sufficient decrease

    r.params = std::move(candidate);
    r.value = candidate_value;
    r.iterations = it;
    r.trajectory.push_back({it, r.value});
    grad = gradient(r.params);
  }
  r.gradient_norm = grad.norm();
  r.converged = r.gradient_norm <= cfg.grad_tol;
  return r;
}

Eigen::VectorXd random_start(int dimension, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  Eigen::VectorXd x(dimension);
  for (int i = 0; i < dimension; ++i) x[i] = angle(rng);
  return x;
}

MultistartResult multistart(const Objective& f, const OptimizerConfig& cfg) {
  cfg.validate();
  MultistartResult out;
  out.runs.reserve(cfg.restarts);
  for (int r = 0; r < cfg.restarts; ++r) {
    out.runs.push_back(gradient_descent(f, random_start(f.dimension, cfg.seed + r), cfg));
    const auto& run = out.runs.back();
    if (run.diagnostic) continue;
    if (out.best < 0 || run.value < out.runs[out.best].value) out.best = r;
  }
  if (out.best < 0) throw std::runtime_error("every restart was aborted: " + *out.runs.front().diagnostic);
  return out;
}

DiscreteSearchResult discrete_local_search(const Graph& g, std::uint64_t seed) {
  const GreedyResult greedy = maxcut_greedy(g, seed);
  PhaseVector phases = to_phases(greedy.witness);
  const double value = mu(g, phases);
  return {value, std::move(phases)};
}

namespace {

constexpr int kDiscreteLimit = 24;

double discrete_minimum(const std::function<double(const PhaseVector&)>& closed_form, int n,
                        double low, double high) {
  if (!closed_form) throw std::invalid_argument("family has no closed form to search");
  if (n > kDiscreteLimit) throw std::invalid_argument("discrete reference search limited to 24 angles");
  double best = std::numeric_limits<double>::infinity();
  Eigen::VectorXd x(n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    for (int i = 0; i < n; ++i) x[i] = (mask >> i) & 1U ? high : low;
    best = std::min(best, closed_form(PhaseVector(x)));
  }
  return best;
}

// Minimum of a scalar function over [0, period) on a uniform grid, refined by
// descent from the lowest grid points.
double scan_scalar(const std::function<double(double)>& fn, double period, double step,
                   long long budget) {
  const double points = std::ceil(period / step);
  if (points > static_cast<double>(budget)) {
    throw std::invalid_argument("reference grid needs " + std::to_string(static_cast<long long>(points)) +
                                " points, above the budget of " + std::to_string(budget));
  }
  const auto n = static_cast<long long>(points);
  std::vector<std::pair<double, double>> samples;  // (value, x)
  samples.reserve(n);
  for (long long k = 0; k < n; ++k) {
    const double x = k * step;
    samples.emplace_back(fn(x), x);
  }
  const auto keep = std::min<std::size_t>(16, samples.size());
  std::partial_sort(samples.begin(), samples.begin() + keep, samples.end());

  Objective obj{1, [&](const Eigen::VectorXd& x) { return fn(x[0]); }, {}};
  OptimizerConfig cfg;
  cfg.initial_step = step;
  cfg.grad_tol = std::min(1e-10, step / 10);
  cfg.max_iters = 2000;
  double best = samples.front().first;
  for (std::size_t k = 0; k < keep; ++k) {
    Eigen::VectorXd x0(1);
    x0[0] = samples[k].second;
    best = std::min(best, gradient_descent(obj, x0, cfg).value);
  }
  return best;
}

}  // namespace

double reference_minimum(const VqaInstance& inst, Family family, long long grid_budget) {
  switch (family) {
    case Family::oracular:
    case Family::boosted:
    case Family::logdim:
      return discrete_minimum(inst.closed_form, inst.layers(), 0.0, std::numbers::pi);
    case Family::single_layer: {
      if (!inst.closed_form) throw std::invalid_argument("single-layer instance has no closed form");
      const auto& gen = inst.generators.front();
      if (!gen.is_diagonal()) throw std::invalid_argument("single-layer generator must be diagonal");
      const Eigen::VectorXd energies = gen.diagonal_entries().cwiseAbs();
      const double fastest = 2.0 * std::numbers::pi / energies.maxCoeff();
      const double period = 2.0 * std::numbers::pi / energies.minCoeff();
      return scan_scalar([&](double x) { return inst.closed_form(PhaseVector{x}); }, period,
                         fastest / 64.0, grid_budget);
    }
    default:
      throw std::invalid_argument("family " + std::string(family_tag(family)) +
                                  " is not a plain VQA instance");
  }
}

double reference_minimum(const QaoaInstance& inst, Family family, const Graph& g,
                         long long grid_budget) {
  if (family == Family::qaoa_multi) {
    const int d = g.vertex_count();
    const auto gamma = PhaseVector(Eigen::VectorXd::Constant(d, std::numbers::pi));
    return discrete_minimum(
        [&](const PhaseVector& beta) { return inst.closed_form(beta, gamma); }, d,
        std::numbers::pi / 2, 3 * std::numbers::pi / 2);
  }
  if (family == Family::qaoa1) {
    const int d = g.vertex_count();
    const int n = inst.dim();
    const Eigen::VectorXd& hb = inst.hb.diagonal_entries();
    ErgodicSpectrum spec;
    spec.energies.resize(d);
    for (int j = 0; j < d; ++j) spec.energies[j] = hb[2 * j];
    spec.m = static_cast<int>(std::lround(2.0 * std::numbers::pi / spec.energies[0]));
    spec.epsilon = 4.0 * std::numbers::pi / spec.m;
    const double tau = inst.hc.matrix()(0, n - 1).real() * std::sqrt(2.0 * d);
    // For fixed beta, min over gamma of f sin^2 x + 2 tau g sin x cos x is
    // f/2 - sqrt(f^2/4 + tau^2 g^2).
    auto reduced = [&](double beta) {
      const double f = qaoa1_f(g, spec, beta);
      const double gg = qaoa1_g(spec, beta);
      return 0.5 * f - std::sqrt(0.25 * f * f + tau * tau * gg * gg);
    };
    const double fastest = std::min(2.0 * std::numbers::pi / spec.energies[0], 2.0 * std::numbers::pi);
    const double period = 2.0 * std::numbers::pi / spec.energies[d - 1];
    return scan_scalar(reduced, period, fastest / 64.0, grid_budget);
  }
  throw std::invalid_argument("family " + std::string(family_tag(family)) + " is not a QAOA family");
}

double reference_minimum(const FermionInstance& inst) {
  return discrete_minimum(inst.closed_form, inst.layers(), 0.0, std::numbers::pi);
}

ErrorMetrics error_metrics(double best_value, double reference_min, double lambda_min,
                           double lambda_max) {
  const double sw = lambda_max - lambda_min;
  if (!(sw > 0)) throw std::invalid_argument("degenerate spectrum: spectral width is zero");
  constexpr double tol = 1e-9;
  auto checked = [&](double x, const char* name) {
    if (x < -tol || x > 1.0 + tol) {
      throw std::invalid_argument(std::string(name) + " = " + std::to_string(x) + " outside [0, 1]");
    }
    return std::clamp(x, 0.0, 1.0);
  };
  ErrorMetrics m;
  m.delta_m = checked((reference_min - lambda_min) / sw, "delta_m");
  m.delta_o = checked((best_value - reference_min) / sw, "delta_o");
  m.delta = checked(m.delta_m + m.delta_o, "delta");
  return m;
}

}  // namespace vqalab
