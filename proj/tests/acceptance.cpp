#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "vqalab/experiment.hpp"
#include "vqalab/fermions.hpp"
#include "vqalab/linalg.hpp"
#include "vqalab/maxcut.hpp"
#include "vqalab/optimize.hpp"
#include "vqalab/reductions.hpp"

using namespace vqalab;
using std::numbers::pi;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const std::function<Outcome()>& check) {
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str());
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double simulate(const VqaInstance& inst, const Eigen::VectorXd& phi) {
  return expectation(apply_circuit(inst, PhaseVector(phi)), inst.observable);
}

PhaseVector mask_phases(int d, std::uint32_t mask) {
  Eigen::VectorXd x(d);
  for (int i = 0; i < d; ++i) x[i] = (mask >> i) & 1U ? pi : 0.0;
  return PhaseVector(x);
}

Outcome reduction_identity() {
  std::mt19937_64 rng(101);
  const auto t0 = Clock::now();
  double worst = 0;
  for (int t = 0; t < 20; ++t) {
    const int d = 2 + t % 7;
    const Graph g = oracle::random_graph(d, 0.5, rng);
    const VqaInstance inst = logdim_vqa_instance(g);
    for (int s = 0; s < 100; ++s) {
      const Eigen::VectorXd phi = oracle::random_angles(d, rng);
      worst = std::max(worst, std::abs(simulate(inst, phi) - oracle::mu_naive(g.adjacency(), phi)));
    }
  }
  const double secs = seconds_since(t0);
  return {worst <= 1e-9 && secs <= 10.0, fmt("max residual %.3g", worst) + fmt(", %.2f s", secs)};
}

Outcome oracular_identity() {
  std::mt19937_64 rng(102);
  double worst = 0;
  for (int d = 2; d <= 5; ++d) {
    for (int t = 0; t < 5; ++t) {
      const Graph g = oracle::random_graph(d, 0.6, rng);
      const VqaInstance inst = oracular_vqa_instance(g);
      for (int s = 0; s < 100; ++s) {
        const Eigen::VectorXd phi = oracle::random_angles(d, rng);
        worst = std::max(worst, std::abs(simulate(inst, phi) - oracle::mu_naive(g.adjacency(), phi)));
      }
    }
  }
  return {worst <= 1e-9, fmt("max residual %.3g", worst)};
}

Outcome boosting() {
  std::mt19937_64 rng(103);
  double worst = 0;
  int width_mismatch = 0;
  for (int d = 2; d <= 4; ++d) {
    for (int t = 0; t < 4; ++t) {
      const Graph g = oracle::random_graph(d, 0.6, rng);
      const int mc = oracle::maxcut_naive(g.adjacency());
      for (int k = 1; k <= 2; ++k) {
        const VqaInstance inst = boosted_vqa_instance(g, k);
        if (spectral_extremes(inst.observable).sw != std::pow(mc, k)) ++width_mismatch;
        for (int s = 0; s < 50; ++s) {
          const Eigen::VectorXd phi = oracle::random_angles(d, rng);
          const double expected = -std::pow(std::abs(oracle::mu_naive(g.adjacency(), phi)), k);
          worst = std::max(worst, std::abs(simulate(inst, phi) - expected));
        }
      }
    }
  }
  return {worst <= 1e-9 && width_mismatch == 0,
          fmt("max residual %.3g", worst) + ", sw mismatches " + std::to_string(width_mismatch)};
}

Outcome spectral_width() {
  std::mt19937_64 rng(104);
  int mismatches = 0;
  for (int t = 0; t < 20; ++t) {
    const Graph g = oracle::random_graph(2 + t % 7, 0.5, rng);
    const double sw = spectral_extremes(ising_observable(g)).sw;
    const int mc = maxcut_bruteforce(g).value;
    if (sw != mc || mc != oracle::maxcut_naive(g.adjacency())) ++mismatches;
  }
  return {mismatches == 0, std::to_string(mismatches) + " mismatches over 20 graphs"};
}

Outcome ergodic_lookup() {
  std::mt19937_64 rng(105);
  int violations = 0;
  double worst_ratio = 0;
  for (int m : {8, 16, 64}) {
    for (int n = 1; n <= 6; ++n) {
      const ErgodicSpectrum spec = ergodic_energies(n, m);
      for (int s = 0; s < 1000; ++s) {
        const Eigen::VectorXd phi = oracle::random_angles(n, rng);
        const double t = ergodic_time(PhaseVector(phi), spec);
        // Independent evaluation: t is an integer, so E_i t mod 2pi = 2pi (t mod m^i) / m^i.
        const auto ti = static_cast<std::uint64_t>(t);
        double err = 0;
        std::uint64_t period = 1;
        for (int i = 0; i < n; ++i) {
          period *= static_cast<std::uint64_t>(m);
          const double phase = 2 * pi * static_cast<double>(ti % period) / static_cast<double>(period);
          const double diff = std::abs(phi[i] - phase);
          err = std::max(err, std::min(diff, 2 * pi - diff));
        }
        const double bound = 4 * pi / m;
        worst_ratio = std::max(worst_ratio, err / bound);
        if (err > bound || ergodic_error(PhaseVector(phi), spec, t) > bound) ++violations;
      }
    }
  }
  return {violations == 0, std::to_string(violations) + " violations, worst error/bound " + fmt("%.3f", worst_ratio)};
}

Outcome single_layer_qaoa() {
  std::mt19937_64 rng(106);
  const double tau = 1e-3;
  const int m = 8;
  double worst = 0;
  std::uniform_real_distribution<double> ub(0.0, 2 * pi), ug(0.0, pi / tau);
  for (int s = 0; s < 100; ++s) {
    const int d = 2 + s % 4;
    const Graph g = oracle::random_graph(d, 0.6, rng);
    const QaoaInstance inst = qaoa_single_layer_instance(g, tau, m);
    const double beta = ub(rng), gamma = ug(rng);
    const double sim = qaoa_apply(inst, PhaseVector{beta}, PhaseVector{gamma}).expectation;
    worst = std::max(worst, std::abs(sim - qaoa1_closed_form(g, ergodic_energies(d, m), tau, beta, gamma)));
  }
  return {worst <= 1e-9, fmt("max residual %.3g over 100 points", worst)};
}

Outcome multilayer_qaoa() {
  const auto t0 = Clock::now();
  double norm_err = 0, encode_err = 0, discrete_err = 0;
  int graphs = 0;
  for (int d = 2; d <= 3; ++d) {
    for (const Graph& g : oracle::all_graphs(d)) {
      ++graphs;
      const QaoaInstance inst = qaoa_multilayer_instance(g);
      norm_err = std::max({norm_err, std::abs(operator_norm(inst.hb) - 3.0), std::abs(operator_norm(inst.hc) - 1.0)});
      const int mc = oracle::maxcut_naive(g.adjacency());
      const double target = 1.0 - 2.0 * mc / g.edge_count();
      const auto [beta, gamma] = multilayer_encoding(maxcut_bruteforce(g).witness);
      encode_err = std::max(encode_err, std::abs(qaoa_apply(inst, beta, gamma).expectation - target));
      double best = 1e300;
      for (std::uint32_t mask = 0; mask < (1U << d); ++mask) {
        Eigen::VectorXd b(d);
        for (int i = 0; i < d; ++i) b[i] = (mask >> i) & 1U ? 1.5 * pi : 0.5 * pi;
        best = std::min(best, qaoa_apply(inst, PhaseVector(b), PhaseVector(Eigen::VectorXd::Constant(d, pi))).expectation);
      }
      discrete_err = std::max(discrete_err, std::abs(best - target));
    }
  }
  const double secs = seconds_since(t0);
  const bool ok = norm_err <= 1e-9 && encode_err <= 1e-9 && discrete_err <= 1e-9 && secs <= 60.0;
  return {ok, std::to_string(graphs) + " graphs, norm " + fmt("%.3g", norm_err) + ", encoding " +
                  fmt("%.3g", encode_err) + ", discrete optimum " + fmt("%.3g", discrete_err) +
                  fmt(", %.2f s", secs)};
}

Outcome free_fermions() {
  std::mt19937_64 rng(107);
  double pipeline = 0;
  for (int t = 0; t < 50; ++t) {
    const int n = 1 + t % 8;
    const int layers = 1 + t % 4;
    std::vector<CoefficientMatrix> gens;
    for (int i = 0; i < layers; ++i) gens.emplace_back(oracle::random_hermitian(n, rng));
    const FermionInstance inst(CoefficientMatrix(oracle::random_hermitian(n, rng)), gens,
                               CoefficientMatrix(oracle::random_hermitian(n, rng)));
    const PhaseVector phi(oracle::random_angles(layers, rng));
    pipeline = std::max(pipeline, std::abs(fermion_instance_expectation(inst, phi) - fock_bruteforce_expectation(inst, phi)));
  }
  double mu_err = 0;
  for (int d = 2; d <= 6; ++d) {
    for (int t = 0; t < 3; ++t) {
      const Graph g = oracle::random_graph(d, 0.6, rng);
      const FermionInstance inst = fermionic_vqa_instance(g);
      for (int s = 0; s < 50; ++s) {
        const Eigen::VectorXd phi = oracle::random_angles(d, rng);
        mu_err = std::max(mu_err, std::abs(fermion_instance_expectation(inst, PhaseVector(phi)) -
                                           oracle::mu_naive(g.adjacency(), phi)));
      }
    }
  }
  const Graph edge = parse_graph("2\n1 2");
  const FockInstance lifted = fock_lift(fermionic_vqa_instance(edge));
  double fock_err = 0;
  for (int s = 0; s < 100; ++s) {
    const Eigen::VectorXd phi = oracle::random_angles(2, rng);
    fock_err = std::max(fock_err, std::abs(fock_bruteforce_expectation(lifted, PhaseVector(phi)) -
                                           oracle::mu_naive(edge.adjacency(), phi)));
  }
  return {pipeline <= 1e-9 && mu_err <= 1e-9 && fock_err <= 1e-9,
          fmt("pipeline vs Fock %.3g", pipeline) + fmt(", instance vs mu %.3g", mu_err) +
              fmt(", d=2 Fock %.3g", fock_err)};
}

Outcome calculus() {
  std::mt19937_64 rng(108);
  double grad_rel = 0, hess_rel = 0;
  int nonzero = 0;
  for (int s = 0; s < 100; ++s) {
    const int d = 2 + s % 7;
    const Graph g = oracle::random_graph(d, 0.6, rng);
    const auto f = [&](const Eigen::VectorXd& x) { return oracle::mu_naive(g.adjacency(), x); };
    const Eigen::VectorXd phi = oracle::random_angles(d, rng);
    const Eigen::VectorXd grad = mu_gradient(g, PhaseVector(phi));
    grad_rel = std::max(grad_rel, oracle::relative_error(grad, oracle::central_gradient(f, phi)));
    const Eigen::MatrixXd hess = mu_hessian(g, PhaseVector(phi));
    hess_rel = std::max(hess_rel, oracle::relative_error(hess, oracle::second_differences(f, phi)));
    for (std::uint32_t mask = 0; mask < (1U << d); ++mask) {
      if (mu_gradient(g, mask_phases(d, mask)).cwiseAbs().maxCoeff() != 0.0) ++nonzero;
    }
  }
  return {grad_rel <= 1e-6 && hess_rel <= 1e-4 && nonzero == 0,
          fmt("gradient rel %.3g", grad_rel) + fmt(", Hessian rel %.3g", hess_rel) + ", nonzero discrete gradients " +
              std::to_string(nonzero)};
}

struct StructureTally {
  long long graphs = 0;
  long long mismatches = 0;
};

void check_structure(const Graph& g, StructureTally& tally) {
  const int d = g.vertex_count();
  ++tally.graphs;
  double best = 1e300;
  for (std::uint32_t mask = 0; mask < (1U << d); ++mask) {
    const PhaseVector x = mask_phases(d, mask);
    if (is_discrete_local_min(g, x) != oracle::flip_optimal_naive(g.adjacency(), mask)) ++tally.mismatches;
    best = std::min(best, mu(g, x));
  }
  if (best != -oracle::maxcut_naive(g.adjacency())) ++tally.mismatches;
}

Outcome landscape_structure() {
  StructureTally tally;
  for (int d = 2; d <= 5; ++d) {
    for (const Graph& g : oracle::all_graphs(d)) check_structure(g, tally);
  }
  std::mt19937_64 rng(109);
  std::vector<Graph> sample;
  for (int t = 0; t < 500; ++t) sample.push_back(oracle::random_graph(6, 0.5, rng));
  for (const Graph& g : sample) check_structure(g, tally);
  int increases = 0;
  for (int s = 0; s < 10000; ++s) {
    const Graph& g = sample[s % sample.size()];
    const Eigen::VectorXd phi = oracle::random_angles(6, rng);
    const PhaseVector rounded = round_to_discrete(g, PhaseVector(phi));
    if (oracle::mu_naive(g.adjacency(), rounded.angles()) > oracle::mu_naive(g.adjacency(), phi) + 1e-12) ++increases;
  }
  return {tally.mismatches == 0 && increases == 0,
          std::to_string(tally.graphs) + " graphs, " + std::to_string(tally.mismatches) + " mismatches, " +
              std::to_string(increases) + " rounding increases over 10000 points"};
}

// Every vertex has strictly more cut than uncut neighbours and the cut is not maximum.
std::optional<std::pair<Graph, std::uint32_t>> strict_suboptimal_minimum() {
  for (int d = 3; d <= 6; ++d) {
    for (const Graph& g : oracle::all_graphs(d)) {
      const int mc = oracle::maxcut_naive(g.adjacency());
      for (std::uint32_t mask = 0; mask < (1U << d); ++mask) {
        if (oracle::cut_naive(g.adjacency(), mask) == mc) continue;
        bool strict = true;
        for (int i = 0; i < d && strict; ++i) {
          int balance = 0;
          for (int j : g.neighbors(i)) balance += (((mask >> i) ^ (mask >> j)) & 1U) ? 1 : -1;
          strict = balance > 0;
        }
        if (strict) return std::pair{g, mask};
      }
    }
  }
  return std::nullopt;
}

// Some non-discrete coordinate has (near) zero curvature: a critical point of mu
// off {0, pi}^d needs a vanishing field there, so it is never a strict minimum.
bool degenerate_endpoint(const Graph& g, const Eigen::VectorXd& x) {
  const Eigen::MatrixXd h = mu_hessian(g, PhaseVector(x));
  for (int i = 0; i < g.vertex_count(); ++i) {
    if (!is_discrete(PhaseVector{x[i]}, 1e-6) && std::abs(h(i, i)) <= 1e-3) return true;
  }
  return false;
}

Outcome optimizer_behavior() {
  const auto found = strict_suboptimal_minimum();
  if (!found) return {false, "no strict suboptimal discrete local minimum found"};
  const auto& [trap, mask] = *found;
  ExperimentSpec trap_spec;
  trap_spec.family = Family::logdim;
  const Landscape l = make_landscape(trap_spec, trap);
  const Objective objective{l.dimension, l.simulate, l.gradient};
  std::mt19937_64 rng(110);
  std::normal_distribution<double> jitter(0.0, 1e-3);
  Eigen::VectorXd start = mask_phases(trap.vertex_count(), mask).angles();
  for (int i = 0; i < start.size(); ++i) start[i] += jitter(rng);
  const DescentResult stay = gradient_descent(objective, start, trap_spec.optimizer);
  const int trapped_cut = oracle::cut_naive(trap.adjacency(), mask);
  const bool persisted = stay.converged && std::abs(stay.value + trapped_cut) <= 1e-9 &&
                         to_bipartition(round_to_discrete(trap, PhaseVector(stay.params))) ==
                             oracle::mask_to_bipartition(trap.vertex_count(), mask);

  const auto t0 = Clock::now();
  ExperimentSpec spec;
  spec.family = Family::logdim;
  spec.random_graph = RandomGraphSpec{8, 0.5};
  spec.count = 100;
  spec.optimizer.seed = 2024;
  const nlohmann::json doc = run_optimize(spec);
  const double secs = seconds_since(t0);
  const std::vector<Graph> graphs = build_graphs(spec);
  int runs = 0, discrete_runs = 0, discrete_not_flip_optimal = 0, not_flip_optimal = 0, degenerate = 0;
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    for (const auto& run : doc["instances"][gi]["restarts"]["runs"]) {
      ++runs;
      const std::vector<double> p = run["params"].get<std::vector<double>>();
      const Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(p.data(), p.size());
      const bool flip_optimal = run.value("rounded_single_flip_optimal", false);
      if (is_discrete(PhaseVector(x), 1e-6)) {
        ++discrete_runs;
        if (!flip_optimal) ++discrete_not_flip_optimal;
      }
      if (!flip_optimal) {
        ++not_flip_optimal;
        if (degenerate_endpoint(graphs[gi], x)) ++degenerate;
      }
    }
  }
  const auto& agg = doc["aggregate"];
  const auto& dist = agg["delta_o"];
  std::ostringstream detail;
  detail << "trap " << trap.vertex_count() << " vertices cut " << trapped_cut << " of "
         << oracle::maxcut_naive(trap.adjacency()) << (persisted ? " persisted" : " escaped") << "; " << runs
         << " restarts, " << discrete_runs << " end on {0,pi}^d (" << discrete_not_flip_optimal
         << " not flip-optimal), " << not_flip_optimal << " round to a non-flip-optimal cut (" << degenerate
         << " at degenerate critical points); delta_o min " << dist["min"].get<double>()
         << " median " << dist["median"].get<double>() << " mean " << dist["mean"].get<double>() << " max "
         << dist["max"].get<double>() << ", Delta " << agg["Delta"].get<double>() << fmt(", %.1f s", secs);
  const bool ok = persisted && runs == 1000 && not_flip_optimal == 0 && doc["instances"].size() == 100 &&
                  agg.contains("Delta") && secs <= 300.0;
  return {ok, detail.str()};
}

}  // namespace

int main() {
  report(1, "reduction identity", reduction_identity);
  report(2, "oracular identity", oracular_identity);
  report(3, "boosting", boosting);
  report(4, "spectral width", spectral_width);
  report(5, "ergodic lookup", ergodic_lookup);
  report(6, "single-layer QAOA", single_layer_qaoa);
  report(7, "multilayer QAOA", multilayer_qaoa);
  report(8, "free fermions", free_fermions);
  report(9, "calculus", calculus);
  report(10, "landscape structure", landscape_structure);
  report(11, "optimizer behavior", optimizer_behavior);
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
