#include "vqalab/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "vqalab/fermions.hpp"

namespace vqalab {

using nlohmann::json;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Trajectories longer than this are thinned to evenly spaced samples.
constexpr std::size_t kMaxTrajectoryPoints = 256;
constexpr int kFockChecksPerGraph = 20;

double number_from(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError("cannot parse " + what + " from '" + text + "'");
  }
  if (used != text.size()) throw UsageError("cannot parse " + what + " from '" + text + "'");
  return v;
}

int int_from(const std::string& text, const std::string& what) {
  const double v = number_from(text, what);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw UsageError(what + " must be an integer");
  return static_cast<int>(v);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json matrix_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_json(const CVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_json(v[i]));
  return out;
}

json real_vector_json(const Eigen::VectorXd& v) {
  return json(std::vector<double>(v.data(), v.data() + v.size()));
}

json graph_json(const Graph& g) {
  json edges = json::array();
  for (auto [i, j] : g.edges()) edges.push_back({i, j});
  return {{"vertices", g.vertex_count()}, {"edge_count", g.edge_count()}, {"edges", edges}};
}

double vqa_simulate(const VqaInstance& inst, const Eigen::VectorXd& x) {
  return expectation(apply_circuit(inst, PhaseVector(x)), inst.observable);
}

Eigen::VectorXd head(const Eigen::VectorXd& x, int n) { return x.head(n); }
Eigen::VectorXd tail(const Eigen::VectorXd& x, int n) { return x.tail(n); }

std::string timestamp_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

json document_header(const ExperimentSpec& spec, const char* command) {
  return {{"schema", kSchema},
          {"artifact_version", kArtifactVersion},
          {"command", command},
          {"generated_at", timestamp_now()},
          {"spec", spec.to_json()}};
}

// Running maximum of a named residual, kept in first-seen order.
class IdentityTable {
 public:
  void record(const std::string& name, double residual) {
    auto it = std::find_if(rows_.begin(), rows_.end(), [&](const auto& r) { return r.name == name; });
    if (it == rows_.end()) {
      rows_.push_back({name, 0.0, 0});
      it = rows_.end() - 1;
    }
    // NaN residuals must fail the check.
    it->max_residual = std::isnan(residual) ? residual : std::max(it->max_residual, residual);
    if (std::isnan(it->max_residual)) it->max_residual = std::numeric_limits<double>::infinity();
    ++it->checks;
  }
  const std::vector<IdentityResult>& rows() const { return rows_; }

 private:
  std::vector<IdentityResult> rows_;
};

Eigen::VectorXd sample_point(const Landscape& l, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::VectorXd x(l.dimension);
  for (int i = 0; i < l.dimension; ++i) x[i] = unit(rng) * l.sample_scale[i];
  return x;
}

}  // namespace

// ---------------------------------------------------------------------------
// Spec

void ExperimentSpec::validate() const {
  if (graph_file && random_graph) throw UsageError("--graph and --random-graph are mutually exclusive");
  if (!graph_file && !random_graph) throw UsageError("a graph source is required (--graph or --random-graph)");
  if (random_graph) {
    if (random_graph->d < 2) throw UsageError("random graphs need at least 2 vertices");
    if (!(random_graph->p > 0.0 && random_graph->p <= 1.0)) {
      throw UsageError("edge probability must lie in (0, 1]");
    }
  }
  if (count < 1) throw UsageError("--count must be positive");
  if (!(tol > 0.0)) throw UsageError("--tol must be positive");
  if (m < 2) throw UsageError("--m must be at least 2");
  if (!(tau > 0.0)) throw UsageError("--tau must be positive");
  if (k < 1) throw UsageError("--k must be positive");
  if (samples < 1) throw UsageError("--samples must be positive");
  try {
    optimizer.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

json ExperimentSpec::to_json() const {
  json j;
  j["family"] = std::string(family_tag(family));
  if (graph_file) j["graph_file"] = *graph_file;
  if (random_graph) j["random_graph"] = {{"d", random_graph->d}, {"p", random_graph->p}};
  j["count"] = count;
  j["seed"] = optimizer.seed;
  j["restarts"] = optimizer.restarts;
  j["max_iters"] = optimizer.max_iters;
  j["grad_tol"] = optimizer.grad_tol;
  j["initial_step"] = optimizer.initial_step;
  j["finite_diff_step"] = optimizer.finite_diff_step;
  j["tol"] = tol;
  j["m"] = m;
  j["tau"] = tau;
  j["k"] = k;
  j["samples"] = samples;
  return j;
}

RandomGraphSpec parse_random_graph(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 2) throw UsageError("--random-graph expects d:p, got '" + text + "'");
  return {int_from(parts[0], "vertex count"), number_from(parts[1], "edge probability")};
}

std::vector<Graph> build_graphs(const ExperimentSpec& spec) {
  spec.validate();
  if (spec.graph_file) {
    std::ifstream in(*spec.graph_file);
    if (!in) throw UsageError("cannot open graph file " + *spec.graph_file);
    std::stringstream buf;
    buf << in.rdbuf();
    try {
      return {parse_graph(buf.str())};
    } catch (const ParseError& e) {
      throw UsageError(*spec.graph_file + ": " + e.what());
    }
  }
  std::vector<Graph> graphs;
  graphs.reserve(spec.count);
  for (int i = 0; i < spec.count; ++i) {
    graphs.push_back(random_graph(spec.random_graph->d, spec.random_graph->p, spec.optimizer.seed + i));
  }
  return graphs;
}

// ---------------------------------------------------------------------------
// Landscapes

Landscape make_landscape(const ExperimentSpec& spec, const Graph& g) {
  const int d = g.vertex_count();
  Landscape l{.family = spec.family, .graph = g};
  auto mu_of = [g](const Eigen::VectorXd& x) { return mu(g, PhaseVector(x)); };
  auto mu_grad = [g](const Eigen::VectorXd& x) { return mu_gradient(g, PhaseVector(x)); };

  auto use_vqa = [&](std::shared_ptr<const VqaInstance> inst) {
    l.dimension = inst->layers();
    l.simulate = [inst](const Eigen::VectorXd& x) { return vqa_simulate(*inst, x); };
    const auto ext = spectral_extremes(inst->observable);
    l.lambda_min = ext.lambda_min;
    l.lambda_max = ext.lambda_max;
    const Family family = spec.family;
    l.reference = [inst, family] { return reference_minimum(*inst, family); };
  };

  switch (spec.family) {
    case Family::oracular:
    case Family::logdim: {
      use_vqa(std::make_shared<const VqaInstance>(
          spec.family == Family::oracular ? oracular_vqa_instance(g) : logdim_vqa_instance(g)));
      l.closed_form = mu_of;
      l.gradient = mu_grad;
      l.vertex_angles = true;
      break;
    }
    case Family::boosted: {
      use_vqa(std::make_shared<const VqaInstance>(boosted_vqa_instance(g, spec.k)));
      const int k = spec.k;
      l.closed_form = [g, k](const Eigen::VectorXd& x) { return boosted_expectation(g, k, PhaseVector(x)); };
      // d/dphi of -(-mu)^k
      l.gradient = [g, k](const Eigen::VectorXd& x) -> Eigen::VectorXd {
        const PhaseVector phi(x);
        return k * std::pow(-mu(g, phi), k - 1) * mu_gradient(g, phi);
      };
      l.vertex_angles = true;
      break;
    }
    case Family::single_layer: {
      use_vqa(std::make_shared<const VqaInstance>(single_layer_instance(g, spec.m)));
      const Eigen::VectorXd energies = ergodic_energies(d, spec.m).energies;
      l.closed_form = [g, energies](const Eigen::VectorXd& x) { return mu(g, PhaseVector(energies * x[0])); };
      l.gradient = [g, energies](const Eigen::VectorXd& x) {
        return Eigen::VectorXd::Constant(1, energies.dot(mu_gradient(g, PhaseVector(energies * x[0]))));
      };
      break;
    }
    case Family::qaoa1: {
      auto inst = std::make_shared<const QaoaInstance>(qaoa_single_layer_instance(g, spec.tau, spec.m));
      l.dimension = 2;
      l.simulate = [inst](const Eigen::VectorXd& x) {
        return qaoa_apply(*inst, PhaseVector{x[0]}, PhaseVector{x[1]}).expectation;
      };
      l.closed_form = [inst](const Eigen::VectorXd& x) {
        return inst->closed_form(PhaseVector{x[0]}, PhaseVector{x[1]});
      };
      l.reference = [inst, g] { return reference_minimum(*inst, Family::qaoa1, g); };
      const auto ext = spectral_extremes(inst->hc);
      l.lambda_min = ext.lambda_min;
      l.lambda_max = ext.lambda_max;
      break;
    }
    case Family::qaoa_multi: {
      auto inst = std::make_shared<const QaoaInstance>(qaoa_multilayer_instance(g));
      l.dimension = 2 * d;
      l.simulate = [inst, d](const Eigen::VectorXd& x) {
        return qaoa_apply(*inst, PhaseVector(head(x, d)), PhaseVector(tail(x, d))).expectation;
      };
      l.reference = [inst, g] { return reference_minimum(*inst, Family::qaoa_multi, g); };
      const auto ext = spectral_extremes(inst->hc);
      l.lambda_min = ext.lambda_min;
      l.lambda_max = ext.lambda_max;
      break;
    }
    case Family::fermion: {
      auto inst = std::make_shared<const FermionInstance>(fermionic_vqa_instance(g));
      l.dimension = d;
      l.simulate = [inst](const Eigen::VectorXd& x) {
        return fermion_instance_expectation(*inst, PhaseVector(x));
      };
      l.closed_form = mu_of;
      l.gradient = mu_grad;
      l.reference = [inst] { return reference_minimum(*inst); };
      const auto ext = fermion_spectral_extremes(inst->o);
      l.lambda_min = ext.lambda_min;
      l.lambda_max = ext.lambda_max;
      l.vertex_angles = true;
      break;
    }
  }

  l.sample_scale = Eigen::VectorXd::Constant(l.dimension, kTwoPi);
  if (spec.family == Family::single_layer) l.sample_scale[0] = kTwoPi * spec.m;
  if (spec.family == Family::qaoa1) {
    l.sample_scale[0] = kTwoPi * spec.m;
    l.sample_scale[1] = std::numbers::pi / spec.tau;
  }
  return l;
}

// ---------------------------------------------------------------------------
// verify

VerifyReport run_verify(const ExperimentSpec& spec) {
  const auto graphs = build_graphs(spec);
  json doc = document_header(spec, "verify");
  json instances = json::array();
  IdentityTable table;

  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    const Graph& g = graphs[gi];
    const int d = g.vertex_count();
    const Landscape l = make_landscape(spec, g);
    const CutResult best = maxcut_bruteforce(g);
    const double maxcut = best.value;
    std::mt19937_64 rng(spec.optimizer.seed + gi);
    json record = {{"graph", graph_json(g)}, {"maxcut", best.value}};

    if (l.closed_form) {
      for (int s = 0; s < spec.samples; ++s) {
        const Eigen::VectorXd x = sample_point(l, rng);
        table.record("closed-form", std::abs(l.simulate(x) - l.closed_form(x)));
      }
    }

    const double sw = l.lambda_max - l.lambda_min;
    switch (spec.family) {
      case Family::oracular:
        table.record("spectral-width", std::abs(sw - maxcut));
        table.record("reference-minimum", std::abs(l.reference() + maxcut));
        break;
      case Family::boosted: {
        const double target = std::pow(maxcut, spec.k);
        table.record("spectral-width", std::abs(sw - target));
        table.record("reference-minimum", std::abs(l.reference() + target));
        break;
      }
      case Family::logdim: {
        table.record("reference-minimum", std::abs(l.reference() + maxcut));
        const auto inst = logdim_vqa_instance(g);
        table.record("certificate", verify_certificate(inst, to_phases(best.witness), -maxcut) ? 0.0 : 1.0);
        break;
      }
      case Family::single_layer: {
        const ErgodicSpectrum es = ergodic_energies(d, spec.m);
        std::uniform_real_distribution<double> angle(0.0, kTwoPi);
        for (int s = 0; s < spec.samples; ++s) {
          Eigen::VectorXd target(d);
          for (int i = 0; i < d; ++i) target[i] = angle(rng);
          const PhaseVector phi(target);
          const double t = ergodic_time(phi, es);
          table.record("ergodic-lookup", std::max(0.0, ergodic_error(phi, es, t) - es.epsilon));
        }
        break;
      }
      case Family::qaoa1:
        break;
      case Family::qaoa_multi: {
        const auto inst = qaoa_multilayer_instance(g);
        const double optimum = multilayer_optimum(g);
        record["closed_form_optimum"] = optimum;
        table.record("mixer-norm", std::abs(operator_norm(inst.hb) - 3.0));
        table.record("cost-norm", std::abs(operator_norm(inst.hc) - 1.0));
        const auto [beta, gamma] = multilayer_encoding(best.witness);
        table.record("maxcut-encoding", std::abs(qaoa_apply(inst, beta, gamma).expectation - optimum));
        // Every point of the encoding set: simulation against the closed form.
        Eigen::VectorXd x(2 * d);
        x.tail(d).setConstant(std::numbers::pi);
        for (std::uint32_t mask = 0; mask < (1U << d); ++mask) {
          for (int i = 0; i < d; ++i) x[i] = (mask >> i) & 1U ? 1.5 * std::numbers::pi : 0.5 * std::numbers::pi;
          table.record("encoding-set", std::abs(l.simulate(x) - multilayer_lower_bound(g, PhaseVector(head(x, d)),
                                                                                      PhaseVector(tail(x, d)))));
        }
        table.record("discrete-optimum", std::abs(l.reference() - optimum));
        for (int s = 0; s < spec.samples; ++s) {
          const Eigen::VectorXd y = sample_point(l, rng);
          const double bound = multilayer_lower_bound(g, PhaseVector(head(y, d)), PhaseVector(tail(y, d)));
          table.record("lower-bound", std::max(0.0, bound - l.simulate(y)));
        }
        break;
      }
      case Family::fermion: {
        table.record("reference-minimum", std::abs(l.reference() + maxcut));
        if (2 * d <= kMaxFockModes) {
          const FockInstance fock = fock_lift(fermionic_vqa_instance(g));
          for (int s = 0; s < std::min(spec.samples, kFockChecksPerGraph); ++s) {
            const Eigen::VectorXd x = sample_point(l, rng);
            table.record("fock-oracle", std::abs(fock_bruteforce_expectation(fock, PhaseVector(x)) - l.simulate(x)));
          }
        }
        break;
      }
    }
    instances.push_back(std::move(record));
  }

  VerifyReport report;
  report.identities = table.rows();
  report.passed = true;
  json ids = json::array();
  for (const auto& r : report.identities) {
    const bool ok = r.max_residual <= spec.tol;
    report.passed = report.passed && ok;
    ids.push_back({{"name", r.name}, {"max_residual", r.max_residual}, {"checks", r.checks}, {"passed", ok}});
  }
  doc["instances"] = std::move(instances);
  doc["identities"] = std::move(ids);
  doc["tolerance"] = spec.tol;
  doc["passed"] = report.passed;
  report.document = std::move(doc);
  return report;
}

// ---------------------------------------------------------------------------
// optimize

double goemans_williamson_constant() {
  auto ratio = [](double t) { return (2.0 / std::numbers::pi) * t / (1.0 - std::cos(t)); };
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 0.5, b = std::numbers::pi;
  double c = b - invphi * (b - a), e = a + invphi * (b - a);
  for (int it = 0; it < 200; ++it) {
    if (ratio(c) < ratio(e)) {
      b = e;
    } else {
      a = c;
    }
    c = b - invphi * (b - a);
    e = a + invphi * (b - a);
  }
  return ratio(0.5 * (a + b));
}

namespace {

json trajectory_json(const std::vector<TrajectoryPoint>& t) {
  json out = json::array();
  const std::size_t n = t.size();
  const std::size_t keep = std::min(n, kMaxTrajectoryPoints);
  for (std::size_t s = 0; s < keep; ++s) {
    const std::size_t idx = keep == 1 ? 0 : s * (n - 1) / (keep - 1);
    out.push_back({t[idx].iteration, t[idx].value});
  }
  return out;
}

}  // namespace

json run_optimize(const ExperimentSpec& spec) {
  const auto graphs = build_graphs(spec);
  json doc = document_header(spec, "optimize");
  json instances = json::array();
  std::vector<double> delta_o;

  for (const Graph& g : graphs) {
    const Landscape l = make_landscape(spec, g);
    const Objective objective{l.dimension, l.simulate, l.gradient};
    const MultistartResult ms = multistart(objective, spec.optimizer);
    const DescentResult& best = ms.best_run();
    const double reference = l.reference();
    const ErrorMetrics em = error_metrics(best.value, reference, l.lambda_min, l.lambda_max);
    const int maxcut = maxcut_bruteforce(g).value;
    delta_o.push_back(em.delta_o);

    json runs = json::array();
    int converged = 0;
    int aborted = 0;
    for (std::size_t r = 0; r < ms.runs.size(); ++r) {
      const auto& run = ms.runs[r];
      converged += run.converged ? 1 : 0;
      aborted += run.diagnostic ? 1 : 0;
      json jr = {{"seed", spec.optimizer.seed + r},
                 {"value", run.value},
                 {"converged", run.converged},
                 {"iterations", run.iterations},
                 {"gradient_norm", run.gradient_norm},
                 {"params", real_vector_json(run.params)},
                 {"trajectory_length", run.trajectory.size()},
                 {"trajectory", trajectory_json(run.trajectory)}};
      if (run.diagnostic) jr["diagnostic"] = *run.diagnostic;
      if (l.vertex_angles && !run.diagnostic) {
        const Bipartition cut = to_bipartition(round_to_discrete(g, PhaseVector(run.params)));
        jr["rounded_cut"] = cut_value(g, cut);
        jr["rounded_single_flip_optimal"] = is_single_flip_optimal(g, cut);
      }
      runs.push_back(std::move(jr));
    }

    json rec = {{"graph", graph_json(g)},
                {"maxcut", maxcut},
                {"greedy_cut", maxcut_greedy(g, spec.optimizer.seed).value},
                {"reference_min", reference},
                {"lambda_min", l.lambda_min},
                {"lambda_max", l.lambda_max},
                {"sw", l.lambda_max - l.lambda_min},
                {"best_value", best.value},
                {"best_params", real_vector_json(best.params)},
                {"delta", em.delta},
                {"delta_m", em.delta_m},
                {"delta_o", em.delta_o},
                {"restarts", {{"count", ms.runs.size()},
                              {"converged", converged},
                              {"aborted", aborted},
                              {"best", ms.best},
                              {"runs", std::move(runs)}}}};
    if (l.vertex_angles) {
      const Bipartition cut = to_bipartition(round_to_discrete(g, PhaseVector(best.params)));
      const int rounded = cut_value(g, cut);
      rec["rounded_cut"] = rounded;
      rec["rounded_single_flip_optimal"] = is_single_flip_optimal(g, cut);
      rec["achieved_ratio"] = static_cast<double>(rounded) / maxcut;
    }
    instances.push_back(std::move(rec));
  }

  json summary;
  summary["instances"] = delta_o.size();
  summary["Delta"] = *std::max_element(delta_o.begin(), delta_o.end());
  std::vector<double> sorted = delta_o;
  std::sort(sorted.begin(), sorted.end());
  double mean = 0;
  for (double v : sorted) mean += v;
  mean /= static_cast<double>(sorted.size());
  summary["delta_o"] = {{"min", sorted.front()},
                        {"median", sorted[sorted.size() / 2]},
                        {"mean", mean},
                        {"max", sorted.back()},
                        {"zero_count", std::count_if(sorted.begin(), sorted.end(),
                                                     [](double v) { return v <= 1e-9; })},
                        {"values", delta_o}};

  doc["instances"] = std::move(instances);
  doc["aggregate"] = std::move(summary);
  doc["reference_constants"] = {
      {"note", "literature approximation-ratio bounds for MaxCut; reported, not asserted"},
      {"goemans_williamson", goemans_williamson_constant()},
      {"inapproximability_upper_bound", 16.0 / 17.0}};
  return doc;
}

// ---------------------------------------------------------------------------
// landscape

Axis parse_axis(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 4) throw UsageError("--axis expects INDEX:LO:HI:COUNT, got '" + text + "'");
  Axis a{int_from(parts[0], "axis index"), number_from(parts[1], "axis low end"),
         number_from(parts[2], "axis high end"), int_from(parts[3], "axis count")};
  if (a.index < 0) throw UsageError("axis index must be non-negative");
  if (a.count < 1) throw UsageError("axis count must be positive");
  return a;
}

void run_landscape(const ExperimentSpec& spec, const std::vector<Axis>& axes,
                   const std::vector<double>& base, std::ostream& out) {
  if (axes.empty() || axes.size() > 2) throw UsageError("landscape takes one or two --axis options");
  const auto graphs = build_graphs(spec);
  const Landscape l = make_landscape(spec, graphs.front());
  for (const auto& a : axes) {
    if (a.index >= l.dimension) {
      throw UsageError("axis index " + std::to_string(a.index) + " out of range for " +
                       std::to_string(l.dimension) + " parameters");
    }
  }
  if (axes.size() == 2 && axes[0].index == axes[1].index) throw UsageError("axes must be distinct");
  Eigen::VectorXd x = Eigen::VectorXd::Zero(l.dimension);
  if (!base.empty()) {
    if (static_cast<int>(base.size()) != l.dimension) {
      throw UsageError("--base needs " + std::to_string(l.dimension) + " values");
    }
    x = Eigen::Map<const Eigen::VectorXd>(base.data(), l.dimension);
  }

  const bool qaoa = spec.family == Family::qaoa1 || spec.family == Family::qaoa_multi;
  const int layers = l.dimension / 2;
  for (int i = 0; i < l.dimension; ++i) {
    if (qaoa) {
      out << (i < layers ? "beta" : "gamma") << (i % layers + 1) << ',';
    } else {
      out << "phi" << i + 1 << ',';
    }
  }
  out << "value\n";

  auto coord = [](const Axis& a, int s) {
    return a.count == 1 ? a.lo : a.lo + (a.hi - a.lo) * s / (a.count - 1);
  };
  const int outer = axes.size() == 2 ? axes[1].count : 1;
  char buf[40];
  for (int s1 = 0; s1 < outer; ++s1) {
    if (axes.size() == 2) x[axes[1].index] = coord(axes[1], s1);
    for (int s0 = 0; s0 < axes[0].count; ++s0) {
      x[axes[0].index] = coord(axes[0], s0);
      const double value = l.simulate(x);
      for (int i = 0; i < l.dimension; ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,", x[i]);
        out << buf;
      }
      std::snprintf(buf, sizeof buf, "%.17g\n", value);
      out << buf;
    }
  }
}

// ---------------------------------------------------------------------------
// export

json run_export(const ExperimentSpec& spec) {
  const auto graphs = build_graphs(spec);
  json doc = document_header(spec, "export");
  json instances = json::array();
  for (const Graph& g : graphs) {
    json rec = {{"family", std::string(family_tag(spec.family))}, {"graph", graph_json(g)}};
    auto put_vqa = [&](const VqaInstance& inst) {
      rec["dimension"] = inst.dim();
      rec["layers"] = inst.layers();
      rec["initial_state"] = vector_json(inst.initial.amplitudes());
      json gens = json::array();
      for (const auto& h : inst.generators) gens.push_back(matrix_json(h.matrix()));
      rec["generators"] = std::move(gens);
      rec["observable"] = matrix_json(inst.observable.matrix());
    };
    auto put_qaoa = [&](const QaoaInstance& inst) {
      rec["dimension"] = inst.dim();
      rec["layers"] = inst.layers;
      rec["initial_state"] = vector_json(inst.initial.amplitudes());
      rec["mixer"] = matrix_json(inst.hb.matrix());
      rec["cost"] = matrix_json(inst.hc.matrix());
    };
    switch (spec.family) {
      case Family::oracular: put_vqa(oracular_vqa_instance(g)); break;
      case Family::boosted:
        rec["k"] = spec.k;
        put_vqa(boosted_vqa_instance(g, spec.k));
        break;
      case Family::logdim: put_vqa(logdim_vqa_instance(g)); break;
      case Family::single_layer:
        rec["m"] = spec.m;
        put_vqa(single_layer_instance(g, spec.m));
        break;
      case Family::qaoa1:
        rec["m"] = spec.m;
        rec["tau"] = spec.tau;
        put_qaoa(qaoa_single_layer_instance(g, spec.tau, spec.m));
        break;
      case Family::qaoa_multi: put_qaoa(qaoa_multilayer_instance(g)); break;
      case Family::fermion: {
        const auto inst = fermionic_vqa_instance(g);
        rec["modes"] = inst.modes();
        rec["layers"] = inst.layers();
        rec["h0"] = matrix_json(inst.h0.entries());
        json gens = json::array();
        for (const auto& h : inst.generators) gens.push_back(matrix_json(h.entries()));
        rec["generators"] = std::move(gens);
        rec["observable"] = matrix_json(inst.o.entries());
        break;
      }
    }
    instances.push_back(std::move(rec));
  }
  doc["instances"] = std::move(instances);
  return doc;
}

}  // namespace vqalab
