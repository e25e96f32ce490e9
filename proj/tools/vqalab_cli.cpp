// vqalab: instance export, identity verification, optimization experiments
// and landscape sampling for MaxCut-derived VQA instances.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vqalab/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct RawOptions {
  std::string family = "logdim";
  std::string graph;
  std::string random_graph;
  std::vector<std::string> axes;
  std::vector<double> base;
};

void add_common(CLI::App* sub, vqalab::ExperimentSpec& spec, RawOptions& raw) {
  sub->add_option("--family", raw.family,
                  "oracular | boosted | logdim | single-layer | qaoa1 | qaoa-multi | fermion")
      ->capture_default_str();
  sub->add_option("--graph", raw.graph, "graph file: vertex count, then one 'u v' line per edge (1-indexed)");
  sub->add_option("--random-graph", raw.random_graph, "random graph d:p");
  sub->add_option("--count", spec.count, "number of random graphs")->capture_default_str();
  sub->add_option("--seed", spec.optimizer.seed, "seed for graphs, samples and restarts")
      ->capture_default_str();
  sub->add_option("--restarts", spec.optimizer.restarts, "descent restarts")->capture_default_str();
  sub->add_option("--max-iters", spec.optimizer.max_iters, "descent iteration cap")->capture_default_str();
  sub->add_option("--tol", spec.tol, "verification tolerance")->capture_default_str();
  sub->add_option("--samples", spec.samples, "random points per instance (verify)")->capture_default_str();
  sub->add_option("--out", spec.out, "output path (default stdout)");
  sub->add_option("--m", spec.m, "ergodic base")->capture_default_str();
  sub->add_option("--tau", spec.tau, "single-layer QAOA coupling")->capture_default_str();
  sub->add_option("--k", spec.k, "boosting power")->capture_default_str();
}

void finish_spec(vqalab::ExperimentSpec& spec, const RawOptions& raw) {
  const auto family = vqalab::parse_family(raw.family);
  if (!family) throw vqalab::UsageError("unknown family '" + raw.family + "'");
  spec.family = *family;
  if (!raw.graph.empty()) spec.graph_file = raw.graph;
  if (!raw.random_graph.empty()) spec.random_graph = vqalab::parse_random_graph(raw.random_graph);
  spec.validate();
}

void emit(const std::string& text, const vqalab::ExperimentSpec& spec) {
  if (!spec.out) {
    std::cout << text;
    return;
  }
  std::ofstream file(*spec.out);
  if (!file) throw std::runtime_error("cannot write " + *spec.out);
  file << text;
}

int run(const std::string& command, vqalab::ExperimentSpec& spec, const RawOptions& raw) {
  finish_spec(spec, raw);
  if (command == "verify") {
    const auto report = vqalab::run_verify(spec);
    for (const auto& id : report.identities) {
      std::fprintf(stderr, "%-4s %-20s max residual %.3e over %d checks\n",
                   id.max_residual <= spec.tol ? "ok" : "FAIL", id.name.c_str(), id.max_residual,
                   id.checks);
    }
    emit(report.document.dump(2) + "\n", spec);
    return report.passed ? kExitOk : kExitFailure;
  }
  if (command == "optimize") {
    emit(vqalab::run_optimize(spec).dump(2) + "\n", spec);
    return kExitOk;
  }
  if (command == "landscape") {
    std::vector<vqalab::Axis> axes;
    for (const auto& a : raw.axes) axes.push_back(vqalab::parse_axis(a));
    if (spec.out) {
      std::ofstream file(*spec.out);
      if (!file) throw std::runtime_error("cannot write " + *spec.out);
      vqalab::run_landscape(spec, axes, raw.base, file);
    } else {
      vqalab::run_landscape(spec, axes, raw.base, std::cout);
    }
    return kExitOk;
  }
  emit(vqalab::run_export(spec).dump(2) + "\n", spec);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"VQA hardness lab"};
  app.require_subcommand(1);
  vqalab::ExperimentSpec spec;
  RawOptions raw;

  auto* verify = app.add_subcommand("verify", "check closed forms against simulation");
  auto* optimize = app.add_subcommand("optimize", "multistart descent with error metrics");
  auto* landscape = app.add_subcommand("landscape", "sample the landscape on a 1-D or 2-D grid (CSV)");
  auto* exporter = app.add_subcommand("export", "write instance matrices as JSON");
  for (auto* sub : {verify, optimize, landscape, exporter}) add_common(sub, spec, raw);
  landscape->add_option("--axis", raw.axes, "INDEX:LO:HI:COUNT (at most twice)")->required();
  landscape->add_option("--base", raw.base, "values of the fixed parameters")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run(command, spec, raw);
  } catch (const vqalab::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}
