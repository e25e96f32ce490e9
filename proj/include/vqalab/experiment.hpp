#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "vqalab/maxcut.hpp"
#include "vqalab/optimize.hpp"
#include "vqalab/reductions.hpp"

namespace vqalab {

inline constexpr const char* kSchema = "vqa-hardness-lab/1";
inline constexpr const char* kArtifactVersion = "1.0.0";

/// Bad user input: maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RandomGraphSpec {
  int d = 0;
  double p = 0.5;
};

struct ExperimentSpec {
  Family family = Family::logdim;
  std::optional<std::string> graph_file;
  std::optional<RandomGraphSpec> random_graph;
  /// Number of random graphs; graph i is drawn with seed optimizer.seed + i.
  int count = 1;
  OptimizerConfig optimizer;
  std::optional<std::string> out;
  double tol = 1e-9;
  int m = 8;
  double tau = 1e-3;
  int k = 2;
  /// Random parameter points per instance for verify.
  int samples = 100;

  /// Throws UsageError.
  void validate() const;
  nlohmann::json to_json() const;
};

/// Parses "d:p", e.g. "8:0.5".
RandomGraphSpec parse_random_graph(const std::string& text);

std::vector<Graph> build_graphs(const ExperimentSpec& spec);

/// One instance seen as a function of its flat parameter vector. QAOA
/// parameters are ordered beta_1..beta_L, gamma_1..gamma_L.
struct Landscape {
  Family family;
  Graph graph;
  int dimension = 0;
  /// Upper end of the natural sampling box [0, scale_i) per parameter.
  Eigen::VectorXd sample_scale{};
  std::function<double(const Eigen::VectorXd&)> simulate{};
  /// Exact closed form; empty when only a bound is known.
  std::function<double(const Eigen::VectorXd&)> closed_form{};
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> gradient{};
  std::function<double()> reference{};
  double lambda_min = 0;
  double lambda_max = 0;
  /// Whether the parameters are vertex angles, so that rounding yields a cut.
  bool vertex_angles = false;
};

Landscape make_landscape(const ExperimentSpec& spec, const Graph& g);

struct IdentityResult {
  std::string name;
  double max_residual = 0;
  int checks = 0;
};

struct VerifyReport {
  std::vector<IdentityResult> identities;
  nlohmann::json document;
  bool passed = false;
};

VerifyReport run_verify(const ExperimentSpec& spec);

nlohmann::json run_optimize(const ExperimentSpec& spec);

/// INDEX:LO:HI:COUNT, endpoints inclusive.
struct Axis {
  int index = 0;
  double lo = 0;
  double hi = 0;
  int count = 0;
};

Axis parse_axis(const std::string& text);

/// Writes a CSV with one column per parameter and a final "value" column.
void run_landscape(const ExperimentSpec& spec, const std::vector<Axis>& axes,
                   const std::vector<double>& base, std::ostream& out);

nlohmann::json run_export(const ExperimentSpec& spec);

/// min over 0 < theta < pi of (2/pi) theta / (1 - cos theta).
double goemans_williamson_constant();

}  // namespace vqalab
