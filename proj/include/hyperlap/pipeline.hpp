#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hyperlap/evaluation.hpp"
#include "hyperlap/graph.hpp"
#include "hyperlap/solvers.hpp"

namespace hyperlap {

enum class Method { HyperUnnorm, HyperRw, HyperSym, GraphUnnorm, GraphRw, GraphSym };

const char* method_name(Method m);
std::optional<Method> method_from_name(const std::string& name);
bool method_is_hypergraph(Method m);
LaplacianKind method_kind(Method m);
std::vector<Method> all_methods();

struct RunSpec {
  Method method = Method::HyperSym;
  SolverConfig solver;
  Index clusters = 250;             // hypergraph methods
  Index kmeans_max_iter = 300;
  WeightingRule weighting = WeightingRule::Unit;
  Index k_neighbors = 10;           // graph methods
  std::optional<double> bandwidth;  // nullopt = median heuristic
  std::uint64_t seed = 0;
  Index dense_cutoff = kDefaultDenseCutoff;  // above this, solve matrix-free
  std::string features_path;
  std::string labels_path;
  std::string truth_path;  // empty = no scoring
  std::string out_dir;     // empty = compute only, write nothing
};

struct RunResult {
  Eigen::MatrixXd estimates;  // original sample order
  Prediction prediction;      // original sample order
  Index class_count = 0;
  Index labeled_count = 0;
  Index solver_iterations = 0;
  double solver_residual = 0.0;
  bool converged = true;
  Index zero_confidence_count = 0;
  Index effective_clusters = 0;  // hypergraph methods, after singleton repair
  Index dissolved_clusters = 0;
  double resolved_bandwidth = 0.0;  // graph methods
  std::optional<ConfusionCounts> counts;      // present when truth was supplied
  std::optional<SensitivityReport> report;
  nlohmann::ordered_json metrics;  // complete parameter echo plus outcomes
};

// in-memory pipeline: labels define the labeled set, truth the scored set
// (both as (sample index, class index) pairs in original sample order)
RunResult run_on_data(const RunSpec& spec, const FeatureMatrix& features,
                      const std::vector<std::pair<Index, Index>>& labeled,
                      const std::vector<std::pair<Index, Index>>& truth);

// reads the input files, runs, and writes outputs when out_dir is set
RunResult run(const RunSpec& spec);

// predictions.csv and metrics.json under spec.out_dir (created if missing)
void write_outputs(const RunSpec& spec, const RunResult& result);

struct SweepCell {
  std::string name;
  bool ok = false;
  std::string error;             // failure message when !ok
  std::optional<double> micro;   // sensitivity when ok and scored
};

struct SweepResult {
  std::vector<SweepCell> cells;        // grid order
  std::vector<MethodResult> scored;    // successful cells, grid order
  std::string table;                   // human-readable comparison
  nlohmann::ordered_json json;         // machine-readable cells + best
  std::optional<std::size_t> best;     // index into cells, highest micro Q
};

// Cartesian grid: each method crossed with the cluster grid (hypergraph
// methods) or the neighbor grid (graph methods). Empty grids fall back to the
// base spec's single value. Per-cell failures are recorded, not fatal.
// Scoring requires a truth file.
SweepResult sweep(const RunSpec& base, const std::vector<Method>& methods,
                  const std::vector<Index>& clusters_grid, const std::vector<Index>& knn_grid);

}  // namespace hyperlap
