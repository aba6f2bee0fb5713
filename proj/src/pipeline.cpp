#include "hyperlap/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>

#include "hyperlap/io.hpp"
#include "hyperlap/partition.hpp"

namespace hyperlap {

const char* method_name(Method m) {
  switch (m) {
    case Method::HyperUnnorm: return "hyper-unnorm";
    case Method::HyperRw: return "hyper-rw";
    case Method::HyperSym: return "hyper-sym";
    case Method::GraphUnnorm: return "graph-unnorm";
    case Method::GraphRw: return "graph-rw";
    case Method::GraphSym: return "graph-sym";
  }
  throw Error(ErrorKind::Internal, "unhandled method");
}

std::optional<Method> method_from_name(const std::string& name) {
  for (Method m : all_methods()) {
    if (name == method_name(m)) return m;
  }
  return std::nullopt;
}

bool method_is_hypergraph(Method m) {
  return m == Method::HyperUnnorm || m == Method::HyperRw || m == Method::HyperSym;
}

LaplacianKind method_kind(Method m) {
  switch (m) {
    case Method::HyperUnnorm:
    case Method::GraphUnnorm: return LaplacianKind::Unnormalized;
    case Method::HyperRw:
    case Method::GraphRw: return LaplacianKind::RandomWalk;
    case Method::HyperSym:
    case Method::GraphSym: return LaplacianKind::SymmetricNormalized;
  }
  throw Error(ErrorKind::Internal, "unhandled method");
}

std::vector<Method> all_methods() {
  return {Method::HyperUnnorm, Method::HyperRw,  Method::HyperSym,
          Method::GraphUnnorm, Method::GraphRw,  Method::GraphSym};
}

namespace {

struct SolveInputs {
  // exactly one of these is set, depending on structure size vs dense_cutoff
  std::optional<Eigen::MatrixXd> dense_s;       // propagation matrix
  std::optional<Eigen::MatrixXd> dense_l;       // Laplacian
  const LinearMap* op = nullptr;                // matrix-free operator
  const Eigen::VectorXd* degrees = nullptr;     // for the random-walk transform
};

EstimateMatrix dispatch_solver(const SolverConfig& cfg, const LaplacianKind kind,
                               const Eigen::MatrixXd& y, const SolveInputs& in,
                               const LinearMap* sym_op) {
  if (cfg.mode == SolveMode::Iterative) {
    if (in.dense_s) return propagate_iterative(*in.dense_s, y, cfg);
    return propagate_iterative(*in.op, y, cfg);
  }
  switch (kind) {
    case LaplacianKind::Unnormalized:
      if (in.dense_l) return solve_unnormalized(*in.dense_l, y, cfg.gamma);
      return solve_regularized_cg(*in.op, y, cfg.gamma);
    case LaplacianKind::SymmetricNormalized:
      if (in.dense_s) return solve_propagation_closed(*in.dense_s, y, cfg.alpha);
      return solve_propagation_closed_cg(*sym_op, y, cfg.alpha);
    case LaplacianKind::RandomWalk:
      if (in.dense_s) return solve_propagation_closed(*in.dense_s, y, cfg.alpha);
      return solve_propagation_closed_rw_cg(*sym_op, *in.degrees, y, cfg.alpha);
  }
  throw Error(ErrorKind::Internal, "unhandled solver dispatch");
}

nlohmann::ordered_json evaluation_json(const ConfusionCounts& counts,
                                       const SensitivityReport& rep) {
  nlohmann::ordered_json ev;
  ev["sensitivity_micro"] = rep.micro;
  ev["sensitivity_macro"] = rep.macro;
  ev["evaluated"] = counts.total;
  nlohmann::ordered_json per_class = nlohmann::ordered_json::array();
  for (std::size_t j = 0; j < counts.per_class.size(); ++j) {
    const auto& cc = counts.per_class[j];
    nlohmann::ordered_json cls;
    cls["class"] = j;
    if (rep.per_class[j]) {
      cls["sensitivity"] = *rep.per_class[j];
    } else {
      cls["sensitivity"] = nullptr;
    }
    cls["tp"] = cc.tp;
    cls["fn"] = cc.fn;
    cls["fp"] = cc.fp;
    cls["tn"] = cc.tn;
    per_class.push_back(std::move(cls));
  }
  ev["per_class"] = std::move(per_class);
  return ev;
}

}  // namespace

RunResult run_on_data(const RunSpec& spec, const FeatureMatrix& features,
                      const std::vector<std::pair<Index, Index>>& labeled,
                      const std::vector<std::pair<Index, Index>>& truth) {
  spec.solver.validate();
  const Index n = features.rows();

  // the scored set must be well-formed even before classes are known
  {
    std::set<Index> seen;
    for (const auto& [sample, cls] : truth) {
      require(sample >= 0 && sample < n, ErrorKind::InvalidInput,
              "truth sample index " + std::to_string(sample) + " outside [0," +
                  std::to_string(n) + ")");
      require(cls >= 0, ErrorKind::InvalidInput, "truth class index must be non-negative");
      require(seen.insert(sample).second, ErrorKind::InvalidInput,
              "truth lists sample " + std::to_string(sample) + " more than once");
    }
  }

  Index max_class = 0;
  for (const auto& [sample, cls] : labeled) max_class = std::max(max_class, cls);
  for (const auto& [sample, cls] : truth) max_class = std::max(max_class, cls);
  const Index c = max_class + 1;

  const LabelMatrix labels = initial_labels(labeled, n, c);

  // everything downstream runs in label order (labeled rows first)
  FeatureMatrix xp(n, features.cols());
  for (Index row = 0; row < n; ++row) {
    xp.row(row) = features.row(labels.permutation[static_cast<std::size_t>(row)]);
  }

  RunResult out;
  out.class_count = c;
  out.labeled_count = labels.labeled_count;

  const LaplacianKind kind = method_kind(spec.method);
  const bool dense = n <= spec.dense_cutoff;
  const bool iterative = spec.solver.mode == SolveMode::Iterative;
  require(!(iterative && kind == LaplacianKind::Unnormalized), ErrorKind::InvalidInput,
          "the unnormalized methods have no spreading form; use the closed solver");
  EstimateMatrix est;

  if (method_is_hypergraph(spec.method)) {
    const ClusterAssignment ca = kmeans(xp, spec.clusters, spec.seed, spec.kmeans_max_iter);
    out.effective_clusters = ca.k;
    out.dissolved_clusters = ca.dissolved;
    const Hypergraph hg = build_hypergraph(ca, spec.weighting);
    SolveInputs in;
    std::optional<HypergraphOperator> op;
    std::optional<HypergraphOperator> sym_op;
    Eigen::VectorXd degrees;
    if (dense) {
      if (kind == LaplacianKind::Unnormalized) {
        in.dense_l = laplacian(hg, kind);
      } else {
        in.dense_s = propagation_matrix(hg, kind);
      }
    } else if (iterative) {
      op.emplace(hg, kind, OperatorForm::Propagation);
      in.op = &*op;
    } else if (kind == LaplacianKind::Unnormalized) {
      op.emplace(hg, kind, OperatorForm::Laplacian);
      in.op = &*op;
    } else {
      // closed sym and rw both solve through the symmetric operator
      sym_op.emplace(hg, LaplacianKind::SymmetricNormalized, OperatorForm::Propagation);
      if (kind == LaplacianKind::RandomWalk) {
        degrees = compute_degrees(hg).vertex_degrees;
        in.degrees = &degrees;
      }
    }
    est = dispatch_solver(spec.solver, kind, labels.values, in, sym_op ? &*sym_op : nullptr);
  } else {
    double sigma = 0.0;
    const WeightedGraph g = knn_gaussian_graph(xp, spec.k_neighbors, spec.bandwidth, &sigma);
    out.resolved_bandwidth = sigma;
    SolveInputs in;
    std::optional<GraphOperator> op;
    std::optional<GraphOperator> sym_op;
    if (dense) {
      if (kind == LaplacianKind::Unnormalized) {
        in.dense_l = graph_laplacian(g, kind);
      } else {
        in.dense_s = graph_propagation_matrix(g, kind);
      }
    } else if (iterative) {
      op.emplace(g, kind, OperatorForm::Propagation);
      in.op = &*op;
    } else if (kind == LaplacianKind::Unnormalized) {
      op.emplace(g, kind, OperatorForm::Laplacian);
      in.op = &*op;
    } else {
      sym_op.emplace(g, LaplacianKind::SymmetricNormalized, OperatorForm::Propagation);
      if (kind == LaplacianKind::RandomWalk) in.degrees = &g.degrees();
    }
    est = dispatch_solver(spec.solver, kind, labels.values, in, sym_op ? &*sym_op : nullptr);
  }

  out.solver_iterations = est.iterations;
  out.solver_residual = est.residual;
  out.converged = est.converged;

  // back to original sample order
  const Prediction pred_internal = predict(est);
  out.estimates.resize(n, c);
  out.prediction.signs.resize(n, c);
  out.prediction.argmax.resize(static_cast<std::size_t>(n));
  out.prediction.zero_confidence.resize(static_cast<std::size_t>(n));
  for (Index row = 0; row < n; ++row) {
    const Index orig = labels.permutation[static_cast<std::size_t>(row)];
    out.estimates.row(orig) = est.values.row(row);
    out.prediction.signs.row(orig) = pred_internal.signs.row(row);
    out.prediction.argmax[static_cast<std::size_t>(orig)] =
        pred_internal.argmax[static_cast<std::size_t>(row)];
    out.prediction.zero_confidence[static_cast<std::size_t>(orig)] =
        pred_internal.zero_confidence[static_cast<std::size_t>(row)];
  }
  for (Index i = 0; i < n; ++i) {
    if (out.prediction.zero_confidence[static_cast<std::size_t>(i)]) out.zero_confidence_count++;
  }

  if (!truth.empty()) {
    std::vector<Index> pred_list;
    std::vector<Index> truth_list;
    pred_list.reserve(truth.size());
    truth_list.reserve(truth.size());
    for (const auto& [sample, cls] : truth) {
      pred_list.push_back(out.prediction.argmax[static_cast<std::size_t>(sample)]);
      truth_list.push_back(cls);
    }
    out.counts = confusion(pred_list, truth_list, c);
    out.report = sensitivity(*out.counts);
  }

  // complete parameter echo: a run is re-executable from its metrics alone
  nlohmann::ordered_json mj;
  mj["method"] = method_name(spec.method);
  mj["solver"] = spec.solver.mode == SolveMode::Iterative ? "iterative" : "closed";
  mj["alpha"] = spec.solver.alpha;
  mj["gamma"] = spec.solver.gamma;
  mj["tolerance"] = spec.solver.tolerance;
  mj["max_iterations"] = spec.solver.max_iterations;
  mj["seed"] = spec.seed;
  mj["dense_cutoff"] = spec.dense_cutoff;
  if (method_is_hypergraph(spec.method)) {
    mj["clusters"] = spec.clusters;
    mj["clusters_effective"] = out.effective_clusters;
    mj["clusters_dissolved"] = out.dissolved_clusters;
    mj["kmeans_max_iter"] = spec.kmeans_max_iter;
    mj["weighting"] = spec.weighting == WeightingRule::Unit ? "unit" : "inverse-variance";
  } else {
    mj["k_neighbors"] = spec.k_neighbors;
    if (spec.bandwidth) {
      mj["bandwidth"] = *spec.bandwidth;
    } else {
      mj["bandwidth"] = "auto";
    }
    mj["bandwidth_resolved"] = out.resolved_bandwidth;
  }
  nlohmann::ordered_json inputs;
  inputs["features"] = spec.features_path;
  inputs["labels"] = spec.labels_path;
  if (spec.truth_path.empty()) {
    inputs["truth"] = nullptr;
  } else {
    inputs["truth"] = spec.truth_path;
  }
  inputs["samples"] = n;
  inputs["dimensions"] = features.cols();
  inputs["classes"] = c;
  inputs["labeled"] = out.labeled_count;
  mj["inputs"] = std::move(inputs);
  nlohmann::ordered_json solve;
  solve["iterations"] = out.solver_iterations;
  solve["residual"] = out.solver_residual;
  solve["converged"] = out.converged;
  mj["solve"] = std::move(solve);
  mj["zero_confidence_predictions"] = out.zero_confidence_count;
  if (out.counts) {
    mj["evaluation"] = evaluation_json(*out.counts, *out.report);
  } else {
    mj["evaluation"] = nullptr;
  }
  out.metrics = std::move(mj);
  return out;
}

RunResult run(const RunSpec& spec) {
  require(!spec.features_path.empty(), ErrorKind::InvalidInput, "no feature file given");
  require(!spec.labels_path.empty(), ErrorKind::InvalidInput, "no label file given");
  const FeatureMatrix features = read_features(spec.features_path);
  const auto labeled = read_label_pairs(spec.labels_path, features.rows());
  std::vector<std::pair<Index, Index>> truth;
  if (!spec.truth_path.empty()) truth = read_label_pairs(spec.truth_path, features.rows());

  RunResult result = run_on_data(spec, features, labeled, truth);
  if (!spec.out_dir.empty()) write_outputs(spec, result);
  return result;
}

void write_outputs(const RunSpec& spec, const RunResult& result) {
  require(!spec.out_dir.empty(), ErrorKind::InvalidInput, "no output directory given");
  std::filesystem::create_directories(spec.out_dir);
  const std::filesystem::path dir(spec.out_dir);
  write_predictions((dir / "predictions.csv").string(), result.prediction, result.estimates);
  std::ofstream mf(dir / "metrics.json", std::ios::binary);
  require(mf.good(), ErrorKind::InvalidInput,
          "cannot open output file: " + (dir / "metrics.json").string());
  mf << result.metrics.dump(2) << '\n';
  require(mf.good(), ErrorKind::InvalidInput, "failed writing metrics");
}

SweepResult sweep(const RunSpec& base, const std::vector<Method>& methods,
                  const std::vector<Index>& clusters_grid, const std::vector<Index>& knn_grid) {
  require(!methods.empty(), ErrorKind::InvalidInput, "sweep grid has no methods");
  require(!base.truth_path.empty(), ErrorKind::InvalidInput,
          "sweep needs a truth file to rank by sensitivity");
  const FeatureMatrix features = read_features(base.features_path);
  const auto labeled = read_label_pairs(base.labels_path, features.rows());
  const auto truth = read_label_pairs(base.truth_path, features.rows());

  SweepResult out;
  for (Method m : methods) {
    const std::vector<Index> fallback_clusters{base.clusters};
    const std::vector<Index> fallback_knn{base.k_neighbors};
    const bool hyper = method_is_hypergraph(m);
    const std::vector<Index>& grid = hyper
                                         ? (clusters_grid.empty() ? fallback_clusters : clusters_grid)
                                         : (knn_grid.empty() ? fallback_knn : knn_grid);
    for (Index value : grid) {
      RunSpec cell_spec = base;
      cell_spec.method = m;
      cell_spec.out_dir.clear();
      std::string name = method_name(m);
      if (hyper) {
        cell_spec.clusters = value;
        name += " k=" + std::to_string(value);
      } else {
        cell_spec.k_neighbors = value;
        name += " knn=" + std::to_string(value);
      }
      SweepCell cell;
      cell.name = name;
      try {
        const RunResult r = run_on_data(cell_spec, features, labeled, truth);
        cell.ok = true;
        cell.micro = r.report->micro;
        out.scored.push_back({name, *r.counts});
      } catch (const Error& e) {
        cell.ok = false;
        cell.error = e.what();
      }
      out.cells.push_back(std::move(cell));
    }
  }

  for (std::size_t i = 0; i < out.cells.size(); ++i) {
    if (!out.cells[i].ok) continue;
    if (!out.best || *out.cells[i].micro > *out.cells[*out.best].micro) out.best = i;
  }

  if (!out.scored.empty()) {
    out.table = comparison_table(out.scored);
  } else {
    out.table = "(no cell succeeded)\n";
  }
  if (out.best) {
    out.table += "\nbest: " + out.cells[*out.best].name + " (Q micro = " +
                 format_double(*out.cells[*out.best].micro) + ")\n";
  }

  nlohmann::ordered_json cells = nlohmann::ordered_json::array();
  for (const auto& cell : out.cells) {
    nlohmann::ordered_json cj;
    cj["name"] = cell.name;
    cj["ok"] = cell.ok;
    if (cell.ok) {
      cj["sensitivity_micro"] = *cell.micro;
    } else {
      cj["error"] = cell.error;
    }
    cells.push_back(std::move(cj));
  }
  out.json["cells"] = std::move(cells);
  if (out.best) {
    out.json["best"] = out.cells[*out.best].name;
  } else {
    out.json["best"] = nullptr;
  }
  if (!out.scored.empty()) out.json["comparison"] = comparison_json(out.scored);
  return out;
}

}  // namespace hyperlap
