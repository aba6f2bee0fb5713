#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hyperlap/checks.hpp"
#include "hyperlap/pipeline.hpp"

namespace {

int exit_code_for(const hyperlap::Error& e) {
  switch (e.kind()) {
    case hyperlap::ErrorKind::InvalidInput: return 2;
    case hyperlap::ErrorKind::NonConvergence: return 3;
    case hyperlap::ErrorKind::InvariantViolation: return 4;
    case hyperlap::ErrorKind::Internal: return 5;
  }
  return 5;
}

long long ll(hyperlap::Index v) { return static_cast<long long>(v); }

struct CliOptions {
  hyperlap::RunSpec spec;
  std::string method = "hyper-sym";
  std::string solver = "closed";
  std::string weighting = "unit";
  std::vector<std::string> sweep_methods;
  std::vector<hyperlap::Index> clusters_grid;
  std::vector<hyperlap::Index> knn_grid;
  int check_instances = 100;
  std::uint64_t check_seed = 0;
};

std::vector<std::string> method_names() {
  std::vector<std::string> names;
  for (hyperlap::Method m : hyperlap::all_methods()) names.emplace_back(hyperlap::method_name(m));
  return names;
}

void add_data_options(CLI::App* cmd, CliOptions& opt, bool truth_required) {
  cmd->add_option("--features", opt.spec.features_path,
                  "feature file: one sample per line, comma-separated reals")
      ->required();
  cmd->add_option("--labels", opt.spec.labels_path,
                  "labeled set: lines of sample_index,class_index")
      ->required();
  auto* truth = cmd->add_option("--truth", opt.spec.truth_path,
                                "scored set, same format as --labels");
  if (truth_required) truth->required();
  cmd->add_option("--out-dir", opt.spec.out_dir, "directory for output files");
}

void add_model_options(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("--solver", opt.solver, "solution strategy")
      ->check(CLI::IsMember({"iterative", "closed"}))
      ->capture_default_str();
  cmd->add_option("--alpha", opt.spec.solver.alpha, "spreading strength, in (0,1)")
      ->capture_default_str();
  cmd->add_option("--gamma", opt.spec.solver.gamma, "regularization weight, > 0")
      ->capture_default_str();
  cmd->add_option("--tol", opt.spec.solver.tolerance, "iterative convergence threshold")
      ->capture_default_str();
  cmd->add_option("--max-iter", opt.spec.solver.max_iterations, "iteration cap")
      ->capture_default_str();
  cmd->add_option("--knn", opt.spec.k_neighbors, "neighbors per sample (graph methods)")
      ->capture_default_str();
  cmd->add_option("--bandwidth", opt.spec.bandwidth,
                  "Gaussian bandwidth (default: median pairwise distance)");
  cmd->add_option("--weighting", opt.weighting, "hyperedge weighting rule")
      ->check(CLI::IsMember({"unit", "inverse-variance"}))
      ->capture_default_str();
  cmd->add_option("--seed", opt.spec.seed, "RNG seed for clustering")->capture_default_str();
  cmd->add_option("--dense-cutoff", opt.spec.dense_cutoff,
                  "largest sample count solved with dense factorizations")
      ->capture_default_str();
}

void resolve_enums(CliOptions& opt) {
  opt.spec.method = *hyperlap::method_from_name(opt.method);
  opt.spec.solver.mode = opt.solver == "iterative" ? hyperlap::SolveMode::Iterative
                                                   : hyperlap::SolveMode::ClosedForm;
  opt.spec.weighting = opt.weighting == "unit" ? hyperlap::WeightingRule::Unit
                                               : hyperlap::WeightingRule::InverseVariance;
}

int do_run(CliOptions& opt) {
  resolve_enums(opt);
  const auto start = std::chrono::steady_clock::now();
  const hyperlap::RunResult result = hyperlap::run(opt.spec);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (result.labeled_count == 0) {
    std::fprintf(stderr, "warning: no labeled samples; all predictions are zero-confidence\n");
  }
  std::printf("%s: %lld samples, %lld classes, %lld labeled\n", opt.method.c_str(),
              ll(result.estimates.rows()), ll(result.class_count), ll(result.labeled_count));
  if (hyperlap::method_is_hypergraph(opt.spec.method)) {
    std::printf("hypergraph: %lld clusters requested, %lld effective (%lld dissolved)\n",
                ll(opt.spec.clusters), ll(result.effective_clusters),
                ll(result.dissolved_clusters));
  } else {
    std::printf("graph: %lld neighbors, bandwidth %g%s\n", ll(opt.spec.k_neighbors),
                result.resolved_bandwidth, opt.spec.bandwidth ? "" : " (auto)");
  }
  std::printf("solver %s: %lld iterations, residual %.3e, %s\n", opt.solver.c_str(),
              ll(result.solver_iterations), result.solver_residual,
              result.converged ? "converged" : "NOT converged");
  if (result.report) {
    std::printf("Q micro %.4f, macro %.4f over %lld evaluated samples\n", result.report->micro,
                result.report->macro, ll(result.counts->total));
  }
  if (result.zero_confidence_count > 0) {
    std::printf("zero-confidence predictions: %lld\n", ll(result.zero_confidence_count));
  }
  std::printf("elapsed %.3f s\n", seconds);
  if (!opt.spec.out_dir.empty()) {
    std::printf("outputs written to %s\n", opt.spec.out_dir.c_str());
  }
  if (!result.converged) {
    std::fprintf(stderr,
                 "warning: solver hit the %lld-iteration cap before reaching tolerance %g; "
                 "outputs reflect the final iterate\n",
                 ll(opt.spec.solver.max_iterations), opt.spec.solver.tolerance);
    return 3;
  }
  return 0;
}

int do_sweep(CliOptions& opt) {
  resolve_enums(opt);
  std::vector<hyperlap::Method> methods;
  if (opt.sweep_methods.empty()) {
    methods = hyperlap::all_methods();
  } else {
    for (const auto& name : opt.sweep_methods) methods.push_back(*hyperlap::method_from_name(name));
  }
  const auto start = std::chrono::steady_clock::now();
  const hyperlap::SweepResult result =
      hyperlap::sweep(opt.spec, methods, opt.clusters_grid, opt.knn_grid);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::fputs(result.table.c_str(), stdout);
  int failures = 0;
  for (const auto& cell : result.cells) {
    if (!cell.ok) {
      ++failures;
      std::fprintf(stderr, "cell failed: %s: %s\n", cell.name.c_str(), cell.error.c_str());
    }
  }
  std::printf("elapsed %.3f s\n", seconds);
  if (!opt.spec.out_dir.empty()) {
    std::filesystem::create_directories(opt.spec.out_dir);
    const auto path = std::filesystem::path(opt.spec.out_dir) / "sweep.json";
    std::ofstream out(path, std::ios::binary);
    out << result.json.dump(2) << '\n';
    if (!out.good()) {
      throw hyperlap::Error(hyperlap::ErrorKind::InvalidInput,
                            "failed writing " + path.string());
    }
    std::printf("sweep report written to %s\n", path.string().c_str());
  }
  if (!result.best) {
    std::fprintf(stderr, "error: every sweep cell failed\n");
    return 2;
  }
  return 0;
}

int do_check(const CliOptions& opt) {
  const auto results = hyperlap::invariant_suite(opt.check_instances, opt.check_seed);
  std::fputs(hyperlap::format_invariant_report(results).c_str(), stdout);
  if (!hyperlap::all_passed(results)) {
    std::fprintf(stderr, "error: invariant violations detected\n");
    return 4;
  }
  std::printf("all %zu invariants passed over %d instances (seed %llu)\n", results.size(),
              opt.check_instances, static_cast<unsigned long long>(opt.check_seed));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"semi-supervised label propagation on k-means hypergraphs and kNN graphs"};
  app.require_subcommand(1);
  CliOptions opt;

  CLI::App* run_cmd = app.add_subcommand("run", "classify with one method");
  run_cmd->add_option("--method", opt.method, "propagation method")
      ->check(CLI::IsMember(method_names()))
      ->capture_default_str();
  run_cmd->add_option("--clusters", opt.spec.clusters, "hyperedge count (hypergraph methods)")
      ->capture_default_str();
  add_model_options(run_cmd, opt);
  add_data_options(run_cmd, opt, false);

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "compare methods across a parameter grid");
  sweep_cmd->add_option("--methods", opt.sweep_methods, "methods to compare (default: all)")
      ->delimiter(',')
      ->check(CLI::IsMember(method_names()));
  sweep_cmd->add_option("--clusters-grid", opt.clusters_grid, "cluster counts to try")
      ->delimiter(',');
  sweep_cmd->add_option("--knn-grid", opt.knn_grid, "neighbor counts to try")->delimiter(',');
  sweep_cmd->add_option("--clusters", opt.spec.clusters, "cluster count when no grid is given")
      ->capture_default_str();
  add_model_options(sweep_cmd, opt);
  add_data_options(sweep_cmd, opt, true);

  CLI::App* check_cmd = app.add_subcommand("check", "verify structural and solver properties");
  check_cmd->add_option("--instances", opt.check_instances, "random instances per property family")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  check_cmd->add_option("--seed", opt.check_seed, "RNG seed for instance generation")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (run_cmd->parsed()) return do_run(opt);
    if (sweep_cmd->parsed()) return do_sweep(opt);
    return do_check(opt);
  } catch (const hyperlap::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 5;
  }
}
