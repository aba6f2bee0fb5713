#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hyperlap/graph.hpp"
#include "hyperlap/hypergraph.hpp"
#include "hyperlap/rng.hpp"

namespace hyperlap {

// one property tested across many random instances; worst_error is the
// largest violation magnitude observed (0 when the property held exactly)
struct InvariantResult {
  std::string name;
  double worst_error = 0.0;
  double tolerance = 0.0;
  bool pass = true;
};

// random instances shared by the property-check command and the test suites;
// every vertex covered, weights in (0, 5], edge sizes in [2, min(n, 8)]
Hypergraph random_hypergraph(Rng& rng, Index max_n = 20, Index max_m = 8);

// random point cloud turned into a kNN Gaussian graph with auto bandwidth
WeightedGraph random_graph(Rng& rng, Index max_n = 16);

// granular violation measures (0 = property holds); exposed so tests can
// confirm the suite actually detects corrupted inputs
double psd_violation(const Eigen::MatrixXd& sym);
double null_vector_violation(const Eigen::MatrixXd& op, const Eigen::VectorXd& v);
double stochastic_violation(const Eigen::MatrixXd& s);
double spectral_range_violation(const Eigen::MatrixXd& sym, double lo, double hi);

// runs every structural and solver property over n_instances random
// hypergraphs/graphs; fully determined by (n_instances, seed)
std::vector<InvariantResult> invariant_suite(int n_instances, std::uint64_t seed);

bool all_passed(const std::vector<InvariantResult>& results);

// aligned PASS/FAIL table, one line per invariant
std::string format_invariant_report(const std::vector<InvariantResult>& results);

}  // namespace hyperlap
