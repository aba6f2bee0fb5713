#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "hyperlap/hypergraph.hpp"

namespace hyperlap {

// row = one sample's feature vector
using FeatureMatrix = Eigen::MatrixXd;

struct ClusterAssignment {
  Index k = 0;                          // cluster count (after singleton repair)
  std::vector<Index> assignment;        // length n, values in [0,k)
  Eigen::MatrixXd centroids;            // k x d
  double inertia = 0.0;                 // sum of squared distances to assigned centroids
  std::vector<double> inertia_history;  // recorded after each assignment step, non-increasing
  std::vector<double> mean_sqdist;      // per-cluster mean squared distance to centroid
  Index iterations = 0;                 // Lloyd rounds performed
  Index dissolved = 0;                  // clusters removed because they held fewer than 2 points
};

// Lloyd iteration with seeded kmeans++ initialization. Deterministic for a
// given (x, k, seed, max_iter): identical inputs give bit-identical outputs.
// After convergence, clusters with fewer than 2 members are dissolved and
// their points reassigned to the nearest surviving centroid, so every
// surviving cluster can act as a hyperedge.
ClusterAssignment kmeans(const FeatureMatrix& x, Index k, std::uint64_t seed,
                         Index max_iter = 300);

enum class WeightingRule { Unit, InverseVariance };

// One hyperedge per cluster. Unit weighting gives w(e) = 1; InverseVariance
// gives w(e) = 1 / (1e-9 + mean squared distance to the cluster centroid),
// so tight clusters weigh more.
Hypergraph build_hypergraph(const ClusterAssignment& a, WeightingRule weighting);

}  // namespace hyperlap
