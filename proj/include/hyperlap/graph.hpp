#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <vector>

#include "hyperlap/operators.hpp"
#include "hyperlap/partition.hpp"

namespace hyperlap {

// Symmetric nonnegative affinity with zero diagonal, stored CSR so large
// graphs stay sparse. Every vertex must end up with positive degree.
class WeightedGraph {
 public:
  // validates symmetry, zero diagonal, nonnegativity, positive degrees
  static WeightedGraph from_affinity(const Eigen::MatrixXd& a);

  Index num_vertices() const noexcept { return n_; }
  std::span<const Index> row_ptr() const noexcept { return ptr_; }
  std::span<const Index> neighbor_data() const noexcept { return idx_; }
  std::span<const double> value_data() const noexcept { return vals_; }
  const Eigen::VectorXd& degrees() const noexcept { return degrees_; }

  Eigen::MatrixXd affinity() const;  // dense

 private:
  friend WeightedGraph knn_gaussian_graph(const FeatureMatrix&, Index, std::optional<double>,
                                          double*);
  WeightedGraph() = default;
  void finalize();  // computes degrees and validates them

  Index n_ = 0;
  std::vector<Index> ptr_;
  std::vector<Index> idx_;
  std::vector<double> vals_;
  Eigen::VectorXd degrees_;
};

// affinity(i,j) = exp(-||x_i - x_j||^2 / (2 sigma^2)) whenever j is among the
// k nearest neighbors of i or vice versa (union symmetrization), else 0.
// bandwidth = nullopt picks sigma as the median Euclidean distance over the
// retained neighbor pairs; sigma_out (optional) receives the value used.
WeightedGraph knn_gaussian_graph(const FeatureMatrix& x, Index k_neighbors,
                                 std::optional<double> bandwidth, double* sigma_out = nullptr);

// Unnormalized D - A; SymmetricNormalized I - D^{-1/2} A D^{-1/2};
// RandomWalk I - D^{-1} A.
Eigen::MatrixXd graph_laplacian(const WeightedGraph& g, LaplacianKind kind);

// I minus the corresponding Laplacian; Unnormalized rejected.
Eigen::MatrixXd graph_propagation_matrix(const WeightedGraph& g, LaplacianKind kind);

// Matrix-free counterpart of the dense builders above. The referenced graph
// must outlive the operator.
class GraphOperator final : public LinearMap {
 public:
  GraphOperator(const WeightedGraph& g, LaplacianKind kind, OperatorForm form);
  Index size() const override { return g_->num_vertices(); }
  void apply(const Eigen::MatrixXd& x, Eigen::MatrixXd& y) const override;

 private:
  const WeightedGraph* g_;
  LaplacianKind kind_;
  OperatorForm form_;
  Eigen::VectorXd inv_deg_;
  Eigen::VectorXd inv_sqrt_deg_;
};

}  // namespace hyperlap
