#pragma once

#include <Eigen/Dense>

#include "hyperlap/hypergraph.hpp"

namespace hyperlap {

enum class LaplacianKind { Unnormalized, SymmetricNormalized, RandomWalk };

// Above this vertex count, solvers switch from materialized matrices plus
// direct factorization to matrix-free operator application.
inline constexpr Index kDefaultDenseCutoff = 10000;

// Dense operator of the selected kind:
//   Unnormalized          D_v - M
//   SymmetricNormalized   I - D_v^{-1/2} M D_v^{-1/2}
//   RandomWalk            I - D_v^{-1} M
// where M(v,u) sums w(e)/d(e) over hyperedges containing both u and v.
Eigen::MatrixXd laplacian(const Hypergraph& g, LaplacianKind kind);

// Dense label-spreading matrix: I minus the corresponding Laplacian, i.e.
// D_v^{-1} M (RandomWalk, row-stochastic) or D_v^{-1/2} M D_v^{-1/2}
// (SymmetricNormalized, symmetric). The Unnormalized kind has no spreading
// matrix and is rejected.
Eigen::MatrixXd propagation_matrix(const Hypergraph& g, LaplacianKind kind);

// Linear operator on R^n applied columnwise to n x c matrices. Implementations
// are immutable after construction and safe for concurrent apply calls.
class LinearMap {
 public:
  virtual ~LinearMap() = default;
  virtual Index size() const = 0;
  // y = Op * x; y is resized to x's shape
  virtual void apply(const Eigen::MatrixXd& x, Eigen::MatrixXd& y) const = 0;
  // dense matrix of the operator, built by applying it to identity columns
  Eigen::MatrixXd materialize() const;
};

class DenseMap final : public LinearMap {
 public:
  explicit DenseMap(Eigen::MatrixXd m);
  Index size() const override { return m_.rows(); }
  void apply(const Eigen::MatrixXd& x, Eigen::MatrixXd& y) const override;
  const Eigen::MatrixXd& matrix() const noexcept { return m_; }

 private:
  Eigen::MatrixXd m_;
};

enum class OperatorForm { Laplacian, Propagation };

// Matrix-free application of the selected Laplacian or spreading operator:
// one pass over hyperedges and one over vertices per product, never forming
// the n x n matrix. The referenced hypergraph must outlive the operator.
class HypergraphOperator final : public LinearMap {
 public:
  HypergraphOperator(const Hypergraph& g, LaplacianKind kind, OperatorForm form);
  Index size() const override { return g_->num_vertices(); }
  void apply(const Eigen::MatrixXd& x, Eigen::MatrixXd& y) const override;

 private:
  const Hypergraph* g_;
  LaplacianKind kind_;
  OperatorForm form_;
  Eigen::VectorXd edge_coeff_;    // w(e)/d(e)
  Eigen::VectorXd deg_;           // d(v)
  Eigen::VectorXd inv_deg_;
  Eigen::VectorXd inv_sqrt_deg_;
};

}  // namespace hyperlap
