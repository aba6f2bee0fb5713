#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "hyperlap/error.hpp"

namespace hyperlap {

using Index = Eigen::Index;

struct DegreeData {
  Eigen::VectorXd vertex_degrees;     // d(v) = sum over incident hyperedges of w(e)
  Eigen::VectorXd hyperedge_degrees;  // d(e) = |e|
};

// Immutable vertex/hyperedge membership structure with positive hyperedge
// weights. Stored as two CSR-style index lists (edge -> members and
// vertex -> incident edges) so both traversal directions are cheap.
//
// Construction validates:
//   - every hyperedge has at least 2 distinct vertices
//   - every vertex belongs to at least one hyperedge (degrees stay positive)
//   - weights are finite and strictly positive
class Hypergraph {
 public:
  // edges[e] lists the member vertices of hyperedge e (any order, no dups)
  Hypergraph(Index num_vertices, const std::vector<std::vector<Index>>& edges,
             std::vector<double> weights);

  static Hypergraph with_unit_weights(Index num_vertices,
                                      const std::vector<std::vector<Index>>& edges);

  Index num_vertices() const noexcept { return n_; }
  Index num_edges() const noexcept { return m_; }

  // member vertices of hyperedge e, ascending
  std::span<const Index> edge_members(Index e) const {
    return {edge_members_.data() + edge_ptr_[e],
            static_cast<std::size_t>(edge_ptr_[e + 1] - edge_ptr_[e])};
  }

  // hyperedges containing vertex v, ascending
  std::span<const Index> incident_edges(Index v) const {
    return {vertex_edges_.data() + vertex_ptr_[v],
            static_cast<std::size_t>(vertex_ptr_[v + 1] - vertex_ptr_[v])};
  }

  Index edge_size(Index e) const { return edge_ptr_[e + 1] - edge_ptr_[e]; }
  double weight(Index e) const { return weights_[e]; }
  const std::vector<double>& weights() const noexcept { return weights_; }

  // raw CSR views for the compute kernels
  std::span<const Index> edge_ptr() const noexcept { return edge_ptr_; }
  std::span<const Index> edge_member_data() const noexcept { return edge_members_; }
  std::span<const Index> vertex_ptr() const noexcept { return vertex_ptr_; }
  std::span<const Index> vertex_edge_data() const noexcept { return vertex_edges_; }

  // dense incidence indicator, n x m (for small-scale checks and tests)
  Eigen::MatrixXd incidence() const;

 private:
  Index n_ = 0;
  Index m_ = 0;
  std::vector<Index> edge_ptr_;       // size m+1
  std::vector<Index> edge_members_;   // concatenated member lists
  std::vector<Index> vertex_ptr_;     // size n+1
  std::vector<Index> vertex_edges_;   // concatenated incident-edge lists
  std::vector<double> weights_;       // size m
};

// d(v) and d(e) exactly as defined; pure function of the hypergraph
DegreeData compute_degrees(const Hypergraph& g);

// Direct double-summation evaluation of the smoothness functional
//   (1/2) * sum over e of sum over ordered pairs (u,v) in e of
//          (w(e)/d(e)) * (f(u) - f(v))^2
// Serves as the slow independent reference for f' * L * f; the ordered-pair
// reading is what makes the identity with the unnormalized Laplacian exact.
double quadratic_form_oracle(const Hypergraph& g, const Eigen::VectorXd& f);

}  // namespace hyperlap
