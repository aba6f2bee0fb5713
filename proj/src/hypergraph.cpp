#include "hyperlap/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hyperlap {

Hypergraph::Hypergraph(Index num_vertices, const std::vector<std::vector<Index>>& edges,
                       std::vector<double> weights)
    : n_(num_vertices), m_(static_cast<Index>(edges.size())), weights_(std::move(weights)) {
  require(n_ >= 1, ErrorKind::InvalidInput, "hypergraph needs at least one vertex");
  require(m_ >= 1, ErrorKind::InvalidInput, "hypergraph needs at least one hyperedge");
  require(static_cast<Index>(weights_.size()) == m_, ErrorKind::InvalidInput,
          "weight count (" + std::to_string(weights_.size()) + ") does not match hyperedge count (" +
              std::to_string(m_) + ")");

  for (Index e = 0; e < m_; ++e) {
    require(std::isfinite(weights_[e]) && weights_[e] > 0.0, ErrorKind::InvalidInput,
            "hyperedge " + std::to_string(e) + " has non-positive weight");
  }

  edge_ptr_.assign(static_cast<std::size_t>(m_) + 1, 0);
  std::size_t total = 0;
  for (Index e = 0; e < m_; ++e) {
    total += edges[static_cast<std::size_t>(e)].size();
    edge_ptr_[static_cast<std::size_t>(e) + 1] = static_cast<Index>(total);
  }
  edge_members_.resize(total);

  for (Index e = 0; e < m_; ++e) {
    const auto& members = edges[static_cast<std::size_t>(e)];
    require(members.size() >= 2, ErrorKind::InvalidInput,
            "hyperedge " + std::to_string(e) + " has " + std::to_string(members.size()) +
                " vertices; every hyperedge needs at least 2");
    Index* dst = edge_members_.data() + edge_ptr_[e];
    std::copy(members.begin(), members.end(), dst);
    std::sort(dst, dst + members.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
      require(dst[i] >= 0 && dst[i] < n_, ErrorKind::InvalidInput,
              "hyperedge " + std::to_string(e) + " references vertex " + std::to_string(dst[i]) +
                  " outside [0," + std::to_string(n_) + ")");
      require(i == 0 || dst[i] != dst[i - 1], ErrorKind::InvalidInput,
              "hyperedge " + std::to_string(e) + " lists vertex " + std::to_string(dst[i]) +
                  " more than once");
    }
  }

  // transpose into vertex -> incident edges (counting pass then fill pass;
  // scanning edges in ascending order leaves each vertex's list sorted)
  vertex_ptr_.assign(static_cast<std::size_t>(n_) + 1, 0);
  for (Index v : edge_members_) vertex_ptr_[static_cast<std::size_t>(v) + 1]++;
  for (Index v = 0; v < n_; ++v) {
    require(vertex_ptr_[static_cast<std::size_t>(v) + 1] > 0, ErrorKind::InvalidInput,
            "vertex " + std::to_string(v) + " belongs to no hyperedge");
    vertex_ptr_[static_cast<std::size_t>(v) + 1] += vertex_ptr_[static_cast<std::size_t>(v)];
  }
  vertex_edges_.resize(total);
  std::vector<Index> cursor(vertex_ptr_.begin(), vertex_ptr_.end() - 1);
  for (Index e = 0; e < m_; ++e) {
    for (Index p = edge_ptr_[e]; p < edge_ptr_[e + 1]; ++p) {
      vertex_edges_[static_cast<std::size_t>(cursor[static_cast<std::size_t>(edge_members_[p])]++)] = e;
    }
  }
}

Hypergraph Hypergraph::with_unit_weights(Index num_vertices,
                                         const std::vector<std::vector<Index>>& edges) {
  return Hypergraph(num_vertices, edges, std::vector<double>(edges.size(), 1.0));
}

Eigen::MatrixXd Hypergraph::incidence() const {
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n_, m_);
  for (Index e = 0; e < m_; ++e) {
    for (Index v : edge_members(e)) h(v, e) = 1.0;
  }
  return h;
}

DegreeData compute_degrees(const Hypergraph& g) {
  const Index n = g.num_vertices();
  const Index m = g.num_edges();
  DegreeData d;
  d.vertex_degrees.setZero(n);
  d.hyperedge_degrees.resize(m);
  for (Index v = 0; v < n; ++v) {
    double acc = 0.0;
    for (Index e : g.incident_edges(v)) acc += g.weight(e);
    d.vertex_degrees[v] = acc;
  }
  for (Index e = 0; e < m; ++e) d.hyperedge_degrees[e] = static_cast<double>(g.edge_size(e));
  return d;
}

double quadratic_form_oracle(const Hypergraph& g, const Eigen::VectorXd& f) {
  require(f.size() == g.num_vertices(), ErrorKind::InvalidInput,
          "vector length does not match vertex count");
  require(f.allFinite(), ErrorKind::InvalidInput, "vector has non-finite entries");
  double total = 0.0;
  for (Index e = 0; e < g.num_edges(); ++e) {
    const double coeff = g.weight(e) / static_cast<double>(g.edge_size(e));
    const auto members = g.edge_members(e);
    for (Index u : members) {
      for (Index v : members) {
        const double diff = f[u] - f[v];
        total += coeff * diff * diff;
      }
    }
  }
  return 0.5 * total;
}

}  // namespace hyperlap
