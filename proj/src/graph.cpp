#include "hyperlap/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

#include "hyperlap/kernels.hpp"

namespace hyperlap {

void WeightedGraph::finalize() {
  degrees_.resize(n_);
  for (Index v = 0; v < n_; ++v) {
    double acc = 0.0;
    for (Index p = ptr_[static_cast<std::size_t>(v)]; p < ptr_[static_cast<std::size_t>(v) + 1]; ++p) {
      acc += vals_[static_cast<std::size_t>(p)];
    }
    degrees_[v] = acc;
    require(acc > 0.0, ErrorKind::InvalidInput,
            "vertex " + std::to_string(v) + " has zero degree");
  }
}

WeightedGraph WeightedGraph::from_affinity(const Eigen::MatrixXd& a) {
  require(a.rows() == a.cols(), ErrorKind::InvalidInput, "affinity must be square");
  const Index n = a.rows();
  require(n >= 2, ErrorKind::InvalidInput, "graph needs at least 2 vertices");
  require(a.allFinite(), ErrorKind::InvalidInput, "affinity has non-finite entries");

  WeightedGraph g;
  g.n_ = n;
  g.ptr_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (Index i = 0; i < n; ++i) {
    require(a(i, i) == 0.0, ErrorKind::InvalidInput,
            "affinity has a self-loop at vertex " + std::to_string(i));
    for (Index j = 0; j < n; ++j) {
      require(a(i, j) >= 0.0, ErrorKind::InvalidInput, "affinity has a negative entry");
      require(a(i, j) == a(j, i), ErrorKind::InvalidInput,
              "affinity is not exactly symmetric at (" + std::to_string(i) + "," +
                  std::to_string(j) + ")");
      if (a(i, j) > 0.0) {
        g.idx_.push_back(j);
        g.vals_.push_back(a(i, j));
      }
    }
    g.ptr_[static_cast<std::size_t>(i) + 1] = static_cast<Index>(g.idx_.size());
  }
  g.finalize();
  return g;
}

Eigen::MatrixXd WeightedGraph::affinity() const {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_, n_);
  for (Index i = 0; i < n_; ++i) {
    for (Index p = ptr_[static_cast<std::size_t>(i)]; p < ptr_[static_cast<std::size_t>(i) + 1]; ++p) {
      a(i, idx_[static_cast<std::size_t>(p)]) = vals_[static_cast<std::size_t>(p)];
    }
  }
  return a;
}

WeightedGraph knn_gaussian_graph(const FeatureMatrix& x, Index k_neighbors,
                                 std::optional<double> bandwidth, double* sigma_out) {
  const Index n = x.rows();
  require(n >= 2, ErrorKind::InvalidInput, "need at least 2 samples to build a graph");
  require(x.allFinite(), ErrorKind::InvalidInput, "feature matrix has non-finite entries");
  require(k_neighbors >= 1 && k_neighbors < n, ErrorKind::InvalidInput,
          "k_neighbors must lie in [1, " + std::to_string(n - 1) + "]");
  if (bandwidth) {
    require(std::isfinite(*bandwidth) && *bandwidth > 0.0, ErrorKind::InvalidInput,
            "bandwidth must be positive");
  }

  std::vector<Index> nbr(static_cast<std::size_t>(n * k_neighbors));
  std::vector<double> nbr_sq(static_cast<std::size_t>(n * k_neighbors));
  kernels::knn_rows(x, k_neighbors, nbr.data(), nbr_sq.data());

  // union symmetrization: keep (i,j) when either endpoint retained the other.
  // squared distances are computed identically from both endpoints, so a
  // max-combine and a dedup are the same thing here.
  std::vector<std::tuple<Index, Index, double>> pairs;
  pairs.reserve(static_cast<std::size_t>(n * k_neighbors));
  for (Index i = 0; i < n; ++i) {
    for (Index q = 0; q < k_neighbors; ++q) {
      const Index j = nbr[static_cast<std::size_t>(i * k_neighbors + q)];
      const double sq = nbr_sq[static_cast<std::size_t>(i * k_neighbors + q)];
      pairs.emplace_back(std::min(i, j), std::max(i, j), sq);
    }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end(),
                          [](const auto& a, const auto& b) {
                            return std::get<0>(a) == std::get<0>(b) &&
                                   std::get<1>(a) == std::get<1>(b);
                          }),
              pairs.end());

  double sigma;
  if (bandwidth) {
    sigma = *bandwidth;
  } else {
    std::vector<double> dist(pairs.size());
    for (std::size_t p = 0; p < pairs.size(); ++p) dist[p] = std::sqrt(std::get<2>(pairs[p]));
    std::sort(dist.begin(), dist.end());
    const std::size_t half = dist.size() / 2;
    sigma = (dist.size() % 2 == 1) ? dist[half] : 0.5 * (dist[half - 1] + dist[half]);
    require(sigma > 0.0, ErrorKind::InvalidInput,
            "auto bandwidth degenerated to zero (too many duplicate points)");
  }
  if (sigma_out) *sigma_out = sigma;

  const double denom = 2.0 * sigma * sigma;
  WeightedGraph g;
  g.n_ = n;
  // adjacency counts, then CSR fill; both directions of every retained pair
  std::vector<Index> counts(static_cast<std::size_t>(n), 0);
  for (const auto& [i, j, sq] : pairs) {
    counts[static_cast<std::size_t>(i)]++;
    counts[static_cast<std::size_t>(j)]++;
  }
  g.ptr_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (Index v = 0; v < n; ++v) {
    g.ptr_[static_cast<std::size_t>(v) + 1] = g.ptr_[static_cast<std::size_t>(v)] + counts[static_cast<std::size_t>(v)];
  }
  g.idx_.resize(static_cast<std::size_t>(g.ptr_[static_cast<std::size_t>(n)]));
  g.vals_.resize(g.idx_.size());
  std::vector<Index> cursor(g.ptr_.begin(), g.ptr_.end() - 1);
  // pairs are sorted by (i,j), so each row's neighbor list comes out sorted:
  // row i receives its j>i neighbors in order here...
  for (const auto& [i, j, sq] : pairs) {
    const double w = std::exp(-sq / denom);
    g.idx_[static_cast<std::size_t>(cursor[static_cast<std::size_t>(i)])] = j;
    g.vals_[static_cast<std::size_t>(cursor[static_cast<std::size_t>(i)]++)] = w;
  }
  // ...and the mirrored j<i entries are appended afterwards, then each row is
  // sorted once so neighbor order is canonical
  for (const auto& [i, j, sq] : pairs) {
    const double w = std::exp(-sq / denom);
    g.idx_[static_cast<std::size_t>(cursor[static_cast<std::size_t>(j)])] = i;
    g.vals_[static_cast<std::size_t>(cursor[static_cast<std::size_t>(j)]++)] = w;
  }
  for (Index v = 0; v < n; ++v) {
    const Index lo = g.ptr_[static_cast<std::size_t>(v)];
    const Index hi = g.ptr_[static_cast<std::size_t>(v) + 1];
    std::vector<std::pair<Index, double>> row;
    row.reserve(static_cast<std::size_t>(hi - lo));
    for (Index p = lo; p < hi; ++p) {
      row.emplace_back(g.idx_[static_cast<std::size_t>(p)], g.vals_[static_cast<std::size_t>(p)]);
    }
    std::sort(row.begin(), row.end());
    for (Index p = lo; p < hi; ++p) {
      g.idx_[static_cast<std::size_t>(p)] = row[static_cast<std::size_t>(p - lo)].first;
      g.vals_[static_cast<std::size_t>(p)] = row[static_cast<std::size_t>(p - lo)].second;
    }
  }
  g.finalize();
  return g;
}

Eigen::MatrixXd graph_laplacian(const WeightedGraph& g, LaplacianKind kind) {
  const Eigen::MatrixXd a = g.affinity();
  const Eigen::VectorXd& d = g.degrees();
  switch (kind) {
    case LaplacianKind::Unnormalized: {
      Eigen::MatrixXd l = -a;
      l.diagonal() += d;
      return l;
    }
    case LaplacianKind::SymmetricNormalized: {
      const Eigen::VectorXd inv_sqrt = d.cwiseSqrt().cwiseInverse();
      Eigen::MatrixXd l = -(inv_sqrt.asDiagonal() * a * inv_sqrt.asDiagonal());
      l.diagonal().array() += 1.0;
      return l;
    }
    case LaplacianKind::RandomWalk: {
      const Eigen::VectorXd inv = d.cwiseInverse();
      Eigen::MatrixXd l = -(inv.asDiagonal() * a);
      l.diagonal().array() += 1.0;
      return l;
    }
  }
  throw Error(ErrorKind::Internal, "unhandled Laplacian kind");
}

Eigen::MatrixXd graph_propagation_matrix(const WeightedGraph& g, LaplacianKind kind) {
  require(kind != LaplacianKind::Unnormalized, ErrorKind::InvalidInput,
          "the unnormalized kind has no propagation matrix");
  const Eigen::MatrixXd a = g.affinity();
  const Eigen::VectorXd& d = g.degrees();
  if (kind == LaplacianKind::RandomWalk) return d.cwiseInverse().asDiagonal() * a;
  const Eigen::VectorXd inv_sqrt = d.cwiseSqrt().cwiseInverse();
  return inv_sqrt.asDiagonal() * a * inv_sqrt.asDiagonal();
}

GraphOperator::GraphOperator(const WeightedGraph& g, LaplacianKind kind, OperatorForm form)
    : g_(&g), kind_(kind), form_(form) {
  require(!(form == OperatorForm::Propagation && kind == LaplacianKind::Unnormalized),
          ErrorKind::InvalidInput, "the unnormalized kind has no propagation matrix");
  inv_deg_ = g.degrees().cwiseInverse();
  inv_sqrt_deg_ = g.degrees().cwiseSqrt().cwiseInverse();
}

void GraphOperator::apply(const Eigen::MatrixXd& x, Eigen::MatrixXd& y) const {
  const Index n = g_->num_vertices();
  require(x.rows() == n, ErrorKind::InvalidInput, "operand row count mismatch");
  y.resize(x.rows(), x.cols());

  Eigen::VectorXd pre(n);
  Eigen::VectorXd ax(n);
  for (Index c = 0; c < x.cols(); ++c) {
    const auto xc = x.col(c);
    auto yc = y.col(c);
    if (kind_ == LaplacianKind::SymmetricNormalized) {
      pre = inv_sqrt_deg_.cwiseProduct(xc);
    } else {
      pre = xc;
    }
    kernels::csr_matvec(g_->row_ptr(), g_->neighbor_data(), g_->value_data(), pre.data(),
                        ax.data());
    switch (kind_) {
      case LaplacianKind::Unnormalized:
        yc = g_->degrees().cwiseProduct(xc) - ax;
        break;
      case LaplacianKind::SymmetricNormalized:
        if (form_ == OperatorForm::Propagation) {
          yc = inv_sqrt_deg_.cwiseProduct(ax);
        } else {
          yc = xc - inv_sqrt_deg_.cwiseProduct(ax);
        }
        break;
      case LaplacianKind::RandomWalk:
        if (form_ == OperatorForm::Propagation) {
          yc = inv_deg_.cwiseProduct(ax);
        } else {
          yc = xc - inv_deg_.cwiseProduct(ax);
        }
        break;
    }
  }
}

}  // namespace hyperlap
