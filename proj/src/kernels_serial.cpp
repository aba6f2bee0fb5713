#include "kernels_impl.hpp"

namespace hyperlap::kernels::serial {

using namespace hyperlap::kernels::detail;

void gather_sum(std::span<const Index> ptr, std::span<const Index> idx, const double* x,
                const double* scale, double* out) {
  const Index rows = static_cast<Index>(ptr.size()) - 1;
  for (Index r = 0; r < rows; ++r) out[r] = gather_sum_slot(r, ptr, idx, x, scale);
}

void csr_matvec(std::span<const Index> ptr, std::span<const Index> idx,
                std::span<const double> vals, const double* x, double* out) {
  const Index rows = static_cast<Index>(ptr.size()) - 1;
  for (Index r = 0; r < rows; ++r) out[r] = csr_matvec_slot(r, ptr, idx, vals, x);
}

void dense_matvec(const Eigen::MatrixXd& a, const double* x, double* y) {
  const Index rows = a.rows();
  for (Index r = 0; r < rows; ++r) y[r] = dense_matvec_slot(r, a, x);
}

void nearest_centroid(const Eigen::MatrixXd& points, const Eigen::MatrixXd& centroids,
                      Index* assign, double* min_sqdist) {
  const Index n = points.rows();
  for (Index i = 0; i < n; ++i) nearest_centroid_slot(i, points, centroids, assign, min_sqdist);
}

void cluster_sums(const Eigen::MatrixXd& points, const Index* assign, Index k,
                  Eigen::MatrixXd& sums, std::vector<Index>& counts) {
  sums.setZero(k, points.cols());
  counts.assign(static_cast<std::size_t>(k), 0);
  const ClusterIndex ci = build_cluster_index(assign, points.rows(), k);
  for (Index c = 0; c < k; ++c) cluster_sum_slot(c, ci, points, sums, counts);
}

void knn_rows(const Eigen::MatrixXd& points, Index k, Index* nbr, double* nbr_sqdist) {
  const Index n = points.rows();
  for (Index i = 0; i < n; ++i) knn_row_slot(i, points, k, nbr, nbr_sqdist);
}

void coupling_matrix(std::span<const Index> edge_ptr, std::span<const Index> edge_members,
                     std::span<const Index> vertex_ptr, std::span<const Index> vertex_edges,
                     const double* coeff, Eigen::MatrixXd& out) {
  const Index n = static_cast<Index>(vertex_ptr.size()) - 1;
  out.resize(n, n);
  for (Index u = 0; u < n; ++u) {
    coupling_column_slot(u, edge_ptr, edge_members, vertex_ptr, vertex_edges, coeff, out);
  }
}

}  // namespace hyperlap::kernels::serial
