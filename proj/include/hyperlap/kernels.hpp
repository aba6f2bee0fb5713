#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

namespace hyperlap::kernels {

using Index = Eigen::Index;

// Data-parallel inner loops. Each kernel in this namespace is OpenMP-parallel
// over independent output slots; hyperlap::kernels::serial holds plain-loop
// reference twins with the same signatures. Both variants accumulate each
// output slot in the same fixed order, so their results are bit-identical
// regardless of thread count. Tests compare the two; the benchmark target
// times them against each other.

// out[r] = (scale ? scale[r] : 1) * sum of x[idx[p]] for p in [ptr[r], ptr[r+1])
// rows = ptr.size() - 1. Covers both directions of incidence application.
void gather_sum(std::span<const Index> ptr, std::span<const Index> idx, const double* x,
                const double* scale, double* out);

// out[r] = sum of vals[p] * x[idx[p]]  (CSR matrix-vector product)
void csr_matvec(std::span<const Index> ptr, std::span<const Index> idx,
                std::span<const double> vals, const double* x, double* out);

// y = a * x for a column-major dense matrix, accumulated column-ascending
void dense_matvec(const Eigen::MatrixXd& a, const double* x, double* y);

// per row of points: index of the nearest centroid row by squared Euclidean
// distance (ties to the lowest index) and that squared distance
void nearest_centroid(const Eigen::MatrixXd& points, const Eigen::MatrixXd& centroids,
                      Index* assign, double* min_sqdist);

// per-cluster coordinate sums and member counts from an assignment vector;
// sums is resized to k x d, counts to k
void cluster_sums(const Eigen::MatrixXd& points, const Index* assign, Index k,
                  Eigen::MatrixXd& sums, std::vector<Index>& counts);

// per row i: the k nearest other rows ordered by (squared distance, index)
// ascending; nbr and nbr_sqdist hold k entries per row, row-contiguous
void knn_rows(const Eigen::MatrixXd& points, Index k, Index* nbr, double* nbr_sqdist);

// out(v,u) = sum of coeff[e] over hyperedges e containing both u and v
// (dense n x n; the common factor of all three Laplacian constructions)
void coupling_matrix(std::span<const Index> edge_ptr, std::span<const Index> edge_members,
                     std::span<const Index> vertex_ptr, std::span<const Index> vertex_edges,
                     const double* coeff, Eigen::MatrixXd& out);

namespace serial {

void gather_sum(std::span<const Index> ptr, std::span<const Index> idx, const double* x,
                const double* scale, double* out);
void csr_matvec(std::span<const Index> ptr, std::span<const Index> idx,
                std::span<const double> vals, const double* x, double* out);
void dense_matvec(const Eigen::MatrixXd& a, const double* x, double* y);
void nearest_centroid(const Eigen::MatrixXd& points, const Eigen::MatrixXd& centroids,
                      Index* assign, double* min_sqdist);
void cluster_sums(const Eigen::MatrixXd& points, const Index* assign, Index k,
                  Eigen::MatrixXd& sums, std::vector<Index>& counts);
void knn_rows(const Eigen::MatrixXd& points, Index k, Index* nbr, double* nbr_sqdist);
void coupling_matrix(std::span<const Index> edge_ptr, std::span<const Index> edge_members,
                     std::span<const Index> vertex_ptr, std::span<const Index> vertex_edges,
                     const double* coeff, Eigen::MatrixXd& out);

}  // namespace serial

}  // namespace hyperlap::kernels
