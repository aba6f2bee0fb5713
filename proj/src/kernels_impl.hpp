#pragma once

// Per-slot bodies shared by the serial and OpenMP kernel builds. Keeping the
// slot arithmetic in one place guarantees both variants perform identical
// floating-point operation sequences per output slot, which is what makes
// their results bit-identical.

#include <algorithm>
#include <limits>
#include <utility>
#include <vector>

#include "hyperlap/kernels.hpp"

namespace hyperlap::kernels::detail {

inline double gather_sum_slot(Index r, std::span<const Index> ptr, std::span<const Index> idx,
                              const double* x, const double* scale) {
  double acc = 0.0;
  for (Index p = ptr[r]; p < ptr[r + 1]; ++p) acc += x[idx[p]];
  return scale ? scale[r] * acc : acc;
}

inline double csr_matvec_slot(Index r, std::span<const Index> ptr, std::span<const Index> idx,
                              std::span<const double> vals, const double* x) {
  double acc = 0.0;
  for (Index p = ptr[r]; p < ptr[r + 1]; ++p) acc += vals[p] * x[idx[p]];
  return acc;
}

inline double dense_matvec_slot(Index r, const Eigen::MatrixXd& a, const double* x) {
  const double* data = a.data();  // column-major
  const Index rows = a.rows();
  const Index cols = a.cols();
  double acc = 0.0;
  for (Index c = 0; c < cols; ++c) acc += data[r + c * rows] * x[c];
  return acc;
}

inline void nearest_centroid_slot(Index i, const Eigen::MatrixXd& points,
                                  const Eigen::MatrixXd& centroids, Index* assign,
                                  double* min_sqdist) {
  const Index k = centroids.rows();
  const Index dim = points.cols();
  double best = std::numeric_limits<double>::infinity();
  Index best_c = 0;
  for (Index c = 0; c < k; ++c) {
    double acc = 0.0;
    for (Index f = 0; f < dim; ++f) {
      const double diff = points(i, f) - centroids(c, f);
      acc += diff * diff;
    }
    if (acc < best) {  // strict: ties stay with the lowest index
      best = acc;
      best_c = c;
    }
  }
  assign[i] = best_c;
  min_sqdist[i] = best;
}

// members grouped by cluster, ascending sample order inside each group
struct ClusterIndex {
  std::vector<Index> ptr;      // size k+1
  std::vector<Index> members;  // size n
};

inline ClusterIndex build_cluster_index(const Index* assign, Index n, Index k) {
  ClusterIndex ci;
  ci.ptr.assign(static_cast<std::size_t>(k) + 1, 0);
  for (Index i = 0; i < n; ++i) ci.ptr[static_cast<std::size_t>(assign[i]) + 1]++;
  for (Index c = 0; c < k; ++c) ci.ptr[static_cast<std::size_t>(c) + 1] += ci.ptr[static_cast<std::size_t>(c)];
  ci.members.resize(static_cast<std::size_t>(n));
  std::vector<Index> cursor(ci.ptr.begin(), ci.ptr.end() - 1);
  for (Index i = 0; i < n; ++i) {
    ci.members[static_cast<std::size_t>(cursor[static_cast<std::size_t>(assign[i])]++)] = i;
  }
  return ci;
}

inline void cluster_sum_slot(Index c, const ClusterIndex& ci, const Eigen::MatrixXd& points,
                             Eigen::MatrixXd& sums, std::vector<Index>& counts) {
  const Index dim = points.cols();
  counts[static_cast<std::size_t>(c)] = ci.ptr[static_cast<std::size_t>(c) + 1] - ci.ptr[static_cast<std::size_t>(c)];
  for (Index f = 0; f < dim; ++f) {
    double acc = 0.0;
    for (Index p = ci.ptr[static_cast<std::size_t>(c)]; p < ci.ptr[static_cast<std::size_t>(c) + 1]; ++p) {
      acc += points(ci.members[static_cast<std::size_t>(p)], f);
    }
    sums(c, f) = acc;
  }
}

inline void knn_row_slot(Index i, const Eigen::MatrixXd& points, Index k, Index* nbr,
                         double* nbr_sqdist) {
  const Index n = points.rows();
  const Index dim = points.cols();
  std::vector<std::pair<double, Index>> cand;
  cand.reserve(static_cast<std::size_t>(n - 1));
  for (Index j = 0; j < n; ++j) {
    if (j == i) continue;
    double acc = 0.0;
    for (Index f = 0; f < dim; ++f) {
      const double diff = points(i, f) - points(j, f);
      acc += diff * diff;
    }
    cand.emplace_back(acc, j);
  }
  std::partial_sort(cand.begin(), cand.begin() + k, cand.end());
  for (Index q = 0; q < k; ++q) {
    nbr[i * k + q] = cand[static_cast<std::size_t>(q)].second;
    nbr_sqdist[i * k + q] = cand[static_cast<std::size_t>(q)].first;
  }
}

inline void coupling_column_slot(Index u, std::span<const Index> edge_ptr,
                                 std::span<const Index> edge_members,
                                 std::span<const Index> vertex_ptr,
                                 std::span<const Index> vertex_edges, const double* coeff,
                                 Eigen::MatrixXd& out) {
  const Index n = out.rows();
  double* col = out.data() + u * n;  // column-major
  std::fill(col, col + n, 0.0);
  for (Index p = vertex_ptr[u]; p < vertex_ptr[u + 1]; ++p) {
    const Index e = vertex_edges[p];
    const double c = coeff[e];
    for (Index q = edge_ptr[e]; q < edge_ptr[e + 1]; ++q) col[edge_members[q]] += c;
  }
}

}  // namespace hyperlap::kernels::detail
