#include "hyperlap/partition.hpp"

#include <algorithm>
#include <string>

#include "hyperlap/kernels.hpp"
#include "hyperlap/rng.hpp"

namespace hyperlap {

namespace {

// kmeans++: spread the k seed centroids by squared-distance-weighted sampling
Eigen::MatrixXd seed_centroids(const FeatureMatrix& x, Index k, Rng& rng) {
  const Index n = x.rows();
  const Index dim = x.cols();
  Eigen::MatrixXd centroids(k, dim);
  centroids.row(0) = x.row(static_cast<Index>(rng.uniform_index(static_cast<std::uint64_t>(n))));

  Eigen::VectorXd best_sq = Eigen::VectorXd::Constant(n, std::numeric_limits<double>::infinity());
  for (Index c = 1; c < k; ++c) {
    for (Index i = 0; i < n; ++i) {
      double acc = 0.0;
      for (Index f = 0; f < dim; ++f) {
        const double diff = x(i, f) - centroids(c - 1, f);
        acc += diff * diff;
      }
      best_sq[i] = std::min(best_sq[i], acc);
    }
    double total = 0.0;
    for (Index i = 0; i < n; ++i) total += best_sq[i];
    Index pick;
    if (total > 0.0) {
      const double r = rng.uniform01() * total;
      double cum = 0.0;
      pick = n - 1;  // guard against accumulated rounding at the top end
      for (Index i = 0; i < n; ++i) {
        cum += best_sq[i];
        if (cum > r) {
          pick = i;
          break;
        }
      }
    } else {
      // all points coincide with chosen centroids; fall back to uniform
      pick = static_cast<Index>(rng.uniform_index(static_cast<std::uint64_t>(n)));
    }
    centroids.row(c) = x.row(pick);
  }
  return centroids;
}

double sum_serial(const Eigen::VectorXd& v) {
  double acc = 0.0;
  for (Index i = 0; i < v.size(); ++i) acc += v[i];
  return acc;
}

}  // namespace

ClusterAssignment kmeans(const FeatureMatrix& x, Index k, std::uint64_t seed, Index max_iter) {
  const Index n = x.rows();
  const Index dim = x.cols();
  require(n >= 4, ErrorKind::InvalidInput,
          "k-means needs at least 4 samples, got " + std::to_string(n));
  require(dim >= 1, ErrorKind::InvalidInput, "feature dimension must be at least 1");
  require(x.allFinite(), ErrorKind::InvalidInput, "feature matrix has non-finite entries");
  require(k >= 2 && k <= n / 2, ErrorKind::InvalidInput,
          "cluster count " + std::to_string(k) + " outside [2, " + std::to_string(n / 2) +
              "] for " + std::to_string(n) + " samples");
  require(max_iter >= 1, ErrorKind::InvalidInput, "max_iter must be positive");

  Rng rng(seed);
  ClusterAssignment out;
  out.k = k;
  out.centroids = seed_centroids(x, k, rng);
  out.assignment.assign(static_cast<std::size_t>(n), 0);

  Eigen::VectorXd sqdist(n);
  std::vector<Index> prev;
  Eigen::MatrixXd sums;
  std::vector<Index> counts;

  kernels::nearest_centroid(x, out.centroids, out.assignment.data(), sqdist.data());
  out.inertia_history.push_back(sum_serial(sqdist));

  for (Index iter = 0; iter < max_iter; ++iter) {
    prev = out.assignment;
    kernels::cluster_sums(x, out.assignment.data(), k, sums, counts);
    for (Index c = 0; c < k; ++c) {
      if (counts[static_cast<std::size_t>(c)] > 0) {
        out.centroids.row(c) = sums.row(c) / static_cast<double>(counts[static_cast<std::size_t>(c)]);
      }
      // empty clusters keep their previous centroid
    }
    kernels::nearest_centroid(x, out.centroids, out.assignment.data(), sqdist.data());
    out.inertia_history.push_back(sum_serial(sqdist));
    out.iterations = iter + 1;
    if (out.assignment == prev) break;
  }

  // dissolve clusters that cannot form a hyperedge (fewer than 2 members)
  std::vector<Index> sizes(static_cast<std::size_t>(k), 0);
  for (Index i = 0; i < n; ++i) sizes[static_cast<std::size_t>(out.assignment[i])]++;
  std::vector<Index> remap(static_cast<std::size_t>(k), -1);
  Index kept = 0;
  for (Index c = 0; c < k; ++c) {
    if (sizes[static_cast<std::size_t>(c)] >= 2) remap[static_cast<std::size_t>(c)] = kept++;
  }
  // kept >= 1 always: k <= n/2 makes "every cluster below size 2" impossible
  if (kept < k) {
    Eigen::MatrixXd survivors(kept, dim);
    for (Index c = 0; c < k; ++c) {
      if (remap[static_cast<std::size_t>(c)] >= 0) survivors.row(remap[static_cast<std::size_t>(c)]) = out.centroids.row(c);
    }
    std::vector<Index> moved(static_cast<std::size_t>(n));
    Eigen::VectorXd moved_sq(n);
    kernels::nearest_centroid(x, survivors, moved.data(), moved_sq.data());
    for (Index i = 0; i < n; ++i) {
      const Index mapped = remap[static_cast<std::size_t>(out.assignment[i])];
      out.assignment[i] = mapped >= 0 ? mapped : moved[static_cast<std::size_t>(i)];
    }
    out.dissolved = k - kept;
    out.k = kept;
    out.centroids = std::move(survivors);
  }

  // per-point distances follow the actual assignment, not the nearest centroid
  // (the two can differ for points that survived a dissolved cluster's merge)
  out.mean_sqdist.assign(static_cast<std::size_t>(out.k), 0.0);
  std::vector<Index> final_sizes(static_cast<std::size_t>(out.k), 0);
  out.inertia = 0.0;
  for (Index i = 0; i < n; ++i) {
    const Index c = out.assignment[i];
    double acc = 0.0;
    for (Index f = 0; f < dim; ++f) {
      const double diff = x(i, f) - out.centroids(c, f);
      acc += diff * diff;
    }
    out.inertia += acc;
    out.mean_sqdist[static_cast<std::size_t>(c)] += acc;
    final_sizes[static_cast<std::size_t>(c)]++;
  }
  for (Index c = 0; c < out.k; ++c) {
    out.mean_sqdist[static_cast<std::size_t>(c)] /= static_cast<double>(final_sizes[static_cast<std::size_t>(c)]);
  }
  return out;
}

Hypergraph build_hypergraph(const ClusterAssignment& a, WeightingRule weighting) {
  const Index n = static_cast<Index>(a.assignment.size());
  require(a.k >= 1, ErrorKind::InvalidInput, "assignment has no clusters");
  require(n >= 2, ErrorKind::InvalidInput, "assignment has too few samples");

  std::vector<std::vector<Index>> edges(static_cast<std::size_t>(a.k));
  for (Index i = 0; i < n; ++i) {
    const Index c = a.assignment[static_cast<std::size_t>(i)];
    require(c >= 0 && c < a.k, ErrorKind::InvalidInput,
            "sample " + std::to_string(i) + " assigned to cluster " + std::to_string(c) +
                " outside [0," + std::to_string(a.k) + ")");
    edges[static_cast<std::size_t>(c)].push_back(i);
  }
  for (Index c = 0; c < a.k; ++c) {
    require(edges[static_cast<std::size_t>(c)].size() >= 2, ErrorKind::InvalidInput,
            "cluster " + std::to_string(c) + " has fewer than 2 members");
  }

  std::vector<double> weights(static_cast<std::size_t>(a.k), 1.0);
  if (weighting == WeightingRule::InverseVariance) {
    require(static_cast<Index>(a.mean_sqdist.size()) == a.k, ErrorKind::InvalidInput,
            "inverse-variance weighting needs per-cluster mean squared distances");
    for (Index c = 0; c < a.k; ++c) {
      weights[static_cast<std::size_t>(c)] = 1.0 / (1e-9 + a.mean_sqdist[static_cast<std::size_t>(c)]);
    }
  }
  return Hypergraph(n, edges, std::move(weights));
}

}  // namespace hyperlap
