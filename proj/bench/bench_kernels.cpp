// Times each OpenMP kernel against its serial reference twin on fixtures
// large enough for the parallel loops to matter. The two variants accumulate
// in the same slot order, so correctness is covered by the unit tests; this
// target only answers "was parallelizing worth it on this machine".

#include <benchmark/benchmark.h>

#include <Eigen/Dense>

#include <algorithm>
#include <vector>

#include "hyperlap/kernels.hpp"
#include "hyperlap/rng.hpp"

namespace {

namespace k = hyperlap::kernels;
using k::Index;

// ragged incidence-like structure: 100k rows, ~20 entries each
struct GatherFixture {
  std::vector<Index> ptr;
  std::vector<Index> idx;
  std::vector<double> vals;
  std::vector<double> x;
  std::vector<double> scale;
  mutable std::vector<double> out;
};

const GatherFixture& gather_fixture() {
  static const GatherFixture f = [] {
    GatherFixture g;
    hyperlap::Rng rng(1);
    const Index rows = 100000;
    const Index cols = 50000;
    g.ptr.push_back(0);
    for (Index r = 0; r < rows; ++r) {
      const Index len = 10 + static_cast<Index>(rng.uniform_index(21));
      for (Index p = 0; p < len; ++p)
        g.idx.push_back(static_cast<Index>(rng.uniform_index(cols)));
      g.ptr.push_back(static_cast<Index>(g.idx.size()));
    }
    g.vals.resize(g.idx.size());
    for (auto& v : g.vals) v = rng.uniform01();
    g.x.resize(cols);
    for (auto& v : g.x) v = rng.normal();
    g.scale.resize(rows);
    for (auto& v : g.scale) v = 1.0 + rng.uniform01();
    g.out.resize(rows);
    return g;
  }();
  return f;
}

void bm_gather_sum_serial(benchmark::State& state) {
  const auto& f = gather_fixture();
  for (auto _ : state) {
    k::serial::gather_sum(f.ptr, f.idx, f.x.data(), f.scale.data(), f.out.data());
    benchmark::DoNotOptimize(f.out.data());
  }
}

void bm_gather_sum_omp(benchmark::State& state) {
  const auto& f = gather_fixture();
  for (auto _ : state) {
    k::gather_sum(f.ptr, f.idx, f.x.data(), f.scale.data(), f.out.data());
    benchmark::DoNotOptimize(f.out.data());
  }
}

void bm_csr_matvec_serial(benchmark::State& state) {
  const auto& f = gather_fixture();
  for (auto _ : state) {
    k::serial::csr_matvec(f.ptr, f.idx, f.vals, f.x.data(), f.out.data());
    benchmark::DoNotOptimize(f.out.data());
  }
}

void bm_csr_matvec_omp(benchmark::State& state) {
  const auto& f = gather_fixture();
  for (auto _ : state) {
    k::csr_matvec(f.ptr, f.idx, f.vals, f.x.data(), f.out.data());
    benchmark::DoNotOptimize(f.out.data());
  }
}

struct DenseFixture {
  Eigen::MatrixXd a;
  std::vector<double> x;
  mutable std::vector<double> y;
};

const DenseFixture& dense_fixture() {
  static const DenseFixture f = [] {
    DenseFixture g;
    hyperlap::Rng rng(2);
    const Index n = 1500;
    g.a.resize(n, n);
    for (Index j = 0; j < n; ++j)
      for (Index i = 0; i < n; ++i) g.a(i, j) = rng.normal();
    g.x.resize(n);
    for (auto& v : g.x) v = rng.normal();
    g.y.resize(n);
    return g;
  }();
  return f;
}

void bm_dense_matvec_serial(benchmark::State& state) {
  const auto& f = dense_fixture();
  for (auto _ : state) {
    k::serial::dense_matvec(f.a, f.x.data(), f.y.data());
    benchmark::DoNotOptimize(f.y.data());
  }
}

void bm_dense_matvec_omp(benchmark::State& state) {
  const auto& f = dense_fixture();
  for (auto _ : state) {
    k::dense_matvec(f.a, f.x.data(), f.y.data());
    benchmark::DoNotOptimize(f.y.data());
  }
}

struct CentroidFixture {
  Eigen::MatrixXd points;
  Eigen::MatrixXd centroids;
  mutable std::vector<Index> assign;
  mutable std::vector<double> sqdist;
  mutable Eigen::MatrixXd sums;
  mutable std::vector<Index> counts;
};

const CentroidFixture& centroid_fixture() {
  static const CentroidFixture f = [] {
    CentroidFixture g;
    hyperlap::Rng rng(3);
    const Index n = 50000;
    const Index d = 16;
    const Index kc = 128;
    g.points.resize(n, d);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < d; ++j) g.points(i, j) = rng.normal();
    g.centroids.resize(kc, d);
    for (Index i = 0; i < kc; ++i)
      for (Index j = 0; j < d; ++j) g.centroids(i, j) = rng.normal();
    g.assign.resize(n);
    g.sqdist.resize(n);
    for (auto& a : g.assign) a = static_cast<Index>(rng.uniform_index(kc));
    return g;
  }();
  return f;
}

void bm_nearest_centroid_serial(benchmark::State& state) {
  const auto& f = centroid_fixture();
  for (auto _ : state) {
    k::serial::nearest_centroid(f.points, f.centroids, f.assign.data(), f.sqdist.data());
    benchmark::DoNotOptimize(f.assign.data());
  }
}

void bm_nearest_centroid_omp(benchmark::State& state) {
  const auto& f = centroid_fixture();
  for (auto _ : state) {
    k::nearest_centroid(f.points, f.centroids, f.assign.data(), f.sqdist.data());
    benchmark::DoNotOptimize(f.assign.data());
  }
}

void bm_cluster_sums_serial(benchmark::State& state) {
  const auto& f = centroid_fixture();
  for (auto _ : state) {
    k::serial::cluster_sums(f.points, f.assign.data(), f.centroids.rows(), f.sums, f.counts);
    benchmark::DoNotOptimize(f.sums.data());
  }
}

void bm_cluster_sums_omp(benchmark::State& state) {
  const auto& f = centroid_fixture();
  for (auto _ : state) {
    k::cluster_sums(f.points, f.assign.data(), f.centroids.rows(), f.sums, f.counts);
    benchmark::DoNotOptimize(f.sums.data());
  }
}

struct KnnFixture {
  Eigen::MatrixXd points;
  mutable std::vector<Index> nbr;
  mutable std::vector<double> sqdist;
  Index k_neighbors = 10;
};

const KnnFixture& knn_fixture() {
  static const KnnFixture f = [] {
    KnnFixture g;
    hyperlap::Rng rng(4);
    const Index n = 2000;
    const Index d = 16;
    g.points.resize(n, d);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < d; ++j) g.points(i, j) = rng.normal();
    g.nbr.resize(n * g.k_neighbors);
    g.sqdist.resize(n * g.k_neighbors);
    return g;
  }();
  return f;
}

void bm_knn_rows_serial(benchmark::State& state) {
  const auto& f = knn_fixture();
  for (auto _ : state) {
    k::serial::knn_rows(f.points, f.k_neighbors, f.nbr.data(), f.sqdist.data());
    benchmark::DoNotOptimize(f.nbr.data());
  }
}

void bm_knn_rows_omp(benchmark::State& state) {
  const auto& f = knn_fixture();
  for (auto _ : state) {
    k::knn_rows(f.points, f.k_neighbors, f.nbr.data(), f.sqdist.data());
    benchmark::DoNotOptimize(f.nbr.data());
  }
}

// random incidence with both CSR directions built by hand; the kernel only
// reads the raw arrays
struct CouplingFixture {
  std::vector<Index> edge_ptr;
  std::vector<Index> edge_members;
  std::vector<Index> vertex_ptr;
  std::vector<Index> vertex_edges;
  std::vector<double> coeff;
  Index n = 2000;
  mutable Eigen::MatrixXd out;
};

const CouplingFixture& coupling_fixture() {
  static const CouplingFixture f = [] {
    CouplingFixture g;
    hyperlap::Rng rng(5);
    const Index m = 1000;
    const Index edge_size = 50;
    std::vector<std::vector<Index>> incident(g.n);
    g.edge_ptr.push_back(0);
    std::vector<Index> scratch(g.n);
    for (Index v = 0; v < g.n; ++v) scratch[v] = v;
    for (Index e = 0; e < m; ++e) {
      // partial shuffle picks edge_size distinct vertices
      for (Index p = 0; p < edge_size; ++p) {
        const Index pick = p + static_cast<Index>(rng.uniform_index(g.n - p));
        std::swap(scratch[p], scratch[pick]);
      }
      std::vector<Index> members(scratch.begin(), scratch.begin() + edge_size);
      std::sort(members.begin(), members.end());
      for (Index v : members) {
        g.edge_members.push_back(v);
        incident[v].push_back(e);
      }
      g.edge_ptr.push_back(static_cast<Index>(g.edge_members.size()));
      g.coeff.push_back(rng.uniform01() + 0.1);
    }
    g.vertex_ptr.push_back(0);
    for (Index v = 0; v < g.n; ++v) {
      for (Index e : incident[v]) g.vertex_edges.push_back(e);
      g.vertex_ptr.push_back(static_cast<Index>(g.vertex_edges.size()));
    }
    return g;
  }();
  return f;
}

void bm_coupling_matrix_serial(benchmark::State& state) {
  const auto& f = coupling_fixture();
  for (auto _ : state) {
    k::serial::coupling_matrix(f.edge_ptr, f.edge_members, f.vertex_ptr, f.vertex_edges,
                               f.coeff.data(), f.out);
    benchmark::DoNotOptimize(f.out.data());
  }
}

void bm_coupling_matrix_omp(benchmark::State& state) {
  const auto& f = coupling_fixture();
  for (auto _ : state) {
    k::coupling_matrix(f.edge_ptr, f.edge_members, f.vertex_ptr, f.vertex_edges,
                       f.coeff.data(), f.out);
    benchmark::DoNotOptimize(f.out.data());
  }
}

}  // namespace

BENCHMARK(bm_gather_sum_serial)->Name("gather_sum/serial")->Unit(benchmark::kMicrosecond);
BENCHMARK(bm_gather_sum_omp)->Name("gather_sum/omp")->Unit(benchmark::kMicrosecond);
BENCHMARK(bm_csr_matvec_serial)->Name("csr_matvec/serial")->Unit(benchmark::kMicrosecond);
BENCHMARK(bm_csr_matvec_omp)->Name("csr_matvec/omp")->Unit(benchmark::kMicrosecond);
BENCHMARK(bm_dense_matvec_serial)->Name("dense_matvec/serial")->Unit(benchmark::kMicrosecond);
BENCHMARK(bm_dense_matvec_omp)->Name("dense_matvec/omp")->Unit(benchmark::kMicrosecond);
BENCHMARK(bm_nearest_centroid_serial)
    ->Name("nearest_centroid/serial")
    ->Unit(benchmark::kMillisecond);
BENCHMARK(bm_nearest_centroid_omp)->Name("nearest_centroid/omp")->Unit(benchmark::kMillisecond);
BENCHMARK(bm_cluster_sums_serial)->Name("cluster_sums/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(bm_cluster_sums_omp)->Name("cluster_sums/omp")->Unit(benchmark::kMillisecond);
BENCHMARK(bm_knn_rows_serial)->Name("knn_rows/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(bm_knn_rows_omp)->Name("knn_rows/omp")->Unit(benchmark::kMillisecond);
BENCHMARK(bm_coupling_matrix_serial)
    ->Name("coupling_matrix/serial")
    ->Unit(benchmark::kMillisecond);
BENCHMARK(bm_coupling_matrix_omp)->Name("coupling_matrix/omp")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
