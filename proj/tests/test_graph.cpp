#include <doctest.h>

#include <cmath>

#include "hyperlap/checks.hpp"
#include "hyperlap/graph.hpp"
#include "hyperlap/rng.hpp"

using namespace hyperlap;

TEST_CASE("knn graph on three collinear points keeps only adjacent pairs") {
  FeatureMatrix x(3, 1);
  x << 0.0, 1.0, 2.0;
  double sigma = 0.0;
  const WeightedGraph g = knn_gaussian_graph(x, 1, 1.0, &sigma);
  CHECK(sigma == 1.0);
  const Eigen::MatrixXd a = g.affinity();
  const double w = std::exp(-0.5);  // distance 1, sigma 1
  CHECK(a(0, 1) == doctest::Approx(w).epsilon(1e-15));
  CHECK(a(1, 2) == doctest::Approx(w).epsilon(1e-15));
  CHECK(a(0, 2) == 0.0);  // not within anyone's nearest neighbor
  CHECK(a(1, 0) == a(0, 1));
  CHECK(a(2, 1) == a(1, 2));
  CHECK(a.diagonal().isZero(0.0));
  CHECK(g.degrees()(0) == doctest::Approx(w));
  CHECK(g.degrees()(1) == doctest::Approx(2 * w));
}

TEST_CASE("automatic bandwidth is the median retained distance") {
  FeatureMatrix x(3, 1);
  x << 0.0, 1.0, 2.0;
  double sigma = 0.0;
  const WeightedGraph g = knn_gaussian_graph(x, 1, std::nullopt, &sigma);
  // retained deduped pairs: (0,1) and (1,2), both at distance 1
  CHECK(sigma == doctest::Approx(1.0));
  CHECK(g.affinity()(0, 1) == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));

  FeatureMatrix y(4, 1);
  y << 0.0, 1.0, 10.0, 13.0;
  knn_gaussian_graph(y, 1, std::nullopt, &sigma);
  // retained pairs (0,1) and (2,3): distances 1 and 3, even count -> mean
  CHECK(sigma == doctest::Approx(2.0));
}

TEST_CASE("union symmetrization keeps one-sided neighbor pairs") {
  // 1 is nearest to 0, but 0 is not among 1's nearest (2 is closer to 1)
  FeatureMatrix x(3, 1);
  x << 0.0, 2.0, 3.0;
  const WeightedGraph g = knn_gaussian_graph(x, 1, 1.0);
  const Eigen::MatrixXd a = g.affinity();
  CHECK(a(0, 1) > 0.0);  // kept because 1 is 0's nearest neighbor
  CHECK(a(1, 0) == a(0, 1));
  CHECK(a(1, 2) > 0.0);
  CHECK(a(0, 2) == 0.0);
}

TEST_CASE("identical points get unit affinity under explicit bandwidth") {
  FeatureMatrix x(4, 2);
  x << 0.0, 0.0, 0.0, 0.0, 5.0, 5.0, 5.0, 6.0;
  const WeightedGraph g = knn_gaussian_graph(x, 1, 1.0);
  CHECK(g.affinity()(0, 1) == doctest::Approx(1.0));
}

TEST_CASE("knn graph input validation") {
  FeatureMatrix x(4, 1);
  x << 0.0, 1.0, 2.0, 3.0;
  CHECK_THROWS_AS(knn_gaussian_graph(x, 0, 1.0), Error);
  CHECK_THROWS_AS(knn_gaussian_graph(x, 4, 1.0), Error);   // k > n-1
  CHECK_THROWS_AS(knn_gaussian_graph(x, 1, -1.0), Error);  // bad bandwidth
  CHECK_THROWS_AS(knn_gaussian_graph(x, 1, 0.0), Error);
  FeatureMatrix identical = FeatureMatrix::Zero(4, 2);
  // auto bandwidth degenerates to zero on identical points
  CHECK_THROWS_AS(knn_gaussian_graph(identical, 1, std::nullopt), Error);
  FeatureMatrix one_row(1, 2);
  one_row.setZero();
  CHECK_THROWS_AS(knn_gaussian_graph(one_row, 1, 1.0), Error);
}

TEST_CASE("from_affinity validation") {
  Eigen::MatrixXd good(2, 2);
  good << 0, 1, 1, 0;
  CHECK_NOTHROW(WeightedGraph::from_affinity(good));
  Eigen::MatrixXd asym(2, 2);
  asym << 0, 1, 0.5, 0;
  CHECK_THROWS_AS(WeightedGraph::from_affinity(asym), Error);
  Eigen::MatrixXd diag(2, 2);
  diag << 1, 1, 1, 0;
  CHECK_THROWS_AS(WeightedGraph::from_affinity(diag), Error);
  Eigen::MatrixXd negative(2, 2);
  negative << 0, -1, -1, 0;
  CHECK_THROWS_AS(WeightedGraph::from_affinity(negative), Error);
  Eigen::MatrixXd isolated(3, 3);
  isolated << 0, 1, 0, 1, 0, 0, 0, 0, 0;  // vertex 2 has zero degree
  CHECK_THROWS_AS(WeightedGraph::from_affinity(isolated), Error);
  Eigen::MatrixXd rect(2, 3);
  rect.setZero();
  CHECK_THROWS_AS(WeightedGraph::from_affinity(rect), Error);
}

TEST_CASE("two-vertex graph Laplacians by hand") {
  Eigen::MatrixXd a(2, 2);
  a << 0, 1, 1, 0;
  const WeightedGraph g = WeightedGraph::from_affinity(a);
  Eigen::MatrixXd expected(2, 2);
  expected << 1, -1, -1, 1;
  CHECK((graph_laplacian(g, LaplacianKind::Unnormalized) - expected).cwiseAbs().maxCoeff() == 0.0);
  CHECK((graph_laplacian(g, LaplacianKind::SymmetricNormalized) - expected).cwiseAbs().maxCoeff() <=
        1e-15);
  CHECK((graph_laplacian(g, LaplacianKind::RandomWalk) - expected).cwiseAbs().maxCoeff() <= 1e-15);
  Eigen::MatrixXd swap(2, 2);
  swap << 0, 1, 1, 0;
  CHECK((graph_propagation_matrix(g, LaplacianKind::RandomWalk) - swap).cwiseAbs().maxCoeff() <=
        1e-15);
  CHECK_THROWS_AS(graph_propagation_matrix(g, LaplacianKind::Unnormalized), Error);
}

TEST_CASE("graph Laplacian null vectors and row sums") {
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const WeightedGraph g = random_graph(rng);
    const Index n = g.num_vertices();
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
    CHECK((graph_laplacian(g, LaplacianKind::Unnormalized) * ones).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK((graph_laplacian(g, LaplacianKind::RandomWalk) * ones).cwiseAbs().maxCoeff() <= 1e-10);
    const Eigen::VectorXd sqrt_d = g.degrees().cwiseSqrt();
    CHECK(
        (graph_laplacian(g, LaplacianKind::SymmetricNormalized) * sqrt_d).cwiseAbs().maxCoeff() <=
        1e-10);
    const Eigen::MatrixXd srw = graph_propagation_matrix(g, LaplacianKind::RandomWalk);
    CHECK((srw.rowwise().sum().array() - 1.0).abs().maxCoeff() <= 1e-12);
    CHECK(srw.minCoeff() >= 0.0);
  }
}

TEST_CASE("graph symmetric and random-walk spectra coincide") {
  Rng rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const WeightedGraph g = random_graph(rng);
    const Eigen::MatrixXd lsym = graph_laplacian(g, LaplacianKind::SymmetricNormalized);
    const Eigen::MatrixXd lrw = graph_laplacian(g, LaplacianKind::RandomWalk);
    const Eigen::VectorXd sqrt_d = g.degrees().cwiseSqrt();
    const Eigen::MatrixXd conjugated =
        sqrt_d.asDiagonal() * lrw * sqrt_d.cwiseInverse().asDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> a(lsym, Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> b(conjugated, Eigen::EigenvaluesOnly);
    CHECK((a.eigenvalues() - b.eigenvalues()).cwiseAbs().maxCoeff() <= 1e-8);
  }
}

TEST_CASE("matrix-free graph operator matches the dense matrices") {
  Rng rng(13);
  const WeightedGraph g = random_graph(rng);
  for (const LaplacianKind kind : {LaplacianKind::Unnormalized,
                                   LaplacianKind::SymmetricNormalized,
                                   LaplacianKind::RandomWalk}) {
    const GraphOperator op(g, kind, OperatorForm::Laplacian);
    CHECK((op.materialize() - graph_laplacian(g, kind)).cwiseAbs().maxCoeff() <= 1e-13);
    if (kind != LaplacianKind::Unnormalized) {
      const GraphOperator prop(g, kind, OperatorForm::Propagation);
      CHECK((prop.materialize() - graph_propagation_matrix(g, kind)).cwiseAbs().maxCoeff() <=
            1e-13);
    }
  }
  CHECK_THROWS_AS(GraphOperator(g, LaplacianKind::Unnormalized, OperatorForm::Propagation), Error);
}

TEST_CASE("pair hypergraphs reproduce the graph Laplacian halved") {
  Rng rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const WeightedGraph g = random_graph(rng);
    const Index n = g.num_vertices();
    std::vector<std::vector<Index>> edges;
    std::vector<double> weights;
    const auto ptr = g.row_ptr();
    const auto idx = g.neighbor_data();
    const auto vals = g.value_data();
    for (Index i = 0; i < n; ++i) {
      for (Index t = ptr[static_cast<std::size_t>(i)]; t < ptr[static_cast<std::size_t>(i) + 1];
           ++t) {
        if (idx[static_cast<std::size_t>(t)] > i) {
          edges.push_back({i, idx[static_cast<std::size_t>(t)]});
          weights.push_back(vals[static_cast<std::size_t>(t)]);
        }
      }
    }
    const Hypergraph pairs(n, edges, weights);
    const Eigen::MatrixXd diff = laplacian(pairs, LaplacianKind::Unnormalized) -
                                 0.5 * graph_laplacian(g, LaplacianKind::Unnormalized);
    CHECK(diff.cwiseAbs().maxCoeff() <= 1e-12);
  }
}
