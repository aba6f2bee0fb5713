#include <vector>

#include "doctest.h"
#include "hyperlap/operators.hpp"
#include "hyperlap/rng.hpp"

using hyperlap::DenseMap;
using hyperlap::Error;
using hyperlap::Hypergraph;
using hyperlap::HypergraphOperator;
using hyperlap::Index;
using hyperlap::LaplacianKind;
using hyperlap::OperatorForm;
using hyperlap::Rng;
using hyperlap::laplacian;
using hyperlap::propagation_matrix;
using hyperlap::quadratic_form_oracle;

namespace {

// small random instance: covered vertices, edge sizes >= 2, weights in (0,5]
Hypergraph random_hypergraph(Rng& rng) {
  const Index n = 4 + static_cast<Index>(rng.uniform_index(17));  // 4..20
  const Index m = 1 + static_cast<Index>(rng.uniform_index(8));   // 1..8
  std::vector<std::vector<Index>> edges(static_cast<std::size_t>(m));
  std::vector<bool> covered(static_cast<std::size_t>(n), false);
  for (auto& e : edges) {
    const Index sz = 2 + static_cast<Index>(rng.uniform_index(static_cast<std::uint64_t>(std::min<Index>(n, 8) - 1)));
    std::vector<bool> in(static_cast<std::size_t>(n), false);
    while (static_cast<Index>(e.size()) < sz) {
      const Index v = static_cast<Index>(rng.uniform_index(static_cast<std::uint64_t>(n)));
      if (!in[static_cast<std::size_t>(v)]) {
        in[static_cast<std::size_t>(v)] = true;
        e.push_back(v);
        covered[static_cast<std::size_t>(v)] = true;
      }
    }
  }
  for (Index v = 0; v < n; ++v) {
    if (!covered[static_cast<std::size_t>(v)]) {
      edges[rng.uniform_index(static_cast<std::uint64_t>(m))].push_back(v);
    }
  }
  std::vector<double> w(static_cast<std::size_t>(m));
  for (auto& x : w) x = 5.0 * (1.0 - rng.uniform01());  // (0, 5]
  return Hypergraph(n, edges, w);
}

Eigen::VectorXd random_vector(Rng& rng, Index n) {
  Eigen::VectorXd f(n);
  for (Index i = 0; i < n; ++i) f[i] = rng.uniform(-2.0, 2.0);
  return f;
}

}  // namespace

TEST_CASE("unnormalized Laplacian of a 2-vertex hyperedge") {
  const Hypergraph g = Hypergraph::with_unit_weights(2, {{0, 1}});
  const Eigen::MatrixXd l = laplacian(g, LaplacianKind::Unnormalized);
  CHECK(l(0, 0) == 0.5);
  CHECK(l(0, 1) == -0.5);
  CHECK(l(1, 0) == -0.5);
  CHECK(l(1, 1) == 0.5);
}

TEST_CASE("unnormalized Laplacian of a 3-vertex hyperedge is I minus J/3") {
  const Hypergraph g = Hypergraph::with_unit_weights(3, {{0, 1, 2}});
  const Eigen::MatrixXd l = laplacian(g, LaplacianKind::Unnormalized);
  for (Index i = 0; i < 3; ++i) {
    for (Index j = 0; j < 3; ++j) {
      const double expect = (i == j) ? 1.0 - 1.0 / 3.0 : -1.0 / 3.0;
      CHECK(l(i, j) == doctest::Approx(expect).epsilon(1e-15));
    }
  }
}

TEST_CASE("all Laplacian kinds annihilate their null vector") {
  Rng rng(101);
  for (int trial = 0; trial < 20; ++trial) {
    const Hypergraph g = random_hypergraph(rng);
    const Index n = g.num_vertices();
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
    const Eigen::VectorXd d = compute_degrees(g).vertex_degrees;

    CHECK((laplacian(g, LaplacianKind::Unnormalized) * ones).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK((laplacian(g, LaplacianKind::RandomWalk) * ones).cwiseAbs().maxCoeff() <= 1e-10);
    const Eigen::VectorXd sqrt_d = d.cwiseSqrt();
    CHECK((laplacian(g, LaplacianKind::SymmetricNormalized) * sqrt_d).cwiseAbs().maxCoeff() <=
          1e-10);
  }
}

TEST_CASE("unnormalized and symmetric kinds are symmetric to machine precision") {
  Rng rng(55);
  for (int trial = 0; trial < 10; ++trial) {
    const Hypergraph g = random_hypergraph(rng);
    const Eigen::MatrixXd l = laplacian(g, LaplacianKind::Unnormalized);
    const Eigen::MatrixXd ls = laplacian(g, LaplacianKind::SymmetricNormalized);
    CHECK((l - l.transpose()).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK((ls - ls.transpose()).cwiseAbs().maxCoeff() <= 1e-14);
  }
}

TEST_CASE("quadratic form identity against the oracle") {
  Rng rng(77);
  for (int trial = 0; trial < 25; ++trial) {
    const Hypergraph g = random_hypergraph(rng);
    const Eigen::MatrixXd l = laplacian(g, LaplacianKind::Unnormalized);
    for (int rep = 0; rep < 4; ++rep) {
      const Eigen::VectorXd f = random_vector(rng, g.num_vertices());
      const double via_matrix = f.dot(l * f);
      const double via_oracle = quadratic_form_oracle(g, f);
      CHECK(std::abs(via_matrix - via_oracle) <= 1e-10 * (1.0 + std::abs(via_matrix)));
    }
  }
}

TEST_CASE("propagation matrix of a 3-vertex hyperedge is J/3") {
  const Hypergraph g = Hypergraph::with_unit_weights(3, {{0, 1, 2}});
  const Eigen::MatrixXd s = propagation_matrix(g, LaplacianKind::RandomWalk);
  for (Index i = 0; i < 3; ++i) {
    for (Index j = 0; j < 3; ++j) CHECK(s(i, j) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  }
}

TEST_CASE("propagation matrices: stochastic rows, similarity, complement of the Laplacian") {
  Rng rng(303);
  for (int trial = 0; trial < 15; ++trial) {
    const Hypergraph g = random_hypergraph(rng);
    const Index n = g.num_vertices();
    const Eigen::MatrixXd s_rw = propagation_matrix(g, LaplacianKind::RandomWalk);
    const Eigen::MatrixXd s_sym = propagation_matrix(g, LaplacianKind::SymmetricNormalized);

    CHECK((s_rw.rowwise().sum().array() - 1.0).abs().maxCoeff() <= 1e-12);
    CHECK(s_rw.minCoeff() >= 0.0);

    const Eigen::VectorXd d = compute_degrees(g).vertex_degrees;
    const Eigen::MatrixXd similar =
        d.cwiseSqrt().asDiagonal() * s_rw * d.cwiseSqrt().cwiseInverse().asDiagonal();
    CHECK((s_sym - similar).cwiseAbs().maxCoeff() <= 1e-12);

    const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);
    CHECK((s_rw - (eye - laplacian(g, LaplacianKind::RandomWalk))).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK((s_sym - (eye - laplacian(g, LaplacianKind::SymmetricNormalized)))
              .cwiseAbs()
              .maxCoeff() <= 1e-14);
  }
}

TEST_CASE("no propagation matrix for the unnormalized kind") {
  const Hypergraph g = Hypergraph::with_unit_weights(2, {{0, 1}});
  CHECK_THROWS_AS(propagation_matrix(g, LaplacianKind::Unnormalized), Error);
  CHECK_THROWS_AS(HypergraphOperator(g, LaplacianKind::Unnormalized, OperatorForm::Propagation),
                  Error);
}

TEST_CASE("matrix-free operator matches the dense builders") {
  Rng rng(404);
  for (int trial = 0; trial < 10; ++trial) {
    const Hypergraph g = random_hypergraph(rng);
    for (LaplacianKind kind : {LaplacianKind::Unnormalized, LaplacianKind::SymmetricNormalized,
                               LaplacianKind::RandomWalk}) {
      const HypergraphOperator op(g, kind, OperatorForm::Laplacian);
      CHECK((op.materialize() - laplacian(g, kind)).cwiseAbs().maxCoeff() <= 1e-13);
    }
    for (LaplacianKind kind : {LaplacianKind::SymmetricNormalized, LaplacianKind::RandomWalk}) {
      const HypergraphOperator op(g, kind, OperatorForm::Propagation);
      CHECK((op.materialize() - propagation_matrix(g, kind)).cwiseAbs().maxCoeff() <= 1e-13);
    }
  }
}

TEST_CASE("operators apply columnwise to multi-column inputs") {
  Rng rng(505);
  const Hypergraph g = random_hypergraph(rng);
  const Index n = g.num_vertices();
  Eigen::MatrixXd x(n, 3);
  for (Index c = 0; c < 3; ++c) x.col(c) = random_vector(rng, n);

  const Eigen::MatrixXd l = laplacian(g, LaplacianKind::SymmetricNormalized);
  const HypergraphOperator op(g, LaplacianKind::SymmetricNormalized, OperatorForm::Laplacian);
  Eigen::MatrixXd y;
  op.apply(x, y);
  CHECK((y - l * x).cwiseAbs().maxCoeff() <= 1e-12);

  const DenseMap dm(l);
  Eigen::MatrixXd y2;
  dm.apply(x, y2);
  CHECK((y2 - l * x).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(dm.size() == n);
}
