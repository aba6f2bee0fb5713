#include <vector>

#include "doctest.h"
#include "hyperlap/hypergraph.hpp"

using hyperlap::compute_degrees;
using hyperlap::Error;
using hyperlap::ErrorKind;
using hyperlap::Hypergraph;
using hyperlap::Index;
using hyperlap::quadratic_form_oracle;

TEST_CASE("degrees of a single unit-weight hyperedge") {
  const Hypergraph g = Hypergraph::with_unit_weights(3, {{0, 1, 2}});
  const auto d = compute_degrees(g);
  CHECK(d.vertex_degrees.size() == 3);
  for (Index v = 0; v < 3; ++v) CHECK(d.vertex_degrees[v] == 1.0);
  CHECK(d.hyperedge_degrees.size() == 1);
  CHECK(d.hyperedge_degrees[0] == 3.0);
}

TEST_CASE("degrees accumulate weights across overlapping hyperedges") {
  // e0 = {0,1} with weight 2, e1 = {1,2} with weight 3
  const Hypergraph g(3, {{0, 1}, {1, 2}}, {2.0, 3.0});
  const auto d = compute_degrees(g);
  CHECK(d.vertex_degrees[0] == 2.0);
  CHECK(d.vertex_degrees[1] == 5.0);
  CHECK(d.vertex_degrees[2] == 3.0);
  CHECK(d.hyperedge_degrees[0] == 2.0);
  CHECK(d.hyperedge_degrees[1] == 2.0);
}

TEST_CASE("partition structure gives unit vertex degrees and cluster-size edge degrees") {
  // a partition into two clusters of sizes 3 and 2, unit weights
  const Hypergraph g = Hypergraph::with_unit_weights(5, {{0, 1, 2}, {3, 4}});
  const auto d = compute_degrees(g);
  for (Index v = 0; v < 5; ++v) CHECK(d.vertex_degrees[v] == 1.0);
  CHECK(d.hyperedge_degrees[0] == 3.0);
  CHECK(d.hyperedge_degrees[1] == 2.0);
}

TEST_CASE("construction rejects invalid hypergraphs") {
  CHECK_THROWS_AS(Hypergraph::with_unit_weights(3, {{0}}), Error);
  CHECK_THROWS_AS(Hypergraph::with_unit_weights(3, {{0, 1}}), Error);  // vertex 2 uncovered
  CHECK_THROWS_AS(Hypergraph::with_unit_weights(3, {{0, 1, 3}}), Error);
  CHECK_THROWS_AS(Hypergraph::with_unit_weights(3, {{0, 1, 1}, {1, 2}}), Error);
  CHECK_THROWS_AS(Hypergraph(3, {{0, 1, 2}}, {0.0}), Error);
  CHECK_THROWS_AS(Hypergraph(3, {{0, 1, 2}}, {-1.0}), Error);
  CHECK_THROWS_AS(Hypergraph(3, {{0, 1, 2}}, {1.0, 1.0}), Error);
  CHECK_THROWS_AS(Hypergraph::with_unit_weights(3, {}), Error);

  try {
    Hypergraph::with_unit_weights(3, {{0, 1}});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidInput);
  }
}

TEST_CASE("member and incidence views are sorted and consistent") {
  const Hypergraph g(4, {{2, 0}, {3, 1, 2}}, {1.0, 2.0});
  const auto e0 = g.edge_members(0);
  REQUIRE(e0.size() == 2);
  CHECK(e0[0] == 0);
  CHECK(e0[1] == 2);
  const auto e1 = g.edge_members(1);
  REQUIRE(e1.size() == 3);
  CHECK(e1[0] == 1);
  CHECK(e1[1] == 2);
  CHECK(e1[2] == 3);

  const auto v2 = g.incident_edges(2);
  REQUIRE(v2.size() == 2);
  CHECK(v2[0] == 0);
  CHECK(v2[1] == 1);

  const Eigen::MatrixXd h = g.incidence();
  CHECK(h.rows() == 4);
  CHECK(h.cols() == 2);
  CHECK(h(0, 0) == 1.0);
  CHECK(h(2, 0) == 1.0);
  CHECK(h(1, 0) == 0.0);
  CHECK(h.col(1).sum() == 3.0);
  // every vertex covered, every hyperedge has at least 2 members
  CHECK((h.rowwise().sum().array() >= 1.0).all());
  CHECK((h.colwise().sum().array() >= 2.0).all());
}

TEST_CASE("quadratic form oracle on hand-checked cases") {
  const Hypergraph tri = Hypergraph::with_unit_weights(3, {{0, 1, 2}});
  Eigen::VectorXd f(3);
  f << 1, 0, 0;
  // 4 ordered pairs with unit squared difference, times (1/3), times 1/2
  CHECK(quadratic_form_oracle(tri, f) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));

  f << 5, 5, 5;
  CHECK(quadratic_form_oracle(tri, f) == 0.0);

  const Hypergraph pair = Hypergraph::with_unit_weights(2, {{0, 1}});
  Eigen::VectorXd f2(2);
  f2 << 1, -1;
  CHECK(quadratic_form_oracle(pair, f2) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("quadratic form oracle rejects bad vectors") {
  const Hypergraph g = Hypergraph::with_unit_weights(2, {{0, 1}});
  CHECK_THROWS_AS(quadratic_form_oracle(g, Eigen::VectorXd::Zero(3)), Error);
  Eigen::VectorXd bad(2);
  bad << 1.0, std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(quadratic_form_oracle(g, bad), Error);
}
