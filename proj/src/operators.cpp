#include "hyperlap/operators.hpp"

#include "hyperlap/kernels.hpp"

namespace hyperlap {

namespace {

// M = H W D_e^{-1} H^T as a dense matrix
Eigen::MatrixXd coupling(const Hypergraph& g) {
  const Index m = g.num_edges();
  Eigen::VectorXd coeff(m);
  for (Index e = 0; e < m; ++e) coeff[e] = g.weight(e) / static_cast<double>(g.edge_size(e));
  Eigen::MatrixXd out;
  kernels::coupling_matrix(g.edge_ptr(), g.edge_member_data(), g.vertex_ptr(),
                           g.vertex_edge_data(), coeff.data(), out);
  return out;
}

}  // namespace

Eigen::MatrixXd laplacian(const Hypergraph& g, LaplacianKind kind) {
  const DegreeData deg = compute_degrees(g);
  Eigen::MatrixXd m = coupling(g);
  switch (kind) {
    case LaplacianKind::Unnormalized: {
      Eigen::MatrixXd l = -m;
      l.diagonal() += deg.vertex_degrees;
      return l;
    }
    case LaplacianKind::SymmetricNormalized: {
      const Eigen::VectorXd inv_sqrt = deg.vertex_degrees.cwiseSqrt().cwiseInverse();
      Eigen::MatrixXd l = -(inv_sqrt.asDiagonal() * m * inv_sqrt.asDiagonal());
      l.diagonal().array() += 1.0;
      return l;
    }
    case LaplacianKind::RandomWalk: {
      const Eigen::VectorXd inv = deg.vertex_degrees.cwiseInverse();
      Eigen::MatrixXd l = -(inv.asDiagonal() * m);
      l.diagonal().array() += 1.0;
      return l;
    }
  }
  throw Error(ErrorKind::Internal, "unhandled Laplacian kind");
}

Eigen::MatrixXd propagation_matrix(const Hypergraph& g, LaplacianKind kind) {
  require(kind != LaplacianKind::Unnormalized, ErrorKind::InvalidInput,
          "the unnormalized kind has no propagation matrix");
  const DegreeData deg = compute_degrees(g);
  Eigen::MatrixXd m = coupling(g);
  if (kind == LaplacianKind::RandomWalk) {
    const Eigen::VectorXd inv = deg.vertex_degrees.cwiseInverse();
    return inv.asDiagonal() * m;
  }
  const Eigen::VectorXd inv_sqrt = deg.vertex_degrees.cwiseSqrt().cwiseInverse();
  return inv_sqrt.asDiagonal() * m * inv_sqrt.asDiagonal();
}

Eigen::MatrixXd LinearMap::materialize() const {
  const Index n = size();
  Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd out;
  apply(eye, out);
  return out;
}

DenseMap::DenseMap(Eigen::MatrixXd m) : m_(std::move(m)) {
  require(m_.rows() == m_.cols(), ErrorKind::InvalidInput, "operator matrix must be square");
}

void DenseMap::apply(const Eigen::MatrixXd& x, Eigen::MatrixXd& y) const {
  require(x.rows() == m_.rows(), ErrorKind::InvalidInput, "operand row count mismatch");
  y.resize(x.rows(), x.cols());
  for (Index c = 0; c < x.cols(); ++c) {
    kernels::dense_matvec(m_, x.data() + c * x.rows(), y.data() + c * y.rows());
  }
}

HypergraphOperator::HypergraphOperator(const Hypergraph& g, LaplacianKind kind, OperatorForm form)
    : g_(&g), kind_(kind), form_(form) {
  require(!(form == OperatorForm::Propagation && kind == LaplacianKind::Unnormalized),
          ErrorKind::InvalidInput, "the unnormalized kind has no propagation matrix");
  const DegreeData deg = compute_degrees(g);
  const Index m = g.num_edges();
  edge_coeff_.resize(m);
  for (Index e = 0; e < m; ++e) {
    edge_coeff_[e] = g.weight(e) / static_cast<double>(g.edge_size(e));
  }
  deg_ = deg.vertex_degrees;
  inv_deg_ = deg_.cwiseInverse();
  inv_sqrt_deg_ = deg_.cwiseSqrt().cwiseInverse();
}

void HypergraphOperator::apply(const Eigen::MatrixXd& x, Eigen::MatrixXd& y) const {
  const Index n = g_->num_vertices();
  const Index m = g_->num_edges();
  require(x.rows() == n, ErrorKind::InvalidInput, "operand row count mismatch");
  y.resize(x.rows(), x.cols());

  Eigen::VectorXd pre(n);
  Eigen::VectorXd per_edge(m);
  Eigen::VectorXd mx(n);
  for (Index c = 0; c < x.cols(); ++c) {
    const auto xc = x.col(c);
    auto yc = y.col(c);

    // input scaling ahead of M = H W D_e^{-1} H^T
    switch (kind_) {
      case LaplacianKind::Unnormalized:
      case LaplacianKind::RandomWalk:
        pre = xc;
        break;
      case LaplacianKind::SymmetricNormalized:
        pre = inv_sqrt_deg_.cwiseProduct(xc);
        break;
    }

    // mx = M * pre, two CSR passes
    kernels::gather_sum(g_->edge_ptr(), g_->edge_member_data(), pre.data(), edge_coeff_.data(),
                        per_edge.data());
    kernels::gather_sum(g_->vertex_ptr(), g_->vertex_edge_data(), per_edge.data(), nullptr,
                        mx.data());

    switch (kind_) {
      case LaplacianKind::Unnormalized:
        // only the Laplacian form exists for this kind
        yc = deg_.cwiseProduct(xc) - mx;
        break;
      case LaplacianKind::SymmetricNormalized:
        if (form_ == OperatorForm::Propagation) {
          yc = inv_sqrt_deg_.cwiseProduct(mx);
        } else {
          yc = xc - inv_sqrt_deg_.cwiseProduct(mx);
        }
        break;
      case LaplacianKind::RandomWalk:
        if (form_ == OperatorForm::Propagation) {
          yc = inv_deg_.cwiseProduct(mx);
        } else {
          yc = xc - inv_deg_.cwiseProduct(mx);
        }
        break;
    }
  }
}

}  // namespace hyperlap
