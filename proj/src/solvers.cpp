#include "hyperlap/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hyperlap {

void SolverConfig::validate() const {
  require(std::isfinite(alpha) && alpha > 0.0 && alpha < 1.0, ErrorKind::InvalidInput,
          "alpha must lie strictly between 0 and 1");
  require(std::isfinite(gamma) && gamma > 0.0, ErrorKind::InvalidInput,
          "gamma must be positive");
  require(std::isfinite(tolerance) && tolerance > 0.0, ErrorKind::InvalidInput,
          "tolerance must be positive");
  require(max_iterations >= 1, ErrorKind::InvalidInput, "max_iterations must be positive");
}

LabelMatrix initial_labels(const std::vector<std::pair<Index, Index>>& assignments, Index n,
                           Index c) {
  require(n >= 1, ErrorKind::InvalidInput, "sample count must be positive");
  require(c >= 1, ErrorKind::InvalidInput, "class count must be positive");
  std::vector<Index> label_of(static_cast<std::size_t>(n), -1);
  for (const auto& [sample, cls] : assignments) {
    require(sample >= 0 && sample < n, ErrorKind::InvalidInput,
            "labeled sample index " + std::to_string(sample) + " outside [0," + std::to_string(n) +
                ")");
    require(cls >= 0 && cls < c, ErrorKind::InvalidInput,
            "class index " + std::to_string(cls) + " outside [0," + std::to_string(c) +
                ") for sample " + std::to_string(sample));
    require(label_of[static_cast<std::size_t>(sample)] < 0, ErrorKind::InvalidInput,
            "sample " + std::to_string(sample) + " labeled more than once");
    label_of[static_cast<std::size_t>(sample)] = cls;
  }

  LabelMatrix out;
  out.n = n;
  out.c = c;
  out.labeled_count = static_cast<Index>(assignments.size());
  out.permutation.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    if (label_of[static_cast<std::size_t>(i)] >= 0) out.permutation.push_back(i);
  }
  for (Index i = 0; i < n; ++i) {
    if (label_of[static_cast<std::size_t>(i)] < 0) out.permutation.push_back(i);
  }

  out.values = Eigen::MatrixXd::Zero(n, c);
  for (Index row = 0; row < out.labeled_count; ++row) {
    const Index cls = label_of[static_cast<std::size_t>(out.permutation[static_cast<std::size_t>(row)])];
    out.values.row(row).setConstant(-1.0);
    out.values(row, cls) = 1.0;
  }
  return out;
}

EstimateMatrix propagate_iterative(const LinearMap& s, const Eigen::MatrixXd& y,
                                   const SolverConfig& cfg) {
  cfg.validate();
  require(y.rows() == s.size(), ErrorKind::InvalidInput, "label matrix row count mismatch");

  EstimateMatrix out;
  out.values = y;  // F(0) = Y
  Eigen::MatrixXd sf;
  Eigen::MatrixXd next;
  const double keep = 1.0 - cfg.alpha;
  out.converged = false;
  for (Index t = 0; t < cfg.max_iterations; ++t) {
    s.apply(out.values, sf);
    next = cfg.alpha * sf + keep * y;
    const double change = (next - out.values).cwiseAbs().maxCoeff();
    out.values.swap(next);
    out.residual_history.push_back(change);
    out.iterations = t + 1;
    out.residual = change;
    if (change <= cfg.tolerance) {
      out.converged = true;
      break;
    }
  }
  return out;
}

EstimateMatrix propagate_iterative(const Eigen::MatrixXd& s, const Eigen::MatrixXd& y,
                                   const SolverConfig& cfg) {
  return propagate_iterative(DenseMap(s), y, cfg);
}

namespace {

// largest absolute entry of (A f - b) given the already-applied product
double residual_inf(const Eigen::MatrixXd& applied, const Eigen::MatrixXd& b) {
  return (applied - b).cwiseAbs().maxCoeff();
}

EstimateMatrix direct_result(Eigen::MatrixXd f, double residual, const char* what) {
  require(f.allFinite(), ErrorKind::Internal,
          std::string(what) + ": solution has non-finite entries");
  require(residual <= 1e-8, ErrorKind::Internal,
          std::string(what) + ": post-solve residual " + std::to_string(residual) +
              " indicates a singular or ill-conditioned system");
  EstimateMatrix out;
  out.values = std::move(f);
  out.iterations = 0;
  out.residual = residual;
  out.converged = true;
  return out;
}

}  // namespace

EstimateMatrix solve_propagation_closed(const Eigen::MatrixXd& s, const Eigen::MatrixXd& y,
                                        double alpha) {
  require(std::isfinite(alpha) && alpha > 0.0 && alpha < 1.0, ErrorKind::InvalidInput,
          "alpha must lie strictly between 0 and 1");
  require(s.rows() == s.cols(), ErrorKind::InvalidInput, "propagation matrix must be square");
  require(y.rows() == s.rows(), ErrorKind::InvalidInput, "label matrix row count mismatch");

  const Index n = s.rows();
  const Eigen::MatrixXd system = Eigen::MatrixXd::Identity(n, n) - alpha * s;
  const Eigen::MatrixXd rhs = (1.0 - alpha) * y;
  Eigen::MatrixXd f = Eigen::PartialPivLU<Eigen::MatrixXd>(system).solve(rhs);
  const double res = residual_inf(system * f, rhs);
  return direct_result(std::move(f), res, "propagation closed form");
}

EstimateMatrix solve_unnormalized(const Eigen::MatrixXd& l, const Eigen::MatrixXd& y,
                                  double gamma) {
  require(std::isfinite(gamma) && gamma > 0.0, ErrorKind::InvalidInput, "gamma must be positive");
  require(l.rows() == l.cols(), ErrorKind::InvalidInput, "Laplacian must be square");
  require(y.rows() == l.rows(), ErrorKind::InvalidInput, "label matrix row count mismatch");

  Eigen::MatrixXd system = l;
  system.diagonal().array() += gamma;
  const Eigen::MatrixXd rhs = gamma * y;
  Eigen::MatrixXd f = Eigen::LDLT<Eigen::MatrixXd>(system).solve(rhs);
  const double res = residual_inf(system * f, rhs);
  return direct_result(std::move(f), res, "regularized closed form");
}

EstimateMatrix solve_sym_regularized(const Eigen::MatrixXd& l_sym, const Eigen::MatrixXd& y,
                                     double gamma) {
  // same symmetric positive definite shape, kept separate so call sites say
  // which operator family they are in
  return solve_unnormalized(l_sym, y, gamma);
}

namespace {

struct CgStats {
  Index iterations = 0;
  double residual = 0.0;
};

// plain conjugate gradients on an SPD operator, x0 = 0, absolute-plus-relative
// stopping rule on the max-abs residual
CgStats conjugate_gradient(const LinearMap& a, const Eigen::VectorXd& b, Eigen::VectorXd& x) {
  const Index n = b.size();
  const double target = 1e-12 * std::max(1.0, b.cwiseAbs().maxCoeff());
  x.setZero(n);
  Eigen::VectorXd r = b;
  Eigen::VectorXd p = r;
  Eigen::MatrixXd ap_mat;
  double rs = r.squaredNorm();
  CgStats stats;
  stats.residual = r.cwiseAbs().maxCoeff();
  if (stats.residual <= target) return stats;

  const Index cap = 10 * n + 100;
  for (Index it = 0; it < cap; ++it) {
    a.apply(p, ap_mat);
    const auto ap = ap_mat.col(0);
    const double denom = p.dot(ap);
    require(denom > 0.0, ErrorKind::Internal,
            "conjugate gradients met a non-positive curvature direction; operator is not "
            "positive definite");
    const double step = rs / denom;
    x += step * p;
    r -= step * ap;
    stats.iterations = it + 1;
    stats.residual = r.cwiseAbs().maxCoeff();
    if (stats.residual <= target) return stats;
    const double rs_next = r.squaredNorm();
    p = r + (rs_next / rs) * p;
    rs = rs_next;
  }
  throw Error(ErrorKind::NonConvergence,
              "conjugate gradients stalled at residual " + std::to_string(stats.residual) +
                  " after " + std::to_string(stats.iterations) + " iterations");
}

// adapter for y = base(x) * scale_base + x * scale_identity
class AffineMap final : public LinearMap {
 public:
  AffineMap(const LinearMap& base, double scale_base, double scale_identity)
      : base_(&base), sb_(scale_base), si_(scale_identity) {}
  Index size() const override { return base_->size(); }
  void apply(const Eigen::MatrixXd& x, Eigen::MatrixXd& y) const override {
    base_->apply(x, y);
    y = sb_ * y + si_ * x;
  }

 private:
  const LinearMap* base_;
  double sb_;
  double si_;
};

EstimateMatrix solve_columns_cg(const LinearMap& system, const Eigen::MatrixXd& rhs) {
  EstimateMatrix out;
  out.values.resize(rhs.rows(), rhs.cols());
  Eigen::VectorXd x;
  for (Index c = 0; c < rhs.cols(); ++c) {
    const CgStats stats = conjugate_gradient(system, rhs.col(c), x);
    out.values.col(c) = x;
    out.iterations = std::max(out.iterations, stats.iterations);
    out.residual = std::max(out.residual, stats.residual);
  }
  out.converged = true;
  return out;
}

}  // namespace

EstimateMatrix solve_propagation_closed_cg(const LinearMap& s_sym, const Eigen::MatrixXd& y,
                                           double alpha) {
  require(std::isfinite(alpha) && alpha > 0.0 && alpha < 1.0, ErrorKind::InvalidInput,
          "alpha must lie strictly between 0 and 1");
  require(y.rows() == s_sym.size(), ErrorKind::InvalidInput, "label matrix row count mismatch");
  const AffineMap system(s_sym, -alpha, 1.0);  // I - alpha S
  return solve_columns_cg(system, (1.0 - alpha) * y);
}

EstimateMatrix solve_propagation_closed_rw_cg(const LinearMap& s_sym,
                                              const Eigen::VectorXd& degrees,
                                              const Eigen::MatrixXd& y, double alpha) {
  require(degrees.size() == s_sym.size(), ErrorKind::InvalidInput, "degree vector size mismatch");
  require((degrees.array() > 0.0).all(), ErrorKind::InvalidInput,
          "degrees must be strictly positive");
  const Eigen::VectorXd sqrt_d = degrees.cwiseSqrt();
  const Eigen::VectorXd inv_sqrt_d = sqrt_d.cwiseInverse();
  EstimateMatrix out = solve_propagation_closed_cg(s_sym, sqrt_d.asDiagonal() * y, alpha);
  out.values = inv_sqrt_d.asDiagonal() * out.values;
  // the residual of the transformed system maps back through D^{-1/2}; its
  // max-abs can only shrink when all degrees are >= 1, but report the bound
  out.residual *= inv_sqrt_d.maxCoeff();
  return out;
}

EstimateMatrix solve_regularized_cg(const LinearMap& laplacian_op, const Eigen::MatrixXd& y,
                                    double gamma) {
  require(std::isfinite(gamma) && gamma > 0.0, ErrorKind::InvalidInput, "gamma must be positive");
  require(y.rows() == laplacian_op.size(), ErrorKind::InvalidInput,
          "label matrix row count mismatch");
  const AffineMap system(laplacian_op, 1.0, gamma);  // L + gamma I
  return solve_columns_cg(system, gamma * y);
}

Prediction predict(const EstimateMatrix& f) {
  require(f.values.allFinite(), ErrorKind::InvalidInput, "estimates must be finite");
  const Index n = f.values.rows();
  const Index c = f.values.cols();
  require(c >= 1, ErrorKind::InvalidInput, "estimate matrix has no class columns");

  Prediction out;
  out.signs.resize(n, c);
  out.argmax.resize(static_cast<std::size_t>(n));
  out.zero_confidence.resize(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    bool all_zero = true;
    Index best = 0;
    for (Index j = 0; j < c; ++j) {
      const double v = f.values(i, j);
      out.signs(i, j) = (v > 0.0) ? 1.0 : (v < 0.0 ? -1.0 : 0.0);
      if (v != 0.0) all_zero = false;
      if (v > f.values(i, best)) best = j;  // strict: ties stay at lower index
    }
    out.argmax[static_cast<std::size_t>(i)] = best;
    out.zero_confidence[static_cast<std::size_t>(i)] = all_zero;
  }
  return out;
}

}  // namespace hyperlap
