#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "hyperlap/operators.hpp"

namespace hyperlap {

enum class SolveMode { Iterative, ClosedForm };

struct SolverConfig {
  double alpha = 0.96;          // spreading strength, open interval (0,1)
  double gamma = 1.0;           // regularization weight, > 0
  double tolerance = 1e-10;     // max-abs change between iterates
  Index max_iterations = 10000;
  SolveMode mode = SolveMode::ClosedForm;

  void validate() const;
};

// Signed one-vs-rest label encoding: labeled rows carry one +1 and -1
// elsewhere, unlabeled rows are all zero. Rows are internally ordered with
// the labeled samples first; `permutation[row]` gives the original sample
// index so downstream output can be mapped back.
struct LabelMatrix {
  Index n = 0;
  Index c = 0;
  Index labeled_count = 0;
  Eigen::MatrixXd values;          // n x c
  std::vector<Index> permutation;  // internal row -> original sample index
};

struct EstimateMatrix {
  Eigen::MatrixXd values;  // n x c, same row order as the input
  Index iterations = 0;    // 0 for direct solves; worst column for CG solves
  double residual = 0.0;
  bool converged = true;
  std::vector<double> residual_history;  // iterative propagation only
};

// assignments: (sample index, class index) for the labeled samples
LabelMatrix initial_labels(const std::vector<std::pair<Index, Index>>& assignments, Index n,
                           Index c);

// F <- alpha S F + (1-alpha) Y starting from F = Y, until the max-abs change
// drops to cfg.tolerance or cfg.max_iterations is hit (then converged=false,
// reported rather than thrown). The solvers are linear in y, so y is any
// n x c matrix; label encodings enter through LabelMatrix::values.
EstimateMatrix propagate_iterative(const LinearMap& s, const Eigen::MatrixXd& y,
                                   const SolverConfig& cfg);
EstimateMatrix propagate_iterative(const Eigen::MatrixXd& s, const Eigen::MatrixXd& y,
                                   const SolverConfig& cfg);

// limit of the iteration above: solves (I - alpha S) F = (1-alpha) Y by LU,
// verifying the post-solve residual (the system cannot be singular for
// alpha < 1, so a large residual is surfaced as an internal error)
EstimateMatrix solve_propagation_closed(const Eigen::MatrixXd& s, const Eigen::MatrixXd& y,
                                        double alpha);

// regularized closed forms: (L + gamma I) F = gamma Y, symmetric positive
// definite for gamma > 0, solved by LDLT
EstimateMatrix solve_unnormalized(const Eigen::MatrixXd& l, const Eigen::MatrixXd& y,
                                  double gamma);
EstimateMatrix solve_sym_regularized(const Eigen::MatrixXd& l_sym, const Eigen::MatrixXd& y,
                                     double gamma);

// Matrix-free counterparts: conjugate gradients on the symmetric positive
// definite forms, one system per column of y.
//
// (I - alpha S_sym) F = (1-alpha) Y; s_sym must apply the symmetric kind
EstimateMatrix solve_propagation_closed_cg(const LinearMap& s_sym, const Eigen::MatrixXd& y,
                                           double alpha);
// the random-walk system routed through its symmetric similarity transform:
// F = D^{-1/2} G where (I - alpha S_sym) G = (1-alpha) D^{1/2} Y
EstimateMatrix solve_propagation_closed_rw_cg(const LinearMap& s_sym,
                                              const Eigen::VectorXd& degrees,
                                              const Eigen::MatrixXd& y, double alpha);
// (L + gamma I) F = gamma Y for the unnormalized or symmetric Laplacian
EstimateMatrix solve_regularized_cg(const LinearMap& laplacian_op, const Eigen::MatrixXd& y,
                                    double gamma);

struct Prediction {
  Eigen::MatrixXd signs;              // n x c, elementwise sign of F
  std::vector<Index> argmax;          // per-sample class, ties to lowest index
  std::vector<bool> zero_confidence;  // true where the whole F row is exactly 0
};

Prediction predict(const EstimateMatrix& f);

}  // namespace hyperlap
