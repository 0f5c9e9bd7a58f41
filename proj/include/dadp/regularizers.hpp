// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include "dadp/problem.hpp"

namespace dadp {

/// A problem restricted to m projected data coordinates: operator B = P A
/// (m x D), data b = P y_delta, plus the thin SVD of B. The spectral pieces
/// make filter reconstructions and residual norms O(m) per evaluation:
///
///   residual(filter g)^2 = sum_j g(s_j)^2 c_j^2 + orth2
///
/// where c = U^T b and orth2 = ||b||^2 - ||c||^2 is the part of the data
/// outside the range of B.
struct ProjectedProblem {
    int m = 0;               // projected data dimension
    int D = 0;               // domain dimension
    Eigen::MatrixXd B;       // m x D projected operator (may be empty for SVD-kind)
    Eigen::VectorXd b;       // projected data, length m
    Eigen::VectorXd s;       // singular values of B, non-increasing, length r
    Eigen::MatrixXd V;       // D x r right singular vectors of B
    Eigen::VectorXd c;       // U^T b, length r
    double orth2 = 0.0;      // ||b||^2 - ||c||^2, clamped at 0
};

/// Data-independent part of a ladder level: the projected operator and its
/// SVD. Built once per experiment, combined with fresh data every run.
struct ProjectedOperator {
    int m = 0;
    int D = 0;
    bool svd_kind = false;
    AveragingProjection proj;  // averaging kind only
    Eigen::MatrixXd B;         // m x D (averaging kind only)
    Eigen::VectorXd s;         // singular values of B
    Eigen::MatrixXd U;         // m x r left singular vectors of B
    Eigen::MatrixXd V;         // D x r right singular vectors of B
};

ProjectedOperator make_projected_operator(const LinearProblem& p,
                                          const AveragingProjection& proj);
/// Restriction along the first m singular vectors of A. The projected
/// operator is diag(sigma_1..sigma_m) V_m^T, so no new SVD is needed.
ProjectedOperator make_projected_operator_svd(const LinearProblem& p,
                                              const SingularSystem& sys, int m);

/// Combine an operator with one data realisation.
ProjectedProblem attach_data(const ProjectedOperator& op,
                             const Eigen::VectorXd& y_delta);

/// Convenience one-shot versions.
ProjectedProblem project_problem(const LinearProblem& p,
                                 const AveragingProjection& proj,
                                 const Eigen::VectorXd& y_delta);
ProjectedProblem project_problem_svd(const LinearProblem& p,
                                     const SingularSystem& sys, int m,
                                     const Eigen::VectorXd& y_delta);

/// Landweber filter factor 1 - (1-lambda)^k for lambda = sigma^2, evaluated
/// as -expm1(k*log1p(-lambda)) so large k never underflows through pow().
double landweber_filter(double sigma2, long long k);

/// (1-sigma^2)^(2k), same numerically careful evaluation.
double landweber_residual_factor(double sigma2, long long k);

/// Explicit recursion state; the oracle path for verifying the spectral one.
struct LandweberState {
    Eigen::VectorXd x;      // current iterate, length D
    long long k = 0;
    double residual = 0.0;  // ||B x - b||
    double flops = 0.0;     // accumulated 2*m*D per step
};

LandweberState landweber_init(const ProjectedProblem& pp);
/// One step x <- x + B^T (b - B x). Requires pp.B to be present.
LandweberState landweber_step(const ProjectedProblem& pp, const LandweberState& st);

/// Closed-form filter iterate sum_j (1-(1-s_j^2)^k)/s_j c_j v_j.
Eigen::VectorXd landweber_closed_form(const ProjectedProblem& pp, long long k);
/// ||B x_k - b||, evaluated spectrally.
double landweber_residual(const ProjectedProblem& pp, long long k);

/// Tikhonov reconstruction sum_j s_j/(alpha+s_j^2) c_j v_j, alpha > 0.
Eigen::VectorXd tikhonov_solve(const ProjectedProblem& pp, double alpha);
double tikhonov_residual(const ProjectedProblem& pp, double alpha);

/// Truncated-SVD estimator sum_{j<=k} (y,u_j)/s_j v_j on a full system.
Eigen::VectorXd spectral_cutoff(const SingularSystem& sys,
                                const Eigen::VectorXd& y, int k);

} // namespace dadp
