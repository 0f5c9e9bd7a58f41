// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <stdexcept>

namespace dadp {

/// Discretised linear model A x = y with known exact solution.
/// The matrix is rescaled at construction so that its spectral norm is <= 1;
/// the divisor is recorded in `scale` so unscaled quantities stay recoverable.
struct LinearProblem {
    Eigen::MatrixXd A;        // D x D, spectral norm <= 1 after rescaling
    Eigen::VectorXd x_true;   // exact solution
    Eigen::VectorXd y_true;   // A * x_true (post-rescaling)
    double scale = 1.0;       // factor A and y were divided by

    int dim() const { return static_cast<int>(A.rows()); }
};

/// Power-iteration estimate of the spectral norm of A (largest singular value).
double spectral_norm_estimate(const Eigen::MatrixXd& A, double tol = 1e-6,
                              int max_iter = 500);

/// Build a LinearProblem from a raw matrix and exact solution.
/// Computes y = A x, then divides A and y by max(1, ||A||) so the
/// operator-norm convention holds. Throws std::invalid_argument on
/// non-finite input.
LinearProblem make_problem(Eigen::MatrixXd A, Eigen::VectorXd x_true);

/// Ordered singular triples of a dense matrix.
struct SingularSystem {
    Eigen::VectorXd sigma;  // non-increasing, strictly positive
    Eigen::MatrixXd U;      // left singular vectors, orthonormal columns
    Eigen::MatrixXd V;      // right singular vectors, orthonormal columns
    int rank = 0;
};

/// Full SVD with small singular values (below 1e-14 * sigma_1) dropped.
SingularSystem compute_svd(const Eigen::MatrixXd& A);

/// Row-averaging projection onto m coordinates: output i is the scaled sum of
/// the i-th block of D/m consecutive entries, scale 1/sqrt(D/m). Rows are
/// orthonormal, so projected white noise stays white.
struct AveragingProjection {
    int D = 0;          // input dimension
    int m = 0;          // output dimension (rows)
    int block = 0;      // D / m
    double scale = 0.0; // 1 / sqrt(block)

    Eigen::VectorXd apply(const Eigen::VectorXd& v) const;
    Eigen::VectorXd adjoint(const Eigen::VectorXd& w) const;
    /// P * A applied row-wise, giving the m x D projected operator.
    Eigen::MatrixXd apply_to_matrix(const Eigen::MatrixXd& A) const;
};

/// Throws std::invalid_argument unless m divides D.
AveragingProjection make_averaging_projection(int D, int m);

/// Coefficient map of the projection onto the first m left singular vectors:
/// y |-> ((y,u_1), ..., (y,u_m)). Throws std::out_of_range for m > rank.
Eigen::VectorXd svd_coefficients(const SingularSystem& sys,
                                 const Eigen::VectorXd& y, int m);

} // namespace dadp
