// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "dadp/problem.hpp"

namespace dadp {

// Galerkin box-function discretisations of four classic Fredholm integral
// equations, midpoint quadrature on uniform grids: with grid step h and
// midpoints t_i, the matrix entry is h * kernel(s_i, t_j) and solution
// samples are scaled by sqrt(h), so Euclidean norms approximate L2 norms.

LinearProblem gen_phillips(int D);
LinearProblem gen_deriv2(int D);
LinearProblem gen_gravity(int D, double depth = 0.25);
LinearProblem gen_heat(int D, double kappa = 1.0);

/// Diagonal problem with exact SVD; sigma must be non-increasing positive.
struct DiagonalProblem {
    LinearProblem problem;
    SingularSystem system;
};
DiagonalProblem gen_diagonal(const Eigen::VectorXd& sigma,
                             const Eigen::VectorXd& x_true);

/// Configuration defeating the plain k-maximising rule: sigma_1 = sigma_2,
/// x_true = e_1 + e_2/sqrt(2), and an admissible noise level
/// delta = sigma_1 (1-sigma_1^2)^k / tau (left endpoint of the bracket
/// tau^2 delta^2 <= (1-sigma_1^2)^(2k) sigma_1^2 <= (4/3) tau^2 delta^2).
struct CounterexampleProblem {
    DiagonalProblem diag;
    double delta = 0.0;
};
CounterexampleProblem counterexample_problem(double sigma1, int N, int k,
                                             double tau);

enum class ProjectionKind { Averaging, Svd };

struct DiscretisationLadder {
    std::vector<int> dims;  // strictly increasing, each dividing D
    ProjectionKind kind = ProjectionKind::Averaging;
};

/// Dyadic ladder 2, 4, ..., D. D must be a power of two for Averaging.
DiscretisationLadder build_ladder(int D, ProjectionKind kind);

/// Named lookup used by the CLI and the benchmark harness.
/// Names: phillips | deriv2 | gravity | heat.
LinearProblem gen_named(const std::string& name, int D);

} // namespace dadp
