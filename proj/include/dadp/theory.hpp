// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "dadp/noise.hpp"
#include "dadp/regularizers.hpp"

namespace dadp {

/// Index function phi with radius rho. Hoelder: phi(t) = t^(nu/2);
/// Logarithmic: phi(t) = (-log t)^(-p/2) for t < 1; Tabulated: monotone
/// interpolation on a (lambda, phi) grid.
struct SourceCondition {
    enum class Kind { Hoelder, Logarithmic, Tabulated };
    Kind kind = Kind::Hoelder;
    double param = 1.0;  // nu or p
    double rho = 1.0;
    std::vector<double> grid_lambda;  // Tabulated only, increasing
    std::vector<double> grid_phi;     // strictly increasing, phi(0+) = 0

    double phi(double t) const;
};

SourceCondition hoelder_source(double nu, double rho = 1.0);
SourceCondition logarithmic_source(double p, double rho = 1.0);

/// Realised squared-singular-value sequence. Polynomial: j^-q;
/// Exponential: exp(-a j); FromSVD: taken from a computed system.
struct IllPosednessProfile {
    std::vector<double> sigma2;  // non-increasing, positive

    int size() const { return static_cast<int>(sigma2.size()); }
};

IllPosednessProfile polynomial_profile(double q, int n);
IllPosednessProfile exponential_profile(double a, int n);
IllPosednessProfile profile_from_svd(const SingularSystem& sys);

/// Geometric interpolation of the sigma_j^2 sequence at real x >= 1:
/// (sigma^2_floor(x))^(floor(x)+1-x) * (sigma^2_{floor(x)+1})^(x-floor(x)).
/// Exact at integers, exact everywhere for exponential profiles.
double sigma_interp(const IllPosednessProfile& prof, double x);

/// Inverse of sigma_interp: smallest x >= 1 with sigma_x^2 = alpha.
double x_alpha(const IllPosednessProfile& prof, double alpha);

/// Theta(alpha) = alpha * phi(alpha)^2 / x_alpha; strictly increasing.
double theta(const IllPosednessProfile& prof, const SourceCondition& src,
             double alpha);
/// Bisection inverse, relative tolerance 1e-12 on alpha.
double theta_inverse(const IllPosednessProfile& prof, const SourceCondition& src,
                     double t);

/// ceil(x_alpha(Theta^-1(delta^2/rho^2))); verifies the two-sided balance
/// inequalities at the bracketing nodes and throws std::logic_error on
/// violation.
int optimal_dimension_m_star(const IllPosednessProfile& prof,
                             const SourceCondition& src, double delta,
                             double rho);

struct Remark1Bound {
    int l_star = 0;
    double bound = 0.0;        // sqrt of the min of the two bracketing sums
    double rate_approx = 0.0;  // rho * phi(Theta^-1(delta^2/rho^2))
    bool exhausted = false;    // profile ended before the balance index
};

Remark1Bound remark1_bound(const IllPosednessProfile& prof,
                           const SourceCondition& src, double delta, double rho);

struct QualificationReport {
    bool holds = true;
    std::vector<double> margins;       // phi(1/k) - sup, per k
    std::vector<double> margins_sqrt;  // same for lambda -> sqrt(lambda)*phi
};

/// Grid check of sup_lambda (1-lambda)^k phi(lambda) <= phi(1/k), for phi and
/// for lambda -> sqrt(lambda)*phi(lambda).
QualificationReport qualification_check(const SourceCondition& src,
                                        const std::vector<long long>& k_grid,
                                        int grid_points_per_decade = 10000,
                                        double lambda_min = 1e-8);

/// Tikhonov counterpart: sup alpha/(alpha+lambda) * phi(lambda) <= phi(alpha).
QualificationReport tikhonov_qualification_check(
    const SourceCondition& src, const std::vector<double>& alpha_grid,
    int grid_points_per_decade = 10000, double lambda_min = 1e-8);

/// Monte Carlo estimate of P(exists m in [kappa, horizon] with
/// |sum_{j<=m} z_j^2 - m| >= eps*m) for unit-variance noise.
double concentration_test(NoiseKind kind, int student_df, double eps,
                          int kappa, int horizon, int n_runs,
                          std::uint64_t seed);

struct OracleResult {
    long long k = 0;
    int m = 0;
    double error = 0.0;
};

/// Realised-error oracle: exhaustive minimisation of ||x_{k,m} - x_true||
/// over the ladder and k <= k_max (dense scan up to 10^4, geometric beyond).
OracleResult empirical_oracle(const std::vector<ProjectedProblem>& ladder,
                              const Eigen::VectorXd& x_true, long long k_max);

/// Convexity probe for Assumption-style checks: second differences of
/// lambda -> lambda * (phi*phi)^{-1}(lambda) on a uniform grid.
bool phi_convexity_check(const SourceCondition& src, int grid_n = 2000,
                         double tol = 1e-10);

} // namespace dadp
