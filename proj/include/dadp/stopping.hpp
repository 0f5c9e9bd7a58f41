// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "dadp/regularizers.hpp"

namespace dadp {

enum class TermFlag { Converged, CapReached, LadderExhausted };

std::string to_string(TermFlag f);

struct StoppingConfig {
    double tau = 1.5;          // fudge parameter, > 1
    double eta = -1.0;         // ratio threshold; < 0 means 1/(2*tau*e^4)
    double q = 0.5;            // Tikhonov grid ratio
    double t = -1.0;           // Tikhonov shrink factor; < 0 means 1/(8*tau)
    long long cap = 500000000; // cumulative iteration cap per run
    int alpha_grid_depth = 200;

    double eta_effective() const;
    double t_effective() const;
    void validate() const;  // throws std::invalid_argument on bad values
};

/// Per-dimension record produced while scanning one ladder level.
struct DimTrace {
    int m = 0;
    long long k_dp = 0;
    double r_kdp = 0.0;
    double r_kdp_minus1 = 0.0;  // residual one step before the stop (k_dp > 0)
    double r_2kdp = 0.0;
    double ratio = 0.0;         // r_2kdp / r_kdp (1 if denominator ~ 0)
    double alpha_dp = 0.0;      // Tikhonov path only
    double r_talpha = 0.0;      // Tikhonov path only
    bool capped = false;
};

struct StoppingReport {
    int m_dp = 0;
    long long k_dp = 0;
    double alpha_dp = 0.0;              // Tikhonov path only
    Eigen::VectorXd x;                  // reconstruction at the chosen pair
    std::vector<DimTrace> table;        // one entry per ladder level
    int rounds = 0;                     // while-loop rounds n_*
    double cost_paper = 0.0;            // sum_l k_dp(m_l) * m_l^2
    double cost_flops = 0.0;            // sum_l k_dp(m_l) * 2 * m_l * D
    TermFlag flag = TermFlag::Converged;

    /// Line-oriented key=value serialisation with reproducible ordering.
    std::string to_record() const;
};

/// Smallest k >= 0 with ||B x_k - b|| <= tau*sqrt(m)*delta.
///
/// The residual is non-increasing in k (operator norm <= 1), so the index is
/// located by exponential growth plus bisection on the spectral residual;
/// this matches the stepwise scan exactly (verified by the oracle tests) at
/// O(m log k) cost. The trace carries residuals at k-1, k and 2k, which is
/// everything Algorithm 1's ratio test needs.
DimTrace discrepancy_index(const ProjectedProblem& pp, double delta,
                           double tau, long long cap);

/// Reference implementation running the recursion step by step. Used by the
/// oracle tests on small problems; requires pp.B.
DimTrace discrepancy_index_scan(const ProjectedProblem& pp, double delta,
                                double tau, long long cap);

/// Geometric-grid discrepancy index for Tikhonov: alpha_dp = q^j for the
/// smallest j >= 0 with residual <= tau*sqrt(m)*delta.
DimTrace tikhonov_discrepancy_alpha(const ProjectedProblem& pp, double delta,
                                    const StoppingConfig& cfg);

/// Candidate selection of the while-loop, factored out so harness code can
/// run it on traces it computed itself (e.g. spectral fast paths).
struct LadderSelection {
    size_t index = 0;  // chosen ladder position
    int rounds = 0;
    bool accepted = false;  // false => ladder exhausted below the threshold
};
LadderSelection algorithm1_select(const std::vector<DimTrace>& traces, double eta);
LadderSelection algorithm2_select(const std::vector<DimTrace>& traces,
                                  double threshold);
/// Plain argmax of k_dp, smallest dimension on ties.
size_t naive_select(const std::vector<DimTrace>& traces);

/// k-maximising rule without the while-loop: k = max over ladder of k_dp(m),
/// m = smallest ladder dimension attaining it.
StoppingReport naive_max_rule(const std::vector<ProjectedProblem>& ladder,
                              double delta, const StoppingConfig& cfg);

/// Modified discrepancy principle for Landweber iteration. Candidates advance
/// strictly through the ladder; the ratio r(2k)/r(k) tested against eta
/// decides when the discretisation dimension is large enough.
StoppingReport algorithm1_modified_dp(const std::vector<ProjectedProblem>& ladder,
                                      double delta, const StoppingConfig& cfg);

/// Tikhonov analogue: candidates minimise alpha_dp, ratio r(t*alpha)/r(alpha)
/// tested against 1/(8*tau).
StoppingReport algorithm2_modified_dp_tikhonov(
    const std::vector<ProjectedProblem>& ladder, double delta,
    const StoppingConfig& cfg);

/// Full-dimension sequential baseline: tau = 1, threshold sqrt(D)*delta.
StoppingReport early_stopping_dp(const ProjectedProblem& full, double delta,
                                 long long cap);

} // namespace dadp
