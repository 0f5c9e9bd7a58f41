// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "dadp/noise.hpp"
#include "dadp/stopping.hpp"
#include "dadp/testproblems.hpp"

using namespace dadp;

namespace {

LinearProblem random_problem(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> nd;
    Eigen::MatrixXd A(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A(i, j) = nd(rng);
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) x(i) = nd(rng);
    return make_problem(A, x);
}

ProjectedProblem scalar_problem(double sigma, double data) {
    Eigen::VectorXd s(1), x(1);
    s << sigma;
    x << 1.0;
    const DiagonalProblem dp = gen_diagonal(s, x);
    Eigen::VectorXd y(1);
    y << data;
    return project_problem_svd(dp.problem, dp.system, 1, y);
}

DimTrace make_trace(int m, long long k, double ratio, double alpha = 1.0) {
    DimTrace tr;
    tr.m = m;
    tr.k_dp = k;
    tr.ratio = ratio;
    tr.alpha_dp = alpha;
    return tr;
}

} // namespace

TEST_CASE("config defaults and validation") {
    StoppingConfig cfg;
    CHECK(cfg.eta_effective() ==
          doctest::Approx(1.0 / (2.0 * 1.5 * std::exp(4.0))));
    CHECK(cfg.t_effective() == doctest::Approx(1.0 / (8.0 * 1.5)));
    cfg.eta = 0.5;
    cfg.t = 0.25;
    CHECK(cfg.eta_effective() == 0.5);
    CHECK(cfg.t_effective() == 0.25);

    StoppingConfig bad;
    bad.tau = 1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = StoppingConfig{};
    bad.eta = 1.5;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = StoppingConfig{};
    bad.q = 1.2;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = StoppingConfig{};
    bad.cap = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("index is zero when the data already satisfies the bound") {
    const ProjectedProblem pp = scalar_problem(0.5, 0.1);
    const DimTrace tr = discrepancy_index(pp, 1.0, 1.5, 1000);
    CHECK(tr.k_dp == 0);
    CHECK_FALSE(tr.capped);
    CHECK(tr.r_kdp == doctest::Approx(0.1));
}

TEST_CASE("one step suffices for a unit singular value") {
    const ProjectedProblem pp = scalar_problem(1.0, 1.0);
    const DimTrace tr = discrepancy_index(pp, 0.1, 1.5, 1000);
    CHECK(tr.k_dp == 1);
    CHECK(tr.r_kdp == doctest::Approx(0.0));
    // exactly zero residual: the ratio convention returns 1
    CHECK(tr.ratio == 1.0);
}

TEST_CASE("negative delta is rejected, zero delta caps out") {
    const ProjectedProblem pp = scalar_problem(0.7, 1.0);
    CHECK_THROWS_AS(discrepancy_index(pp, -0.1, 1.5, 100),
                    std::invalid_argument);
    const DimTrace tr = discrepancy_index(pp, 0.0, 1.5, 50);
    CHECK(tr.capped);
    CHECK(tr.k_dp == 50);
}

TEST_CASE("bisection index matches the stepwise scan") {
    for (unsigned seed : {1u, 2u, 3u, 4u}) {
        const LinearProblem p = random_problem(16, seed);
        NoiseModel nm;
        nm.delta = 0.02 * (seed + 1);
        nm.seed = seed;
        const Eigen::VectorXd y = sample_noisy_data(p, nm);
        for (int m : {4, 8, 16}) {
            const ProjectedProblem pp =
                project_problem(p, make_averaging_projection(16, m), y);
            const DimTrace fast = discrepancy_index(pp, nm.delta, 1.5, 200000);
            const DimTrace slow =
                discrepancy_index_scan(pp, nm.delta, 1.5, 200000);
            CHECK(fast.k_dp == slow.k_dp);
            CHECK(fast.capped == slow.capped);
            CHECK(fast.r_kdp == doctest::Approx(slow.r_kdp).epsilon(1e-8));
            CHECK(fast.r_2kdp == doctest::Approx(slow.r_2kdp).epsilon(1e-8));
            // defining property of the stopping index
            const double thresh = 1.5 * std::sqrt(double(m)) * nm.delta;
            if (!fast.capped) {
                CHECK(fast.r_kdp <= thresh);
                if (fast.k_dp > 0) CHECK(fast.r_kdp_minus1 > thresh);
            }
        }
    }
}

TEST_CASE("cap is honoured and flagged") {
    const ProjectedProblem pp = scalar_problem(0.1, 1.0);
    const DimTrace tr = discrepancy_index(pp, 1e-12, 1.5, 25);
    CHECK(tr.capped);
    CHECK(tr.k_dp == 25);
    CHECK(tr.r_kdp > 1.5 * 1e-12);
}

TEST_CASE("plain maximiser breaks ties toward the smaller dimension") {
    std::vector<DimTrace> traces = {make_trace(2, 7, 0.1), make_trace(4, 7, 0.9),
                                    make_trace(8, 3, 0.9)};
    CHECK(naive_select(traces) == 0);
    traces[2].k_dp = 9;
    CHECK(naive_select(traces) == 2);
}

TEST_CASE("ladder selection escapes a low-ratio maximiser") {
    // the first level maximises the stopping index but fails the ratio test;
    // the rule must advance past it
    const std::vector<DimTrace> traces = {make_trace(1, 100, 0.001),
                                          make_trace(2, 5, 0.9)};
    const LadderSelection sel = algorithm1_select(traces, 0.5);
    CHECK(sel.accepted);
    CHECK(sel.index == 1);
    CHECK(sel.rounds == 2);
    CHECK(naive_select(traces) == 0);
}

TEST_CASE("ladder selection on a single accepted level") {
    const std::vector<DimTrace> traces = {make_trace(4, 12, 0.8)};
    const LadderSelection sel = algorithm1_select(traces, 0.5);
    CHECK(sel.accepted);
    CHECK(sel.index == 0);
    CHECK(sel.rounds == 1);
}

TEST_CASE("ladder exhaustion is reported, loop terminates") {
    const std::vector<DimTrace> traces = {make_trace(1, 9, 0.0),
                                          make_trace(2, 8, 0.0),
                                          make_trace(4, 7, 0.0)};
    const LadderSelection sel = algorithm1_select(traces, 0.5);
    CHECK_FALSE(sel.accepted);
    CHECK(sel.index == 2);
    CHECK(sel.rounds <= 3);  // strict advance bounds the round count
}

TEST_CASE("tikhonov grid search on a scalar problem") {
    // residual(alpha) = alpha/(alpha+1): 0.5, 1/3, 0.2 along the grid
    // 1, 0.5, 0.25; threshold 0.3 is first met at alpha = 0.25 (j = 2)
    const ProjectedProblem pp = scalar_problem(1.0, 1.0);
    StoppingConfig cfg;
    const DimTrace tr = tikhonov_discrepancy_alpha(pp, 0.2, cfg);
    CHECK(tr.alpha_dp == doctest::Approx(0.25));
    CHECK(tr.k_dp == 2);  // grid index
    CHECK_FALSE(tr.capped);
    CHECK(tr.r_kdp == doctest::Approx(0.2));
    CHECK(tr.r_kdp_minus1 == doctest::Approx(1.0 / 3.0));  // value at alpha/q
    CHECK(tr.r_talpha ==
          doctest::Approx(tikhonov_residual(pp, cfg.t_effective() * 0.25)));
}

TEST_CASE("tikhonov index satisfies its defining inequalities") {
    const LinearProblem p = random_problem(16, 8);
    NoiseModel nm;
    nm.delta = 0.05;
    nm.seed = 8;
    const Eigen::VectorXd y = sample_noisy_data(p, nm);
    StoppingConfig cfg;
    for (int m : {4, 8, 16}) {
        const ProjectedProblem pp =
            project_problem(p, make_averaging_projection(16, m), y);
        const DimTrace tr = tikhonov_discrepancy_alpha(pp, nm.delta, cfg);
        const double thresh = cfg.tau * std::sqrt(double(m)) * nm.delta;
        if (!tr.capped) {
            CHECK(tikhonov_residual(pp, tr.alpha_dp) <= thresh);
            if (tr.k_dp > 0)
                CHECK(tikhonov_residual(pp, tr.alpha_dp / cfg.q) > thresh);
            CHECK(tr.alpha_dp ==
                  doctest::Approx(std::pow(cfg.q, double(tr.k_dp))));
        }
    }
}

TEST_CASE("tikhonov grid depth cap is flagged") {
    const ProjectedProblem pp = scalar_problem(0.3, 1.0);
    StoppingConfig cfg;
    cfg.alpha_grid_depth = 3;
    const DimTrace tr = tikhonov_discrepancy_alpha(pp, 1e-9, cfg);
    CHECK(tr.capped);
    CHECK(tr.k_dp == 3);
}

TEST_CASE("full ladder rules agree with their selection helpers") {
    const LinearProblem p = gen_phillips(32);
    NoiseModel nm;
    nm.delta = 0.01;
    nm.seed = 17;
    const Eigen::VectorXd y = sample_noisy_data(p, nm);
    std::vector<ProjectedProblem> ladder;
    for (int m : {2, 4, 8, 16, 32})
        ladder.push_back(project_problem(p, make_averaging_projection(32, m), y));
    StoppingConfig cfg;

    const StoppingReport naive = naive_max_rule(ladder, nm.delta, cfg);
    const StoppingReport a1 = algorithm1_modified_dp(ladder, nm.delta, cfg);
    REQUIRE(naive.table.size() == 5);
    REQUIRE(a1.table.size() == 5);
    // identical ladder scans underneath
    for (size_t i = 0; i < 5; ++i) {
        CHECK(naive.table[i].k_dp == a1.table[i].k_dp);
        CHECK(naive.table[i].ratio == doctest::Approx(a1.table[i].ratio));
    }
    const size_t ni = naive_select(naive.table);
    CHECK(naive.m_dp == naive.table[ni].m);
    CHECK(naive.k_dp == naive.table[ni].k_dp);
    const LadderSelection sel = algorithm1_select(a1.table, cfg.eta_effective());
    CHECK(a1.m_dp == a1.table[sel.index].m);
    CHECK(a1.rounds == sel.rounds);
    // reconstruction matches the closed form at the chosen pair
    const Eigen::VectorXd xr = landweber_closed_form(ladder[sel.index], a1.k_dp);
    CHECK((a1.x - xr).norm() <= 1e-12);
    // cost identities
    double cp = 0.0;
    for (const auto& tr : a1.table) cp += double(tr.k_dp) * tr.m * tr.m;
    CHECK(a1.cost_paper == doctest::Approx(cp));
    CHECK(a1.flag == TermFlag::Converged);
}

TEST_CASE("tikhonov ladder rule reports the accepted level") {
    const LinearProblem p = gen_gravity(32);
    NoiseModel nm;
    nm.delta = 0.01;
    nm.seed = 23;
    const Eigen::VectorXd y = sample_noisy_data(p, nm);
    std::vector<ProjectedProblem> ladder;
    for (int m : {2, 4, 8, 16, 32})
        ladder.push_back(project_problem(p, make_averaging_projection(32, m), y));
    StoppingConfig cfg;
    const StoppingReport rep = algorithm2_modified_dp_tikhonov(ladder, nm.delta, cfg);
    REQUIRE(rep.table.size() == 5);
    const LadderSelection sel = algorithm2_select(rep.table, 1.0 / (8.0 * cfg.tau));
    CHECK(rep.m_dp == rep.table[sel.index].m);
    CHECK(rep.alpha_dp == rep.table[sel.index].alpha_dp);
    if (sel.accepted) CHECK(rep.flag != TermFlag::LadderExhausted);
    const Eigen::VectorXd xr = tikhonov_solve(ladder[sel.index], rep.alpha_dp);
    CHECK((rep.x - xr).norm() <= 1e-12);
}

TEST_CASE("cumulative cap spans the whole ladder") {
    const LinearProblem p = gen_deriv2(16);
    std::vector<ProjectedProblem> ladder;
    for (int m : {4, 8, 16})
        ladder.push_back(
            project_problem(p, make_averaging_projection(16, m), p.y_true));
    StoppingConfig cfg;
    cfg.cap = 30;  // tiny cumulative budget with delta = 0: every level caps
    const StoppingReport rep = naive_max_rule(ladder, 0.0, cfg);
    CHECK(rep.flag == TermFlag::CapReached);
    long long total = 0;
    for (const auto& tr : rep.table) total += tr.k_dp;
    CHECK(total <= cfg.cap);
}

TEST_CASE("baseline stopping on the full problem") {
    const ProjectedProblem pp = scalar_problem(1.0, 1.0);
    const StoppingReport rep = early_stopping_dp(pp, 0.1, 1000);
    CHECK(rep.k_dp == 1);  // tau = 1 threshold sqrt(1)*0.1, residual(1) = 0
    CHECK(rep.m_dp == 1);
    CHECK(rep.cost_paper == doctest::Approx(1.0));
    CHECK(rep.cost_flops == doctest::Approx(2.0));

    const StoppingReport trivial = early_stopping_dp(pp, 2.0, 1000);
    CHECK(trivial.k_dp == 0);

    const ProjectedProblem slow = scalar_problem(0.1, 1.0);
    const StoppingReport capped = early_stopping_dp(slow, 1e-12, 40);
    CHECK(capped.flag == TermFlag::CapReached);
    CHECK(capped.k_dp == 40);
}

TEST_CASE("stopping index is invariant under joint data/noise rescaling") {
    const LinearProblem p = random_problem(16, 33);
    NoiseModel nm;
    nm.delta = 0.05;
    nm.seed = 33;
    const Eigen::VectorXd y = sample_noisy_data(p, nm);
    const AveragingProjection pr = make_averaging_projection(16, 8);
    const ProjectedProblem a = project_problem(p, pr, y);
    const ProjectedProblem b = project_problem(p, pr, 3.0 * y);
    const DimTrace ta = discrepancy_index(a, nm.delta, 1.5, 100000);
    const DimTrace tb = discrepancy_index(b, 3.0 * nm.delta, 1.5, 100000);
    CHECK(ta.k_dp == tb.k_dp);
    CHECK(tb.r_kdp == doctest::Approx(3.0 * ta.r_kdp).epsilon(1e-10));
}

TEST_CASE("report serialisation carries the headline fields") {
    const ProjectedProblem pp = scalar_problem(1.0, 1.0);
    const StoppingReport rep = early_stopping_dp(pp, 0.1, 1000);
    const std::string rec = rep.to_record();
    CHECK(rec.find("m_dp=1") != std::string::npos);
    CHECK(rec.find("k_dp=1") != std::string::npos);
    CHECK(rec.find("flag=converged") != std::string::npos);
    CHECK(rec.find("dim m=1") != std::string::npos);
}
