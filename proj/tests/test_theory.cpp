// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dadp/testproblems.hpp"
#include "dadp/theory.hpp"

using namespace dadp;

TEST_CASE("index functions evaluate their closed forms") {
    const SourceCondition h = hoelder_source(1.0);
    CHECK(h.phi(0.25) == doctest::Approx(0.5));
    CHECK(h.phi(0.0) == 0.0);
    const SourceCondition h2 = hoelder_source(2.0);
    CHECK(h2.phi(0.3) == doctest::Approx(0.3));
    const SourceCondition lg = logarithmic_source(2.0);
    CHECK(lg.phi(std::exp(-4.0)) == doctest::Approx(0.25));
    CHECK_THROWS_AS(hoelder_source(0.0), std::invalid_argument);
    CHECK_THROWS_AS(logarithmic_source(-1.0), std::invalid_argument);
}

TEST_CASE("profiles realise their formulas") {
    const IllPosednessProfile poly = polynomial_profile(2.0, 5);
    CHECK(poly.sigma2[0] == doctest::Approx(1.0));
    CHECK(poly.sigma2[2] == doctest::Approx(1.0 / 9.0));
    const IllPosednessProfile ex = exponential_profile(0.5, 4);
    CHECK(ex.sigma2[3] == doctest::Approx(std::exp(-2.0)));
    CHECK_THROWS_AS(polynomial_profile(-1.0, 5), std::invalid_argument);
}

TEST_CASE("interpolated spectrum: nodes exact, geometric in between") {
    const IllPosednessProfile poly = polynomial_profile(1.0, 6);
    for (int j = 1; j <= 6; ++j)
        CHECK(sigma_interp(poly, double(j)) == doctest::Approx(1.0 / j));
    CHECK(sigma_interp(poly, 1.5) ==
          doctest::Approx(std::sqrt(1.0 * 0.5)));  // geometric mean
    CHECK_THROWS_AS(sigma_interp(poly, 0.5), std::out_of_range);
    CHECK_THROWS_AS(sigma_interp(poly, 6.5), std::out_of_range);

    // exponential profiles are reproduced exactly at every real x
    const IllPosednessProfile ex = exponential_profile(0.8, 10);
    for (double x : {1.0, 2.3, 3.7, 9.99})
        CHECK(sigma_interp(ex, x) == doctest::Approx(std::exp(-0.8 * x)).epsilon(1e-12));
}

TEST_CASE("effective dimension inverts the spectrum") {
    const IllPosednessProfile ex = exponential_profile(1.0, 10);
    CHECK(x_alpha(ex, std::exp(-2.5)) == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(x_alpha(ex, std::exp(-1.0)) == doctest::Approx(1.0));
    const IllPosednessProfile poly = polynomial_profile(1.5, 8);
    for (double a : {0.9, 0.5, 0.21, 0.05})
        CHECK(sigma_interp(poly, x_alpha(poly, a)) ==
              doctest::Approx(a).epsilon(1e-12));
    CHECK_THROWS_AS(x_alpha(poly, 2.0), std::out_of_range);
    CHECK_THROWS_AS(x_alpha(poly, 1e-9), std::out_of_range);
}

TEST_CASE("balance functional at the nodes of a polynomial profile") {
    // sigma_j^2 = 1/j with phi(t)^2 = t gives theta(1/j) = j^-3
    const IllPosednessProfile poly = polynomial_profile(1.0, 50);
    const SourceCondition src = hoelder_source(1.0);
    for (int j : {1, 2, 5, 20})
        CHECK(theta(poly, src, 1.0 / j) ==
              doctest::Approx(std::pow(double(j), -3.0)).epsilon(1e-12));
    // strictly increasing in alpha
    double prev = 0.0;
    for (double a = 0.021; a <= 1.0; a *= 1.3) {
        const double t = theta(poly, src, a);
        CHECK(t > prev);
        prev = t;
    }
    // inverse round trip
    for (double a : {0.9, 0.3, 0.05})
        CHECK(theta_inverse(poly, src, theta(poly, src, a)) ==
              doctest::Approx(a).epsilon(1e-8));
    CHECK_THROWS_AS(theta_inverse(poly, src, 10.0), std::out_of_range);
}

TEST_CASE("optimal dimension solves the balance equation exactly") {
    // balance rho^2/m^2 = m delta^2 -> m = (rho/delta)^(2/3); delta^2 = 1e-3
    const IllPosednessProfile poly = polynomial_profile(1.0, 64);
    const SourceCondition src = hoelder_source(1.0);
    const double delta = std::sqrt(1e-3);
    CHECK(optimal_dimension_m_star(poly, src, delta, 1.0) == 10);
    // slightly smaller delta pushes the dimension up
    CHECK(optimal_dimension_m_star(poly, src, delta * 0.7, 1.0) >= 10);
}

TEST_CASE("optimal dimension works on a computed spectrum") {
    const LinearProblem p = gen_gravity(64);
    const SingularSystem sys = compute_svd(p.A);
    const IllPosednessProfile prof = profile_from_svd(sys);
    const SourceCondition src = hoelder_source(0.5);
    // pick a delta strictly inside the realised theta range
    const double t_mid = std::sqrt(theta(prof, src, prof.sigma2[0]) *
                                   theta(prof, src, prof.sigma2[prof.size() - 1]));
    const double delta = std::sqrt(t_mid);
    const int m = optimal_dimension_m_star(prof, src, delta, 1.0);
    CHECK(m >= 1);
    CHECK(m <= prof.size());
}

TEST_CASE("truncation-error bound matches a brute-force balance index") {
    const IllPosednessProfile poly = polynomial_profile(2.0, 200);
    const SourceCondition src = hoelder_source(1.0);
    const double delta = 1e-3, rho = 1.0;
    const Remark1Bound out = remark1_bound(poly, src, delta, rho);
    REQUIRE_FALSE(out.exhausted);
    // independent recomputation of the first crossing
    double series = 0.0;
    int l = 0;
    for (int j = 1; j < poly.size(); ++j) {
        series += delta * delta / poly.sigma2[j - 1];
        const double p = src.phi(poly.sigma2[j]);
        if (series >= p * p * rho * rho) {
            l = j;
            break;
        }
    }
    CHECK(out.l_star == l);
    CHECK(out.bound > 0.0);
    // the explicit bound stays within an order of magnitude of the rate
    CHECK(out.bound <= 10.0 * out.rate_approx);
    // monotone in delta
    const Remark1Bound out2 = remark1_bound(poly, src, 10.0 * delta, rho);
    CHECK(out2.bound >= out.bound);
}

TEST_CASE("iterative filter has unlimited qualification") {
    const std::vector<long long> ks = {1, 10, 100};
    for (double nu : {0.5, 1.0, 2.0}) {
        const QualificationReport rep =
            qualification_check(hoelder_source(nu), ks, 2000);
        CHECK(rep.holds);
        for (double m : rep.margins) CHECK(m >= -1e-12);
    }
    for (double p : {0.5, 1.0}) {
        const QualificationReport rep =
            qualification_check(logarithmic_source(p), ks, 2000);
        CHECK(rep.holds);
    }
}

TEST_CASE("tikhonov qualification saturates") {
    const std::vector<double> alphas = {1e-1, 1e-2, 1e-3};
    CHECK(tikhonov_qualification_check(hoelder_source(1.0), alphas, 2000).holds);
    // at the saturation boundary the plain sup test still passes, but the
    // sqrt(lambda)-weighted variant (one smoothness order higher) fails
    const QualificationReport two =
        tikhonov_qualification_check(hoelder_source(2.0), alphas, 2000);
    for (double m : two.margins) CHECK(m >= -1e-12);
    CHECK_FALSE(two.holds);
    // well above saturation even the plain test fails
    const QualificationReport four =
        tikhonov_qualification_check(hoelder_source(4.0), alphas, 2000);
    CHECK_FALSE(four.holds);
    bool plain_neg = false;
    for (double m : four.margins) plain_neg = plain_neg || m < 0.0;
    CHECK(plain_neg);
}

TEST_CASE("partial-sum concentration of squared noise") {
    // enormous tolerance: the event never happens
    CHECK(concentration_test(NoiseKind::Gaussian, 3, 10.0, 1, 128, 200, 5) == 0.0);
    // the exceedance probability shrinks when small m are excluded
    const double p_all =
        concentration_test(NoiseKind::Gaussian, 3, 0.5, 1, 256, 400, 7);
    const double p_late =
        concentration_test(NoiseKind::Gaussian, 3, 0.5, 64, 256, 400, 7);
    CHECK(p_late <= p_all + 1e-12);
    CHECK(p_all <= 1.0);
    CHECK_THROWS_AS(concentration_test(NoiseKind::Gaussian, 3, 0.5, 0, 8, 10, 1),
                    std::invalid_argument);
}

TEST_CASE("realised-error oracle minimises over the scan") {
    Eigen::VectorXd s(2), x(2);
    s << 0.9, 0.5;
    x << 1.0, -0.5;
    const DiagonalProblem dp = gen_diagonal(s, x);
    const ProjectedProblem pp =
        project_problem_svd(dp.problem, dp.system, 2, dp.problem.y_true);
    const std::vector<ProjectedProblem> ladder = {pp};
    const OracleResult res = empirical_oracle(ladder, dp.problem.x_true, 2000);
    CHECK(res.m == 2);
    // noiseless data: the error at the oracle index beats any probed k
    for (long long k : {0ll, 5ll, 50ll, 2000ll}) {
        const double e =
            (landweber_closed_form(pp, k) - dp.problem.x_true).norm();
        CHECK(res.error <= e + 1e-12);
    }
    CHECK(res.error <= 1e-3);  // large k drives a noiseless error to zero
    CHECK(res.k > 0);
}

TEST_CASE("oracle sees the projection error of small dimensions") {
    Eigen::VectorXd s(3), x(3);
    s << 0.9, 0.8, 0.7;
    x << 1.0, 1.0, 1.0;
    const DiagonalProblem dp = gen_diagonal(s, x);
    const ProjectedProblem small =
        project_problem_svd(dp.problem, dp.system, 1, dp.problem.y_true);
    const ProjectedProblem full =
        project_problem_svd(dp.problem, dp.system, 3, dp.problem.y_true);
    const OracleResult res =
        empirical_oracle({small, full}, dp.problem.x_true, 500);
    CHECK(res.m == 3);  // m = 1 cannot get below sqrt(2)
}

TEST_CASE("convexity probe accepts power-type index functions") {
    CHECK(phi_convexity_check(hoelder_source(1.0)));
    CHECK(phi_convexity_check(hoelder_source(0.5)));
}
