// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dadp/testproblems.hpp"

using namespace dadp;

TEST_CASE("phillips: symmetric convolution matrix with order-one data") {
    const LinearProblem p = gen_phillips(64);
    CHECK((p.A - p.A.transpose()).norm() <= 1e-12 * p.A.norm());
    CHECK(p.y_true.norm() > 0.1);
    CHECK(p.y_true.norm() < 100.0);
    CHECK(spectral_norm_estimate(p.A) <= 1.0 + 1e-8);
    // solution vanishes where |s| >= 3 (outer quarter of the interval)
    CHECK(p.x_true.head(8).norm() == 0.0);
    CHECK(p.x_true.tail(8).norm() == 0.0);
    CHECK(p.x_true(32) > 0.0);
}

TEST_CASE("phillips: leading spectrum is stable under refinement") {
    const SingularSystem c = compute_svd(gen_phillips(32).A * gen_phillips(32).scale);
    const SingularSystem f = compute_svd(gen_phillips(64).A * gen_phillips(64).scale);
    for (int j = 0; j < 5; ++j)
        CHECK(c.sigma(j) == doctest::Approx(f.sigma(j)).epsilon(0.05));
}

TEST_CASE("second-derivative problem: symmetric negative kernel, polynomial decay") {
    const LinearProblem p = gen_deriv2(128);
    CHECK((p.A - p.A.transpose()).norm() <= 1e-12 * p.A.norm());
    for (int i = 0; i < 128; i += 13)
        for (int j = 0; j < 128; j += 13) CHECK(p.A(i, j) <= 0.0);
    const SingularSystem sys = compute_svd(p.A);
    // log-log slope of the singular values near -2
    const double slope = std::log(sys.sigma(40) / sys.sigma(5)) /
                         std::log(41.0 / 6.0);
    CHECK(slope > -2.3);
    CHECK(slope < -1.7);
}

TEST_CASE("gravity: positive Toeplitz kernel, severe ill-posedness") {
    const LinearProblem p = gen_gravity(256);
    for (int i = 0; i < 256; i += 31)
        for (int j = 0; j < 256; j += 31) CHECK(p.A(i, j) > 0.0);
    // convolution structure: entries depend on i - j only
    for (int i = 1; i < 250; i += 17)
        CHECK(p.A(i, i - 1) == doctest::Approx(p.A(i + 1, i)).epsilon(1e-12));
    const SingularSystem sys = compute_svd(p.A);
    CHECK(sys.sigma(29) / sys.sigma(0) <= 1e-6);  // rapid spectral decay
    CHECK_THROWS_AS(gen_gravity(64, -1.0), std::invalid_argument);
}

TEST_CASE("heat: causal lower-triangular operator") {
    const LinearProblem p = gen_heat(64);
    for (int i = 0; i < 64; ++i)
        for (int j = i + 1; j < 64; ++j) CHECK(p.A(i, j) == 0.0);
    for (int i = 0; i < 64; ++i) CHECK(p.A(i, i) >= 0.0);
    CHECK(p.y_true.norm() > 1e-3);
    CHECK(spectral_norm_estimate(p.A) <= 1.0 + 1e-8);
}

TEST_CASE("diagonal generator checks its arguments") {
    Eigen::VectorXd s(3), x(3);
    s << 0.9, 0.5, 0.1;
    x << 1.0, 2.0, 3.0;
    const DiagonalProblem dp = gen_diagonal(s, x);
    CHECK(dp.system.rank == 3);
    CHECK(dp.problem.scale == 1.0);  // sigma_1 < 1 needs no rescale
    CHECK((dp.problem.A * x - dp.problem.y_true).norm() <= 1e-15);

    Eigen::VectorXd bad(3);
    bad << 0.5, 0.9, 0.1;  // not non-increasing
    CHECK_THROWS_AS(gen_diagonal(bad, x), std::invalid_argument);
    bad << 0.9, 0.5, -0.1;
    CHECK_THROWS_AS(gen_diagonal(bad, x), std::invalid_argument);

    // sigma_1 > 1 triggers the rescale and records the factor
    Eigen::VectorXd big(2), xb(2);
    big << 2.0, 1.0;
    xb << 1.0, 1.0;
    const DiagonalProblem dpb = gen_diagonal(big, xb);
    CHECK(dpb.problem.scale == doctest::Approx(2.0));
    CHECK(dpb.system.sigma(0) == doctest::Approx(1.0));
}

TEST_CASE("adversarial configuration realises its design identities") {
    const double sigma1 = 0.45, tau = 1.5;
    const int k = 50;
    const CounterexampleProblem ce = counterexample_problem(sigma1, 8, k, tau);
    // repeated leading singular value, harmonic tail
    CHECK(ce.diag.system.sigma(0) == doctest::Approx(sigma1));
    CHECK(ce.diag.system.sigma(1) == doctest::Approx(sigma1));
    CHECK(ce.diag.system.sigma(2) == doctest::Approx(sigma1 / 2.0));
    CHECK(ce.diag.system.sigma(7) == doctest::Approx(sigma1 / 7.0));
    // solution e_1 + e_2/sqrt(2)
    CHECK(ce.diag.problem.x_true(0) == 1.0);
    CHECK(ce.diag.problem.x_true(1) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(ce.diag.problem.x_true.tail(6).norm() == 0.0);
    // noise level: the left endpoint of the admissible bracket
    const double expect = sigma1 / tau * std::pow(1.0 - sigma1 * sigma1, k);
    CHECK(ce.delta == doctest::Approx(expect).epsilon(1e-12));
    const double lhs = tau * tau * ce.delta * ce.delta;
    const double mid = std::pow(1.0 - sigma1 * sigma1, 2.0 * k) * sigma1 * sigma1;
    CHECK(lhs == doctest::Approx(mid).epsilon(1e-10));
    CHECK(mid <= 4.0 / 3.0 * lhs * (1.0 + 1e-12));

    CHECK_THROWS_AS(counterexample_problem(1.5, 8, 10, tau), std::invalid_argument);
    CHECK_THROWS_AS(counterexample_problem(0.9, 2, 10, tau), std::invalid_argument);
    // extreme k underflows delta and must be rejected, not silently zeroed
    CHECK_THROWS_AS(counterexample_problem(0.9, 8, 5000000, tau),
                    std::invalid_argument);
}

TEST_CASE("dyadic ladder construction") {
    const DiscretisationLadder lad = build_ladder(64, ProjectionKind::Averaging);
    CHECK(lad.dims == std::vector<int>({2, 4, 8, 16, 32, 64}));
    CHECK_THROWS_AS(build_ladder(48, ProjectionKind::Averaging),
                    std::invalid_argument);
    // the spectral ladder tops up with D itself when D is not a power of two
    const DiscretisationLadder sv = build_ladder(48, ProjectionKind::Svd);
    CHECK(sv.dims.back() == 48);
    CHECK(sv.dims[0] == 2);
    for (size_t i = 1; i < sv.dims.size(); ++i)
        CHECK(sv.dims[i] > sv.dims[i - 1]);
}

TEST_CASE("named lookup covers the four generators") {
    for (const char* name : {"phillips", "deriv2", "gravity", "heat"}) {
        const LinearProblem p = gen_named(name, 16);
        CHECK(p.dim() == 16);
    }
    CHECK_THROWS_AS(gen_named("shaw", 16), std::invalid_argument);
    CHECK_THROWS_AS(gen_phillips(2), std::invalid_argument);
}
