// SPDX-License-Identifier: Apache-2.0
#include "dadp/testproblems.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dadp {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

double phillips_theta(double u) {
    if (std::abs(u) >= 3.0) return 0.0;
    return 1.0 + std::cos(kPi * u / 3.0);
}

} // namespace

LinearProblem gen_phillips(int D) {
    if (D < 4) throw std::invalid_argument("phillips: D must be at least 4");
    const double a = -6.0, b = 6.0;
    const double h = (b - a) / D;
    Eigen::MatrixXd A(D, D);
    Eigen::VectorXd x(D);
    for (int i = 0; i < D; ++i) {
        const double si = a + (i + 0.5) * h;
        x(i) = std::sqrt(h) * phillips_theta(si);
        for (int j = 0; j < D; ++j) {
            const double tj = a + (j + 0.5) * h;
            A(i, j) = h * phillips_theta(si - tj);
        }
    }
    return make_problem(std::move(A), std::move(x));
}

LinearProblem gen_deriv2(int D) {
    if (D < 4) throw std::invalid_argument("deriv2: D must be at least 4");
    const double h = 1.0 / D;
    Eigen::MatrixXd A(D, D);
    Eigen::VectorXd x(D);
    for (int i = 0; i < D; ++i) {
        const double si = (i + 0.5) * h;
        x(i) = std::sqrt(h) * si;
        for (int j = 0; j < D; ++j) {
            const double tj = (j + 0.5) * h;
            // Green's function of the second derivative
            A(i, j) = h * (si < tj ? si * (tj - 1.0) : tj * (si - 1.0));
        }
    }
    return make_problem(std::move(A), std::move(x));
}

LinearProblem gen_gravity(int D, double depth) {
    if (D < 4) throw std::invalid_argument("gravity: D must be at least 4");
    if (depth <= 0.0) throw std::invalid_argument("gravity: depth must be positive");
    const double h = 1.0 / D;
    Eigen::MatrixXd A(D, D);
    Eigen::VectorXd x(D);
    for (int i = 0; i < D; ++i) {
        const double si = (i + 0.5) * h;
        x(i) = std::sqrt(h) * (std::sin(kPi * si) + 0.5 * std::sin(2.0 * kPi * si));
        for (int j = 0; j < D; ++j) {
            const double tj = (j + 0.5) * h;
            const double d2 = depth * depth + (si - tj) * (si - tj);
            A(i, j) = h * depth / (d2 * std::sqrt(d2));
        }
    }
    return make_problem(std::move(A), std::move(x));
}

LinearProblem gen_heat(int D, double kappa) {
    if (D < 4) throw std::invalid_argument("heat: D must be at least 4");
    if (kappa <= 0.0) throw std::invalid_argument("heat: parameter must be positive");
    const double h = 1.0 / D;
    auto kernel = [&](double u) {
        if (u <= 0.0) return 0.0;
        return std::pow(u, -1.5) / (2.0 * kappa * std::sqrt(kPi)) *
               std::exp(-1.0 / (4.0 * kappa * kappa * u));
    };
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(D, D);
    Eigen::VectorXd x(D);
    // piecewise ramp / plateau / decay profile, scaled like the others
    auto profile = [](double t) {
        if (t <= 0.25) return 4.0 * t;
        if (t <= 0.5) return 1.0;
        return 2.0 * (1.0 - t);
    };
    for (int i = 0; i < D; ++i) {
        const double ti = (i + 0.5) * h;
        x(i) = std::sqrt(h) * profile(ti);
        for (int j = 0; j <= i; ++j)
            A(i, j) = h * kernel(double(i - j) * h + h / 2.0);
    }
    return make_problem(std::move(A), std::move(x));
}

DiagonalProblem gen_diagonal(const Eigen::VectorXd& sigma,
                             const Eigen::VectorXd& x_true) {
    const int n = static_cast<int>(sigma.size());
    if (n == 0 || x_true.size() != n)
        throw std::invalid_argument("gen_diagonal: dimension mismatch");
    for (int j = 0; j < n; ++j) {
        if (sigma(j) <= 0.0) throw std::invalid_argument("gen_diagonal: sigma must be positive");
        if (j > 0 && sigma(j) > sigma(j - 1))
            throw std::invalid_argument("gen_diagonal: sigma must be non-increasing");
    }
    const double s = std::max(1.0, sigma(0));

    DiagonalProblem dp;
    dp.problem.A = (sigma / s).asDiagonal();
    dp.problem.x_true = x_true;
    dp.problem.y_true = (sigma / s).cwiseProduct(x_true);
    dp.problem.scale = s;
    dp.system.sigma = sigma / s;
    dp.system.U = Eigen::MatrixXd::Identity(n, n);
    dp.system.V = Eigen::MatrixXd::Identity(n, n);
    dp.system.rank = n;
    return dp;
}

CounterexampleProblem counterexample_problem(double sigma1, int N, int k,
                                             double tau) {
    if (sigma1 <= 0.0 || sigma1 >= 1.0)
        throw std::invalid_argument("counterexample: need 0 < sigma1 < 1");
    if (N < 3) throw std::invalid_argument("counterexample: N too small");
    Eigen::VectorXd sigma(N);
    sigma(0) = sigma1;
    sigma(1) = sigma1;
    for (int j = 3; j <= N; ++j) sigma(j - 1) = sigma1 / double(j - 1);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(N);
    x(0) = 1.0;
    // second coefficient 1/sqrt(2): dropping every coordinate past the first
    // then costs exactly 1/sqrt(2) in norm, the failure threshold
    x(1) = 1.0 / std::sqrt(2.0);

    CounterexampleProblem out;
    out.diag = gen_diagonal(sigma, x);
    const double log_fac = double(k) * std::log1p(-sigma1 * sigma1);
    out.delta = sigma1 / tau * std::exp(log_fac);
    if (out.delta <= 0.0 || !std::isfinite(out.delta))
        throw std::invalid_argument("counterexample: delta underflowed, k too large");
    return out;
}

DiscretisationLadder build_ladder(int D, ProjectionKind kind) {
    DiscretisationLadder lad;
    lad.kind = kind;
    if (kind == ProjectionKind::Averaging && !is_power_of_two(D))
        throw std::invalid_argument("averaging ladder needs a power-of-two D");
    for (int m = 2; m <= D; m *= 2) lad.dims.push_back(m);
    if (lad.dims.empty() || lad.dims.back() != D) lad.dims.push_back(D);
    return lad;
}

LinearProblem gen_named(const std::string& name, int D) {
    if (name == "phillips") return gen_phillips(D);
    if (name == "deriv2") return gen_deriv2(D);
    if (name == "gravity") return gen_gravity(D);
    if (name == "heat") return gen_heat(D);
    throw std::invalid_argument("unknown test problem: " + name);
}

} // namespace dadp
