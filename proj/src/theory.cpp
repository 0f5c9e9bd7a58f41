// SPDX-License-Identifier: Apache-2.0
#include "dadp/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dadp {

double SourceCondition::phi(double t) const {
    if (t <= 0.0) return 0.0;
    switch (kind) {
    case Kind::Hoelder:
        return std::pow(t, param / 2.0);
    case Kind::Logarithmic:
        // diverges as t -> 1-, clipped at the value attained for -log t = 1e-12
        if (t >= 1.0) return std::pow(1e-12, -param / 2.0);
        return std::pow(-std::log(t), -param / 2.0);
    case Kind::Tabulated: {
        if (grid_lambda.empty()) throw std::logic_error("empty tabulated source");
        if (t <= grid_lambda.front())
            return grid_phi.front() * t / grid_lambda.front();
        if (t >= grid_lambda.back()) return grid_phi.back();
        auto it = std::lower_bound(grid_lambda.begin(), grid_lambda.end(), t);
        size_t i = size_t(it - grid_lambda.begin());
        double t0 = grid_lambda[i - 1], t1 = grid_lambda[i];
        double w = (t - t0) / (t1 - t0);
        return grid_phi[i - 1] * (1.0 - w) + grid_phi[i] * w;
    }
    }
    return 0.0;
}

SourceCondition hoelder_source(double nu, double rho) {
    if (nu <= 0.0) throw std::invalid_argument("nu must be positive");
    SourceCondition s;
    s.kind = SourceCondition::Kind::Hoelder;
    s.param = nu;
    s.rho = rho;
    return s;
}

SourceCondition logarithmic_source(double p, double rho) {
    if (p <= 0.0) throw std::invalid_argument("p must be positive");
    SourceCondition s;
    s.kind = SourceCondition::Kind::Logarithmic;
    s.param = p;
    s.rho = rho;
    return s;
}

IllPosednessProfile polynomial_profile(double q, int n) {
    if (q <= 0.0 || n < 1) throw std::invalid_argument("bad polynomial profile");
    IllPosednessProfile prof;
    prof.sigma2.resize(n);
    for (int j = 1; j <= n; ++j) prof.sigma2[j - 1] = std::pow(double(j), -q);
    return prof;
}

IllPosednessProfile exponential_profile(double a, int n) {
    if (a <= 0.0 || n < 1) throw std::invalid_argument("bad exponential profile");
    IllPosednessProfile prof;
    prof.sigma2.resize(n);
    for (int j = 1; j <= n; ++j) prof.sigma2[j - 1] = std::exp(-a * j);
    return prof;
}

IllPosednessProfile profile_from_svd(const SingularSystem& sys) {
    IllPosednessProfile prof;
    prof.sigma2.resize(sys.rank);
    for (int j = 0; j < sys.rank; ++j) prof.sigma2[j] = sys.sigma(j) * sys.sigma(j);
    return prof;
}

double sigma_interp(const IllPosednessProfile& prof, double x) {
    const int n = prof.size();
    if (x < 1.0 || x > double(n))
        throw std::out_of_range("sigma_interp: x outside realised range");
    const double fl = std::floor(x);
    const int i = int(fl);
    if (double(i) == x || i == n) return prof.sigma2[i - 1];
    const double t = x - fl;
    return std::pow(prof.sigma2[i - 1], 1.0 - t) * std::pow(prof.sigma2[i], t);
}

double x_alpha(const IllPosednessProfile& prof, double alpha) {
    const int n = prof.size();
    if (alpha > prof.sigma2[0] || alpha < prof.sigma2[n - 1])
        throw std::out_of_range("x_alpha: alpha outside realised range");
    if (alpha == prof.sigma2[0]) return 1.0;
    // smallest node index j (1-based) with sigma2[j+1] <= alpha <= sigma2[j]
    int j = 1;
    while (j < n && prof.sigma2[j] > alpha) ++j;
    // now sigma2[j-1] (node j) >= alpha >= sigma2[j] (node j+1)
    const double s0 = prof.sigma2[j - 1];
    const double s1 = prof.sigma2[j];
    if (alpha >= s0) return double(j);
    if (s0 == s1) return double(j);
    const double t = std::log(alpha / s0) / std::log(s1 / s0);
    return double(j) + t;
}

double theta(const IllPosednessProfile& prof, const SourceCondition& src,
             double alpha) {
    const double p = src.phi(alpha);
    return alpha * p * p / x_alpha(prof, alpha);
}

double theta_inverse(const IllPosednessProfile& prof, const SourceCondition& src,
                     double t) {
    const int n = prof.size();
    double lo = prof.sigma2[n - 1];
    double hi = prof.sigma2[0];
    if (t > theta(prof, src, hi) * (1.0 + 1e-12) || t < theta(prof, src, lo) * (1.0 - 1e-12))
        throw std::out_of_range("theta_inverse: t outside range");
    for (int it = 0; it < 200 && (hi - lo) > 1e-13 * lo; ++it) {
        const double mid = std::sqrt(lo * hi);  // bisect in log(alpha)
        if (theta(prof, src, mid) < t)
            lo = mid;
        else
            hi = mid;
    }
    return std::sqrt(lo * hi);
}

int optimal_dimension_m_star(const IllPosednessProfile& prof,
                             const SourceCondition& src, double delta,
                             double rho) {
    const double t = delta * delta / (rho * rho);
    const double alpha_star = theta_inverse(prof, src, t);
    const double x = x_alpha(prof, alpha_star);
    const int m_star = int(std::ceil(x - 1e-12));

    // balance inequalities at the bracketing nodes
    auto lhs = [&](int m) {
        const double s2 = prof.sigma2[m - 1];
        const double p = src.phi(s2);
        return s2 * p * p * rho * rho;
    };
    const int m_lo = std::max(1, int(std::floor(x + 1e-12)));
    if (lhs(m_lo) < double(m_lo) * delta * delta * (1.0 - 1e-9))
        throw std::logic_error("balance inequality violated below m_star");
    const int m_hi = m_star + 1;
    if (m_hi <= prof.size() &&
        lhs(m_hi) > double(m_hi) * delta * delta * (1.0 + 1e-9))
        throw std::logic_error("balance inequality violated above m_star");
    return m_star;
}

Remark1Bound remark1_bound(const IllPosednessProfile& prof,
                           const SourceCondition& src, double delta, double rho) {
    Remark1Bound out;
    const int n = prof.size();
    const double d2 = delta * delta;
    const double r2 = rho * rho;

    double series = 0.0;  // delta^2 * sum_{j<=l} 1/sigma_j^2
    int l = 0;
    double prev_series = 0.0;
    for (int j = 1; j <= n - 1; ++j) {
        prev_series = series;
        series += d2 / prof.sigma2[j - 1];
        const double p = src.phi(prof.sigma2[j]);
        if (series >= p * p * r2) {
            l = j;
            break;
        }
    }
    if (l == 0) {
        out.exhausted = true;
        out.l_star = n - 1;
        const double p = src.phi(prof.sigma2[n - 1]);
        out.bound = std::sqrt(series + p * p * r2);
    } else {
        out.l_star = l;
        const double p_l1 = src.phi(prof.sigma2[l]);       // sigma_{l+1}^2
        const double p_l = src.phi(prof.sigma2[l - 1]);    // sigma_l^2
        const double term_a = series + p_l1 * p_l1 * r2;
        const double term_b = prev_series + p_l * p_l * r2;
        out.bound = std::sqrt(std::min(term_a, term_b));
    }
    out.rate_approx = rho * src.phi(theta_inverse(prof, src, d2 / r2));
    return out;
}

namespace {

std::vector<double> log_lambda_grid(double lambda_min, int per_decade) {
    const int decades = int(std::ceil(-std::log10(lambda_min)));
    long long total = (long long)per_decade * decades;
    total = std::min<long long>(total, 1000000);
    std::vector<double> g;
    g.reserve(size_t(total) + 1);
    const double step = std::log(1.0 / lambda_min) / double(total);
    for (long long i = 0; i <= total; ++i)
        g.push_back(lambda_min * std::exp(step * double(i)));
    g.back() = 1.0;
    return g;
}

} // namespace

QualificationReport qualification_check(const SourceCondition& src,
                                        const std::vector<long long>& k_grid,
                                        int grid_points_per_decade,
                                        double lambda_min) {
    QualificationReport rep;
    const auto grid = log_lambda_grid(lambda_min, grid_points_per_decade);
    for (long long k : k_grid) {
        double sup = 0.0, sup_sqrt = 0.0;
        for (double lam : grid) {
            const double damp = landweber_residual_factor(lam, k);  // (1-lam)^(2k)
            const double w = std::sqrt(damp);                        // (1-lam)^k
            const double p = src.phi(lam);
            sup = std::max(sup, w * p);
            sup_sqrt = std::max(sup_sqrt, w * std::sqrt(lam) * p);
        }
        const double inv_k = 1.0 / double(k);
        const double rhs = src.phi(inv_k);
        const double rhs_sqrt = std::sqrt(inv_k) * src.phi(inv_k);
        rep.margins.push_back(rhs - sup);
        rep.margins_sqrt.push_back(rhs_sqrt - sup_sqrt);
        if (sup > rhs * (1.0 + 1e-12) || sup_sqrt > rhs_sqrt * (1.0 + 1e-12))
            rep.holds = false;
    }
    return rep;
}

QualificationReport tikhonov_qualification_check(
    const SourceCondition& src, const std::vector<double>& alpha_grid,
    int grid_points_per_decade, double lambda_min) {
    QualificationReport rep;
    const auto grid = log_lambda_grid(lambda_min, grid_points_per_decade);
    for (double a : alpha_grid) {
        double sup = 0.0, sup_sqrt = 0.0;
        for (double lam : grid) {
            const double w = a / (a + lam);
            const double p = src.phi(lam);
            sup = std::max(sup, w * p);
            sup_sqrt = std::max(sup_sqrt, w * std::sqrt(lam) * p);
        }
        const double rhs = src.phi(a);
        const double rhs_sqrt = std::sqrt(a) * src.phi(a);
        rep.margins.push_back(rhs - sup);
        rep.margins_sqrt.push_back(rhs_sqrt - sup_sqrt);
        if (sup > rhs * (1.0 + 1e-12) || sup_sqrt > rhs_sqrt * (1.0 + 1e-12))
            rep.holds = false;
    }
    return rep;
}

double concentration_test(NoiseKind kind, int student_df, double eps,
                          int kappa, int horizon, int n_runs,
                          std::uint64_t seed) {
    if (kappa < 1) throw std::invalid_argument("kappa must be at least 1");
    int exceed = 0;
    for (int run = 0; run < n_runs; ++run) {
        Eigen::VectorXd z =
            sample_white_noise(kind, student_df, seed + std::uint64_t(run), horizon);
        double acc = 0.0;
        bool hit = false;
        for (int m = 1; m <= horizon; ++m) {
            acc += z(m - 1) * z(m - 1);
            if (m >= kappa && std::abs(acc - double(m)) >= eps * double(m)) {
                hit = true;
                break;
            }
        }
        if (hit) ++exceed;
    }
    return double(exceed) / double(n_runs);
}

OracleResult empirical_oracle(const std::vector<ProjectedProblem>& ladder,
                              const Eigen::VectorXd& x_true, long long k_max) {
    OracleResult best;
    best.error = std::numeric_limits<double>::infinity();
    const double xt2 = x_true.squaredNorm();
    for (const auto& pp : ladder) {
        const int r = static_cast<int>(pp.s.size());
        Eigen::VectorXd d = pp.V.transpose() * x_true;  // target coefficients
        const double off = std::max(0.0, xt2 - d.squaredNorm());
        auto err_at = [&](long long k) {
            double e2 = off;
            for (int j = 0; j < r; ++j) {
                const double f =
                    landweber_filter(pp.s(j) * pp.s(j), k) / pp.s(j) * pp.c(j);
                const double diff = f - d(j);
                e2 += diff * diff;
            }
            return std::sqrt(e2);
        };
        long long k = 0;
        while (k <= k_max) {
            const double e = err_at(k);
            if (e < best.error) {
                best.error = e;
                best.k = k;
                best.m = pp.m;
            }
            // dense scan early, geometric beyond 10^4
            if (k < 10000)
                ++k;
            else
                k = std::max(k + 1, (long long)(double(k) * 1.01));
        }
    }
    return best;
}

bool phi_convexity_check(const SourceCondition& src, int grid_n, double tol) {
    // phi2inv by bisection on (0, 1]
    auto phi2 = [&](double t) {
        const double p = src.phi(t);
        return p * p;
    };
    const double top = phi2(1.0);
    auto phi2inv = [&](double y) {
        double lo = 1e-300, hi = 1.0;
        for (int i = 0; i < 200 && (hi - lo) > 1e-15 * hi; ++i) {
            const double mid = std::sqrt(lo * hi);
            if (phi2(mid) < y)
                lo = mid;
            else
                hi = mid;
        }
        return std::sqrt(lo * hi);
    };
    std::vector<double> vals(grid_n);
    for (int i = 0; i < grid_n; ++i) {
        const double lam = top * double(i + 1) / double(grid_n);
        vals[i] = lam * phi2inv(lam);
    }
    for (int i = 1; i + 1 < grid_n; ++i) {
        const double dd = vals[i + 1] - 2.0 * vals[i] + vals[i - 1];
        if (dd < -tol) return false;
    }
    return true;
}

} // namespace dadp
