// SPDX-License-Identifier: Apache-2.0
#include "dadp/regularizers.hpp"

#include <cmath>
#include <stdexcept>

namespace dadp {

ProjectedOperator make_projected_operator(const LinearProblem& p,
                                          const AveragingProjection& proj) {
    if (proj.D != p.dim())
        throw std::invalid_argument("projection dimension mismatch");
    ProjectedOperator op;
    op.m = proj.m;
    op.D = p.dim();
    op.svd_kind = false;
    op.proj = proj;
    op.B = proj.apply_to_matrix(p.A);
    SingularSystem sys = compute_svd(op.B);
    op.s = sys.sigma;
    op.U = sys.U;
    op.V = sys.V;
    return op;
}

ProjectedOperator make_projected_operator_svd(const LinearProblem& p,
                                              const SingularSystem& sys, int m) {
    if (m > sys.rank)
        throw std::out_of_range("make_projected_operator_svd: m exceeds rank");
    ProjectedOperator op;
    op.m = m;
    op.D = p.dim();
    op.svd_kind = true;
    op.s = sys.sigma.head(m);
    op.U = sys.U.leftCols(m);  // coefficient map onto the first m singular vectors
    op.V = sys.V.leftCols(m);
    return op;
}

ProjectedProblem attach_data(const ProjectedOperator& op,
                             const Eigen::VectorXd& y_delta) {
    ProjectedProblem pp;
    pp.m = op.m;
    pp.D = op.D;
    pp.s = op.s;
    pp.V = op.V;
    if (op.svd_kind) {
        pp.b = op.U.transpose() * y_delta;
        pp.c = pp.b;     // data lies in the span of the retained u_j
        pp.orth2 = 0.0;
    } else {
        pp.B = op.B;
        pp.b = op.proj.apply(y_delta);
        pp.c = op.U.transpose() * pp.b;
        pp.orth2 = std::max(0.0, pp.b.squaredNorm() - pp.c.squaredNorm());
    }
    return pp;
}

ProjectedProblem project_problem(const LinearProblem& p,
                                 const AveragingProjection& proj,
                                 const Eigen::VectorXd& y_delta) {
    return attach_data(make_projected_operator(p, proj), y_delta);
}

ProjectedProblem project_problem_svd(const LinearProblem& p,
                                     const SingularSystem& sys, int m,
                                     const Eigen::VectorXd& y_delta) {
    return attach_data(make_projected_operator_svd(p, sys, m), y_delta);
}

double landweber_filter(double sigma2, long long k) {
    if (k <= 0) return 0.0;
    if (sigma2 >= 1.0) return 1.0;
    return -std::expm1(double(k) * std::log1p(-sigma2));
}

double landweber_residual_factor(double sigma2, long long k) {
    if (k <= 0) return 1.0;
    if (sigma2 >= 1.0) return 0.0;
    const double e = 2.0 * double(k) * std::log1p(-sigma2);
    return std::exp(e);
}

LandweberState landweber_init(const ProjectedProblem& pp) {
    LandweberState st;
    st.x = Eigen::VectorXd::Zero(pp.D);
    st.k = 0;
    st.residual = pp.b.norm();
    st.flops = 0.0;
    return st;
}

LandweberState landweber_step(const ProjectedProblem& pp, const LandweberState& st) {
    if (pp.B.size() == 0)
        throw std::invalid_argument("landweber_step needs the explicit operator");
    LandweberState next;
    Eigen::VectorXd r = pp.b - pp.B * st.x;
    next.x = st.x + pp.B.transpose() * r;
    next.k = st.k + 1;
    next.residual = (pp.b - pp.B * next.x).norm();
    next.flops = st.flops + 2.0 * double(pp.m) * double(pp.D);
    return next;
}

Eigen::VectorXd landweber_closed_form(const ProjectedProblem& pp, long long k) {
    const int r = static_cast<int>(pp.s.size());
    Eigen::VectorXd f(r);
    for (int j = 0; j < r; ++j)
        f(j) = landweber_filter(pp.s(j) * pp.s(j), k) / pp.s(j) * pp.c(j);
    return pp.V * f;
}

double landweber_residual(const ProjectedProblem& pp, long long k) {
    double acc = pp.orth2;
    for (int j = 0; j < pp.s.size(); ++j)
        acc += landweber_residual_factor(pp.s(j) * pp.s(j), k) * pp.c(j) * pp.c(j);
    return std::sqrt(acc);
}

Eigen::VectorXd tikhonov_solve(const ProjectedProblem& pp, double alpha) {
    if (alpha <= 0.0)
        throw std::invalid_argument("tikhonov_solve: alpha must be positive");
    const int r = static_cast<int>(pp.s.size());
    Eigen::VectorXd f(r);
    for (int j = 0; j < r; ++j)
        f(j) = pp.s(j) / (alpha + pp.s(j) * pp.s(j)) * pp.c(j);
    return pp.V * f;
}

double tikhonov_residual(const ProjectedProblem& pp, double alpha) {
    if (alpha <= 0.0)
        throw std::invalid_argument("tikhonov_residual: alpha must be positive");
    double acc = pp.orth2;
    for (int j = 0; j < pp.s.size(); ++j) {
        const double g = alpha / (alpha + pp.s(j) * pp.s(j));
        acc += g * g * pp.c(j) * pp.c(j);
    }
    return std::sqrt(acc);
}

Eigen::VectorXd spectral_cutoff(const SingularSystem& sys,
                                const Eigen::VectorXd& y, int k) {
    if (k > sys.rank)
        throw std::out_of_range("spectral_cutoff: k exceeds rank");
    Eigen::VectorXd x = Eigen::VectorXd::Zero(sys.V.rows());
    for (int j = 0; j < k; ++j)
        x += sys.U.col(j).dot(y) / sys.sigma(j) * sys.V.col(j);
    return x;
}

} // namespace dadp
