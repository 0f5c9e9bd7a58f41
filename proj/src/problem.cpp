// SPDX-License-Identifier: Apache-2.0
#include "dadp/problem.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace dadp {

double spectral_norm_estimate(const Eigen::MatrixXd& A, double tol, int max_iter) {
    const int n = static_cast<int>(A.cols());
    Eigen::VectorXd v = Eigen::VectorXd::Ones(n) / std::sqrt(double(n));
    double lambda = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        Eigen::VectorXd w = A.transpose() * (A * v);
        double nrm = w.norm();
        if (nrm == 0.0) return 0.0;
        w /= nrm;
        double lambda_new = std::sqrt(nrm);
        if (std::abs(lambda_new - lambda) <= tol * std::max(1.0, lambda_new)) {
            return lambda_new;
        }
        lambda = lambda_new;
        v = w;
    }
    return lambda;
}

LinearProblem make_problem(Eigen::MatrixXd A, Eigen::VectorXd x_true) {
    if (!A.allFinite() || !x_true.allFinite())
        throw std::invalid_argument("make_problem: non-finite input");
    if (A.rows() != A.cols() || A.rows() != x_true.size())
        throw std::invalid_argument("make_problem: dimension mismatch");

    LinearProblem p;
    double s = spectral_norm_estimate(A);
    // slight safety margin so the norm bound holds despite estimation error
    s = std::max(1.0, s * (1.0 + 1e-7));
    p.A = A / s;
    p.x_true = std::move(x_true);
    p.y_true = p.A * p.x_true;
    p.scale = s;
    return p;
}

SingularSystem compute_svd(const Eigen::MatrixXd& A) {
    if (!A.allFinite())
        throw std::invalid_argument("compute_svd: non-finite input");
    Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();
    int r = 0;
    const double cut = sv.size() ? 1e-14 * sv(0) : 0.0;
    while (r < sv.size() && sv(r) > cut) ++r;

    SingularSystem sys;
    sys.sigma = sv.head(r);
    sys.U = svd.matrixU().leftCols(r);
    sys.V = svd.matrixV().leftCols(r);
    sys.rank = r;
    return sys;
}

AveragingProjection make_averaging_projection(int D, int m) {
    if (m <= 0 || D <= 0 || D % m != 0)
        throw std::invalid_argument("averaging projection: m must divide D");
    AveragingProjection p;
    p.D = D;
    p.m = m;
    p.block = D / m;
    p.scale = 1.0 / std::sqrt(double(p.block));
    return p;
}

Eigen::VectorXd AveragingProjection::apply(const Eigen::VectorXd& v) const {
    Eigen::VectorXd out(m);
    for (int i = 0; i < m; ++i)
        out(i) = scale * v.segment(i * block, block).sum();
    return out;
}

Eigen::VectorXd AveragingProjection::adjoint(const Eigen::VectorXd& w) const {
    Eigen::VectorXd out(D);
    for (int i = 0; i < m; ++i)
        out.segment(i * block, block).setConstant(scale * w(i));
    return out;
}

Eigen::MatrixXd AveragingProjection::apply_to_matrix(const Eigen::MatrixXd& A) const {
    Eigen::MatrixXd out(m, A.cols());
    for (int i = 0; i < m; ++i)
        out.row(i) = scale * A.middleRows(i * block, block).colwise().sum();
    return out;
}

Eigen::VectorXd svd_coefficients(const SingularSystem& sys,
                                 const Eigen::VectorXd& y, int m) {
    if (m > sys.rank)
        throw std::out_of_range("svd_coefficients: m exceeds rank");
    return sys.U.leftCols(m).transpose() * y;
}

} // namespace dadp
