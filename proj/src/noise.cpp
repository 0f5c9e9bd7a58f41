// SPDX-License-Identifier: Apache-2.0
#include "dadp/noise.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace dadp {

namespace {

double uniform01(std::mt19937_64& rng) {
    // 53-bit mantissa uniform in [0, 1)
    return double(rng() >> 11) * 0x1.0p-53;
}

class GaussianStream {
public:
    explicit GaussianStream(std::mt19937_64& rng) : rng_(rng) {}

    double next() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform01(rng_);
        double u2 = uniform01(rng_);
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

private:
    std::mt19937_64& rng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace

Eigen::VectorXd sample_white_noise(NoiseKind kind, int student_df,
                                   std::uint64_t seed, int n) {
    std::mt19937_64 rng(seed);
    Eigen::VectorXd z(n);
    switch (kind) {
    case NoiseKind::Gaussian: {
        GaussianStream g(rng);
        for (int i = 0; i < n; ++i) z(i) = g.next();
        break;
    }
    case NoiseKind::Rademacher: {
        for (int i = 0; i < n; ++i) z(i) = (rng() & 1u) ? 1.0 : -1.0;
        break;
    }
    case NoiseKind::StudentT: {
        if (student_df <= 2)
            throw std::invalid_argument("StudentT noise needs df > 2");
        GaussianStream g(rng);
        const double norml = std::sqrt(double(student_df) / double(student_df - 2));
        for (int i = 0; i < n; ++i) {
            double num = g.next();
            double chi2 = 0.0;
            for (int j = 0; j < student_df; ++j) {
                double w = g.next();
                chi2 += w * w;
            }
            double t = num / std::sqrt(chi2 / double(student_df));
            z(i) = t / norml;
        }
        break;
    }
    }
    return z;
}

Eigen::VectorXd sample_noisy_data(const LinearProblem& p, const NoiseModel& noise) {
    if (noise.delta < 0.0)
        throw std::invalid_argument("noise level must be non-negative");
    if (noise.delta == 0.0) return p.y_true;
    Eigen::VectorXd z =
        sample_white_noise(noise.kind, noise.student_df, noise.seed, p.dim());
    return p.y_true + noise.delta * z;
}

} // namespace dadp
