// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "dadp/problem.hpp"

namespace dadp {

enum class NoiseKind { Gaussian, Rademacher, StudentT };

/// Unit-variance white noise description. Student-t samples are divided by
/// sqrt(df/(df-2)) so every kind has coordinate variance exactly 1.
struct NoiseModel {
    double delta = 0.0;
    NoiseKind kind = NoiseKind::Gaussian;
    int student_df = 3;  // must be > 2
    std::uint64_t seed = 0;
};

/// n i.i.d. unit-variance draws. The generator is hand-rolled (Box-Muller on
/// 53-bit uniforms from mt19937_64) so identical seeds reproduce identical
/// samples bit-for-bit.
Eigen::VectorXd sample_white_noise(NoiseKind kind, int student_df,
                                   std::uint64_t seed, int n);

/// y_delta = y_true + delta * z.
Eigen::VectorXd sample_noisy_data(const LinearProblem& p, const NoiseModel& noise);

} // namespace dadp
