// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <string>

namespace dadp {

// Flat binary matrix format: magic "AREG", u32 rows, u32 cols, then
// rows*cols little-endian f64 values in row-major order. Vectors are
// stored as n x 1 matrices.

void save_matrix(const std::string& path, const Eigen::MatrixXd& A);
Eigen::MatrixXd load_matrix(const std::string& path);

void save_vector(const std::string& path, const Eigen::VectorXd& v);
Eigen::VectorXd load_vector(const std::string& path);

/// Plain CSV (no header) for inspection.
void save_matrix_csv(const std::string& path, const Eigen::MatrixXd& A);

} // namespace dadp
