// SPDX-License-Identifier: Apache-2.0
#include "dadp/io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

static_assert(std::endian::native == std::endian::little,
              "binary format assumes a little-endian host");

namespace dadp {

namespace {
constexpr char kMagic[4] = {'A', 'R', 'E', 'G'};
}

void save_matrix(const std::string& path, const Eigen::MatrixXd& A) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f.write(kMagic, 4);
    std::uint32_t rows = static_cast<std::uint32_t>(A.rows());
    std::uint32_t cols = static_cast<std::uint32_t>(A.cols());
    f.write(reinterpret_cast<const char*>(&rows), 4);
    f.write(reinterpret_cast<const char*>(&cols), 4);
    for (std::uint32_t i = 0; i < rows; ++i)
        for (std::uint32_t j = 0; j < cols; ++j) {
            double v = A(i, j);
            f.write(reinterpret_cast<const char*>(&v), 8);
        }
    if (!f) throw std::runtime_error("write failed: " + path);
}

Eigen::MatrixXd load_matrix(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open: " + path);
    char magic[4];
    f.read(magic, 4);
    if (!f || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("bad magic in " + path);
    std::uint32_t rows = 0, cols = 0;
    f.read(reinterpret_cast<char*>(&rows), 4);
    f.read(reinterpret_cast<char*>(&cols), 4);
    Eigen::MatrixXd A(rows, cols);
    for (std::uint32_t i = 0; i < rows; ++i)
        for (std::uint32_t j = 0; j < cols; ++j) {
            double v;
            f.read(reinterpret_cast<char*>(&v), 8);
            A(i, j) = v;
        }
    if (!f) throw std::runtime_error("truncated file: " + path);
    return A;
}

void save_vector(const std::string& path, const Eigen::VectorXd& v) {
    save_matrix(path, v);
}

Eigen::VectorXd load_vector(const std::string& path) {
    Eigen::MatrixXd A = load_matrix(path);
    if (A.cols() != 1) throw std::runtime_error("not a vector: " + path);
    return A.col(0);
}

void save_matrix_csv(const std::string& path, const Eigen::MatrixXd& A) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f.precision(17);
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        for (Eigen::Index j = 0; j < A.cols(); ++j) {
            if (j) f << ',';
            f << A(i, j);
        }
        f << '\n';
    }
}

} // namespace dadp
