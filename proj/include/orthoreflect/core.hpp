// Copyright 2026 The orthoreflect Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace orthoreflect {

using Vector = std::vector<double>;

enum class ErrorCode {
    InvalidArgument,
    NonSquare,
    NegativeEntry,
    NonzeroDiagonal,
    NoConvergence,
    NumericalBreakdown,
    DimensionError,
    InvalidPath,
    ConfigError,
    IoError,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code)
    {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Small dense column-major matrix. Sizes here are tiny (n <= ~20, LP
/// tableaus of a few dozen columns), so there is no expression machinery.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill)
    {}
    /// Row-wise literal: Matrix{{0, 2}, {2, 0}}. Ragged rows throw.
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[j * rows_ + i]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[j * rows_ + i]; }

    std::span<double> column(std::size_t j) { return {data_.data() + j * rows_, rows_}; }
    std::span<const double> column(std::size_t j) const
    {
        return {data_.data() + j * rows_, rows_};
    }

    Vector multiply(std::span<const double> x) const;
    /// Returns x^T * this, i.e. the row vector of column dot products.
    Vector left_multiply(std::span<const double> x) const;

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Non-negative routing matrix with zero diagonal. Only constructible through
/// validate_reflection_matrix, so every instance satisfies the invariants.
class ReflectionMatrix {
public:
    std::size_t size() const noexcept { return q_.rows(); }
    double operator()(std::size_t i, std::size_t j) const { return q_(i, j); }
    const Matrix& matrix() const noexcept { return q_; }

    /// I - Q, built on demand.
    Matrix identity_minus() const;

    /// Two-firm matrix with q12 = q21 = q.
    static ReflectionMatrix symmetric_pair(double q);

private:
    friend ReflectionMatrix validate_reflection_matrix(const Matrix& q);
    explicit ReflectionMatrix(Matrix q) : q_(std::move(q)) {}

    Matrix q_;
};

ReflectionMatrix validate_reflection_matrix(const Matrix& q);

struct SpectralRadiusOptions {
    double tol = 1e-10;
    std::size_t max_iter = 100000;
};

/// Perron root of Q. Each strongly connected block is handled by power
/// iteration on I + Q_block, which is primitive, and stopped once the
/// Collatz-Wielandt bounds min_i (Mv)_i/v_i <= rho <= max_i (Mv)_i/v_i are
/// within tol. Throws NoConvergence when max_iter is reached first.
double spectral_radius(const ReflectionMatrix& q, SpectralRadiusOptions opts = {});

/// (a)_- = max(0, -a).
inline double negative_part(double a) noexcept { return a < 0.0 ? -a : 0.0; }

/// A jump of the driving process: time and the vector Delta Z.
struct JumpEvent {
    double t = 0.0;
    Vector dz;
};

/// Validates a JumpEvent against dimension n: t >= 0, finite, non-zero dz.
void check_jump_event(const JumpEvent& ev, std::size_t n);

bool all_finite(std::span<const double> v) noexcept;
bool all_nonnegative(std::span<const double> v) noexcept;
double sup_norm(std::span<const double> v) noexcept;
double dot(std::span<const double> a, std::span<const double> b);

}  // namespace orthoreflect
