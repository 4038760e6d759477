// Copyright 2026 The orthoreflect Authors.
// SPDX-License-Identifier: Apache-2.0

#include "orthoreflect/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace orthoreflect {

const char* to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::NonzeroDiagonal: return "NonzeroDiagonal";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NumericalBreakdown: return "NumericalBreakdown";
    case ErrorCode::DimensionError: return "DimensionError";
    case ErrorCode::InvalidPath: return "InvalidPath";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size())
{
    data_.assign(rows_ * cols_, 0.0);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != cols_) {
            throw Error(ErrorCode::InvalidArgument, "ragged matrix literal");
        }
        std::size_t j = 0;
        for (double v : row) {
            (*this)(i, j++) = v;
        }
        ++i;
    }
}

Matrix Matrix::identity(std::size_t n)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

Vector Matrix::multiply(std::span<const double> x) const
{
    if (x.size() != cols_) {
        throw Error(ErrorCode::DimensionError, "matrix-vector size mismatch");
    }
    Vector out(rows_, 0.0);
    for (std::size_t j = 0; j < cols_; ++j) {
        const double xj = x[j];
        if (xj == 0.0) {
            continue;
        }
        const auto col = column(j);
        for (std::size_t i = 0; i < rows_; ++i) {
            out[i] += col[i] * xj;
        }
    }
    return out;
}

Vector Matrix::left_multiply(std::span<const double> x) const
{
    if (x.size() != rows_) {
        throw Error(ErrorCode::DimensionError, "vector-matrix size mismatch");
    }
    Vector out(cols_, 0.0);
    for (std::size_t j = 0; j < cols_; ++j) {
        out[j] = dot(x, column(j));
    }
    return out;
}

Matrix ReflectionMatrix::identity_minus() const
{
    const std::size_t n = size();
    Matrix m(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            m(i, j) = (i == j ? 1.0 : 0.0) - q_(i, j);
        }
    }
    return m;
}

ReflectionMatrix ReflectionMatrix::symmetric_pair(double q)
{
    return validate_reflection_matrix(Matrix{{0.0, q}, {q, 0.0}});
}

ReflectionMatrix validate_reflection_matrix(const Matrix& q)
{
    if (q.rows() != q.cols()) {
        std::ostringstream os;
        os << "reflection matrix must be square, got " << q.rows() << "x" << q.cols();
        throw Error(ErrorCode::NonSquare, os.str());
    }
    if (q.rows() == 0) {
        throw Error(ErrorCode::InvalidArgument, "reflection matrix must have n >= 1");
    }
    for (std::size_t i = 0; i < q.rows(); ++i) {
        for (std::size_t j = 0; j < q.cols(); ++j) {
            const double v = q(i, j);
            std::ostringstream os;
            if (!std::isfinite(v)) {
                os << "q(" << i << "," << j << ") is not finite";
                throw Error(ErrorCode::InvalidArgument, os.str());
            }
            if (v < 0.0) {
                os << "q(" << i << "," << j << ") = " << v << " is negative";
                throw Error(ErrorCode::NegativeEntry, os.str());
            }
            if (i == j && v != 0.0) {
                os << "q(" << i << "," << i << ") = " << v << " must be zero";
                throw Error(ErrorCode::NonzeroDiagonal, os.str());
            }
        }
    }
    return ReflectionMatrix(q);
}

namespace {

// Strongly connected components of the graph i -> j iff q(i,j) > 0, via
// transitive closure (n is small).
std::vector<std::vector<std::size_t>> strong_components(const ReflectionMatrix& q)
{
    const std::size_t n = q.size();
    std::vector<char> reach(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        reach[i * n + i] = 1;
        for (std::size_t j = 0; j < n; ++j) {
            if (q(i, j) > 0.0) {
                reach[i * n + j] = 1;
            }
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            if (!reach[i * n + k]) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                reach[i * n + j] |= reach[k * n + j];
            }
        }
    }
    std::vector<std::vector<std::size_t>> comps;
    std::vector<char> seen(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (seen[i]) {
            continue;
        }
        std::vector<std::size_t> comp;
        for (std::size_t j = 0; j < n; ++j) {
            if (reach[i * n + j] && reach[j * n + i]) {
                comp.push_back(j);
                seen[j] = 1;
            }
        }
        comps.push_back(std::move(comp));
    }
    return comps;
}

double block_radius(const ReflectionMatrix& q, const std::vector<std::size_t>& idx,
                    const SpectralRadiusOptions& opts)
{
    const std::size_t m = idx.size();
    if (m == 1) {
        return 0.0;
    }
    Vector v(m, 1.0);
    Vector w(m);
    for (std::size_t it = 0; it < opts.max_iter; ++it) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = 0.0;
        for (std::size_t a = 0; a < m; ++a) {
            double s = v[a];
            for (std::size_t b = 0; b < m; ++b) {
                s += q(idx[a], idx[b]) * v[b];
            }
            w[a] = s;
            lo = std::min(lo, s / v[a]);
            hi = std::max(hi, s / v[a]);
        }
        if (hi - lo <= opts.tol) {
            return 0.5 * (lo + hi) - 1.0;
        }
        const double scale = *std::max_element(w.begin(), w.end());
        for (std::size_t a = 0; a < m; ++a) {
            v[a] = w[a] / scale;
        }
    }
    throw Error(ErrorCode::NoConvergence,
                "spectral_radius: power iteration did not converge within max_iter");
}

}  // namespace

double spectral_radius(const ReflectionMatrix& q, SpectralRadiusOptions opts)
{
    if (!(opts.tol > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "spectral_radius: tol must be positive");
    }
    double rho = 0.0;
    for (const auto& comp : strong_components(q)) {
        rho = std::max(rho, block_radius(q, comp, opts));
    }
    return std::max(rho, 0.0);
}

void check_jump_event(const JumpEvent& ev, std::size_t n)
{
    if (!std::isfinite(ev.t) || ev.t < 0.0) {
        throw Error(ErrorCode::InvalidPath, "jump event time must be finite and >= 0");
    }
    if (ev.dz.size() != n) {
        throw Error(ErrorCode::DimensionError, "jump event dimension mismatch");
    }
    if (!all_finite(ev.dz)) {
        throw Error(ErrorCode::InvalidPath, "jump event has non-finite entries");
    }
    if (std::all_of(ev.dz.begin(), ev.dz.end(), [](double d) { return d == 0.0; })) {
        throw Error(ErrorCode::InvalidPath, "jump event has a zero jump vector");
    }
}

bool all_finite(std::span<const double> v) noexcept
{
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

bool all_nonnegative(std::span<const double> v) noexcept
{
    return std::all_of(v.begin(), v.end(), [](double x) { return x >= 0.0; });
}

double sup_norm(std::span<const double> v) noexcept
{
    double m = 0.0;
    for (double x : v) {
        m = std::max(m, std::abs(x));
    }
    return m;
}

double dot(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size()) {
        throw Error(ErrorCode::DimensionError, "dot: size mismatch");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

}  // namespace orthoreflect
