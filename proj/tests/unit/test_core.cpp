// Copyright 2026 The orthoreflect Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "orthoreflect/core.hpp"

using namespace orthoreflect;

namespace {

ErrorCode code_of(auto&& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected orthoreflect::Error");
    return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("validate_reflection_matrix accepts non-negative zero-diagonal matrices")
{
    const ReflectionMatrix q = validate_reflection_matrix(Matrix{{0, 2}, {2, 0}});
    CHECK(q.size() == 2);
    CHECK(q(0, 1) == 2.0);
    CHECK(q(1, 0) == 2.0);

    const ReflectionMatrix z = validate_reflection_matrix(Matrix{{0, 0}, {0, 0}});
    CHECK(z(0, 1) == 0.0);
}

TEST_CASE("validate_reflection_matrix rejects bad input")
{
    CHECK(code_of([] { validate_reflection_matrix(Matrix{{0, -1}, {1, 0}}); }) ==
          ErrorCode::NegativeEntry);
    CHECK(code_of([] { validate_reflection_matrix(Matrix{{1, 0}, {0, 0}}); }) ==
          ErrorCode::NonzeroDiagonal);
    CHECK(code_of([] { validate_reflection_matrix(Matrix(2, 3)); }) == ErrorCode::NonSquare);
    CHECK(code_of([] { validate_reflection_matrix(Matrix(0, 0)); }) ==
          ErrorCode::InvalidArgument);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK(code_of([&] { validate_reflection_matrix(Matrix{{0, nan}, {0, 0}}); }) ==
          ErrorCode::InvalidArgument);
    CHECK(code_of([] { Matrix m{{0, 1}, {0}}; }) == ErrorCode::InvalidArgument);
}

TEST_CASE("identity_minus")
{
    const ReflectionMatrix q = ReflectionMatrix::symmetric_pair(2.0);
    CHECK(q.identity_minus() == Matrix{{1, -2}, {-2, 1}});
}

TEST_CASE("Matrix products")
{
    const Matrix m{{1, 2, 3}, {4, 5, 6}};
    CHECK(m.multiply(Vector{1, 0, -1}) == Vector{-2, -2});
    CHECK(m.left_multiply(Vector{1, -1}) == Vector{-3, -3, -3});
}

TEST_CASE("spectral_radius examples")
{
    CHECK(spectral_radius(ReflectionMatrix::symmetric_pair(2.0)) == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(spectral_radius(validate_reflection_matrix(Matrix(3, 3))) == 0.0);
    CHECK(spectral_radius(ReflectionMatrix::symmetric_pair(1.05)) ==
          doctest::Approx(1.05).epsilon(1e-10));
}

TEST_CASE("spectral_radius matches sqrt(q12 q21) for random 2x2")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 5.0);
    for (int k = 0; k < 500; ++k) {
        const double a = u(rng);
        const double b = k % 10 == 0 ? 0.0 : u(rng);
        const ReflectionMatrix q = validate_reflection_matrix(Matrix{{0, a}, {b, 0}});
        CHECK(std::abs(spectral_radius(q) - std::sqrt(a * b)) <= 1e-9);
    }
}

TEST_CASE("spectral_radius on reducible and periodic matrices")
{
    // cycle 0 -> 1 -> 2 -> 0 has period 3; rho = (2*3*4)^(1/3)
    const ReflectionMatrix cyc =
        validate_reflection_matrix(Matrix{{0, 2, 0}, {0, 0, 3}, {4, 0, 0}});
    CHECK(std::abs(spectral_radius(cyc) - std::cbrt(24.0)) <= 1e-9);

    // upper triangular: every eigenvalue is 0
    const ReflectionMatrix tri =
        validate_reflection_matrix(Matrix{{0, 5, 7}, {0, 0, 1}, {0, 0, 0}});
    CHECK(spectral_radius(tri) == 0.0);

    // two blocks, the larger wins
    const ReflectionMatrix blocks = validate_reflection_matrix(
        Matrix{{0, 0.5, 9, 0}, {0.5, 0, 0, 0}, {0, 0, 0, 3}, {0, 0, 3, 0}});
    CHECK(std::abs(spectral_radius(blocks) - 3.0) <= 1e-9);
}

TEST_CASE("spectral_radius option errors")
{
    const ReflectionMatrix q = ReflectionMatrix::symmetric_pair(2.0);
    CHECK(code_of([&] { spectral_radius(q, {0.0, 100}); }) == ErrorCode::InvalidArgument);
    const ReflectionMatrix r =
        validate_reflection_matrix(Matrix{{0, 1, 3}, {2, 0, 0.1}, {0.5, 7, 0}});
    CHECK(code_of([&] { spectral_radius(r, {1e-15, 1}); }) == ErrorCode::NoConvergence);
}

TEST_CASE("negative_part")
{
    CHECK(negative_part(-3.0) == 3.0);
    CHECK(negative_part(5.0) == 0.0);
    CHECK(negative_part(0.0) == 0.0);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-100.0, 100.0);
    for (int k = 0; k < 1000; ++k) {
        const double a = u(rng);
        if (a >= 0) {
            CHECK(negative_part(a) == 0.0);
        } else {
            CHECK(a + negative_part(a) == 0.0);
        }
    }
}

TEST_CASE("check_jump_event")
{
    check_jump_event({0.0, {1.0, 0.0}}, 2);
    CHECK(code_of([] { check_jump_event({-1.0, {1.0}}, 1); }) == ErrorCode::InvalidPath);
    CHECK(code_of([] { check_jump_event({1.0, {0.0, 0.0}}, 2); }) == ErrorCode::InvalidPath);
    CHECK(code_of([] { check_jump_event({1.0, {1.0}}, 2); }) == ErrorCode::DimensionError);
}
