// Copyright 2026 The orthoreflect Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <variant>

#include "doctest.h"
#include "oracles.hpp"
#include "orthoreflect/lp.hpp"

using namespace orthoreflect;

namespace {

const Matrix kTwoFirmA{{1, -2}, {-2, 1}, {1, 0}, {0, 1}};

// Best objective over all vertices of {A x >= b, x >= 0} for k = 2, or
// nullopt if no vertex is feasible.
std::optional<double> vertex_min_2d(const LpProblem& p)
{
    std::vector<Vector> rows;
    Vector rhs;
    for (std::size_t i = 0; i < p.a.rows(); ++i) {
        rows.push_back({p.a(i, 0), p.a(i, 1)});
        rhs.push_back(p.b[i]);
    }
    rows.push_back({1, 0});
    rhs.push_back(0);
    rows.push_back({0, 1});
    rhs.push_back(0);
    std::optional<double> best;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = i + 1; j < rows.size(); ++j) {
            const auto x = oracle::solve_linear({rows[i], rows[j]}, {rhs[i], rhs[j]});
            if (!x) {
                continue;
            }
            bool ok = true;
            for (std::size_t r = 0; r < rows.size(); ++r) {
                if (rows[r][0] * (*x)[0] + rows[r][1] * (*x)[1] < rhs[r] - 1e-9) {
                    ok = false;
                }
            }
            if (ok) {
                const double v = p.c[0] * (*x)[0] + p.c[1] * (*x)[1];
                best = best ? std::min(*best, v) : v;
            }
        }
    }
    return best;
}

}  // namespace

TEST_CASE("solve_lp: minimal jump instance")
{
    const LpProblem p{kTwoFirmA, {1, -6, 0, 0}, {1, 1}};
    const LpOutcome r = solve_lp(p);
    REQUIRE(std::holds_alternative<LpOptimal>(r));
    const auto& opt = std::get<LpOptimal>(r);
    CHECK(opt.x == Vector{1, 0});
    CHECK(opt.objective == 1.0);
}

TEST_CASE("solve_lp: origin optimal when b <= 0")
{
    const LpProblem p{Matrix::identity(2), {-1, -1}, {1, 1}};
    const LpOutcome r = solve_lp(p);
    REQUIRE(std::holds_alternative<LpOptimal>(r));
    CHECK(std::get<LpOptimal>(r).x == Vector{0, 0});
    CHECK(std::get<LpOptimal>(r).objective == 0.0);
}

TEST_CASE("solve_lp: infeasible instance yields (2,1,0,0)-proportional certificate")
{
    const LpProblem p{kTwoFirmA, {1, -1, 0, 0}, {1, 1}};
    const LpOutcome r = solve_lp(p);
    REQUIRE(std::holds_alternative<LpInfeasible>(r));
    const Vector& y = std::get<LpInfeasible>(r).certificate;
    REQUIRE(y.size() == 4);
    CHECK(y[0] > 0);
    CHECK(y[1] == doctest::Approx(0.5 * y[0]));
    CHECK(std::abs(y[2]) <= 1e-12);
    CHECK(std::abs(y[3]) <= 1e-12);
    CHECK(is_farkas_certificate(p, y, 1e-9));
    // y^T A = (0, -1.5) y_1: the first column binds, the second is strictly negative
    const Vector ya = p.a.left_multiply(y);
    CHECK(std::abs(ya[0]) <= 1e-12);
    CHECK(ya[1] == doctest::Approx(-1.5 * y[0]));
}

TEST_CASE("solve_lp: infeasible instance has no feasible grid point")
{
    // brute force over [0, 50]^2 at step 0.01
    const LpProblem p{kTwoFirmA, {1, -1, 0, 0}, {1, 1}};
    bool any = false;
    for (int i = 0; i <= 5000 && !any; ++i) {
        for (int j = 0; j <= 5000; ++j) {
            const double x1 = i * 0.01;
            const double x2 = j * 0.01;
            if (x1 - 2 * x2 >= 1 && -2 * x1 + x2 >= -1) {
                any = true;
                break;
            }
        }
    }
    CHECK_FALSE(any);
}

TEST_CASE("solve_lp: unbounded")
{
    const LpProblem p{Matrix{{1, -1}}, {1}, {-1, 0}};
    CHECK(std::holds_alternative<LpUnbounded>(solve_lp(p)));
}

TEST_CASE("solve_lp: argument errors")
{
    auto code = [](const LpProblem& p, LpOptions o = {}) {
        try {
            solve_lp(p, o);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::IoError;
    };
    CHECK(code({Matrix(2, 2), {0}, {1, 1}}) == ErrorCode::DimensionError);
    CHECK(code({Matrix(1, 2), {0}, {1}}) == ErrorCode::DimensionError);
    CHECK(code({Matrix(1, 1), {std::numeric_limits<double>::infinity()}, {1}}) ==
          ErrorCode::InvalidArgument);
    CHECK(code({Matrix(1, 1), {0}, {1}}, {0.0, 10}) == ErrorCode::InvalidArgument);
}

TEST_CASE("solve_lp: random feasible problems")
{
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> ua(-5.0, 5.0);
    std::uniform_real_distribution<double> ux(0.0, 4.0);
    std::uniform_real_distribution<double> uc(0.1, 3.0);
    std::uniform_int_distribution<int> dim(1, 7);
    for (int trial = 0; trial < 500; ++trial) {
        const auto m = static_cast<std::size_t>(dim(rng));
        const auto k = static_cast<std::size_t>(dim(rng));
        LpProblem p{Matrix(m, k), Vector(m), Vector(k)};
        Vector x0(k);
        for (std::size_t j = 0; j < k; ++j) {
            x0[j] = trial % 3 == 0 && j % 2 == 0 ? 0.0 : ux(rng);
            p.c[j] = uc(rng);
            for (std::size_t i = 0; i < m; ++i) {
                p.a(i, j) = std::round(ua(rng) * 4) / 4;
            }
        }
        const Vector ax = p.a.multiply(x0);
        for (std::size_t i = 0; i < m; ++i) {
            p.b[i] = ax[i] - (trial % 2 == 0 ? 0.0 : ux(rng));
        }
        const LpOutcome r = solve_lp(p);
        REQUIRE(std::holds_alternative<LpOptimal>(r));
        const auto& opt = std::get<LpOptimal>(r);
        CHECK(lp_infeasibility(p, opt.x) <= 1e-9 * (1 + sup_norm(p.b)));
        CHECK(opt.objective <= dot(p.c, x0) + 1e-9);
        CHECK(opt.objective == doctest::Approx(dot(p.c, opt.x)));
    }
}

TEST_CASE("solve_lp: two-variable problems agree with vertex enumeration")
{
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> ua(-3.0, 3.0);
    std::uniform_real_distribution<double> uc(0.1, 2.0);
    std::uniform_int_distribution<int> dim(1, 5);
    int infeasible = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        const auto m = static_cast<std::size_t>(dim(rng));
        LpProblem p{Matrix(m, 2), Vector(m), Vector{uc(rng), uc(rng)}};
        for (std::size_t i = 0; i < m; ++i) {
            p.a(i, 0) = ua(rng);
            p.a(i, 1) = ua(rng);
            p.b[i] = ua(rng);
        }
        const LpOutcome r = solve_lp(p);
        const auto ref = vertex_min_2d(p);
        if (const auto* opt = std::get_if<LpOptimal>(&r)) {
            REQUIRE(ref.has_value());
            CHECK(opt->objective == doctest::Approx(*ref).epsilon(1e-7));
        } else {
            // c > 0 so the problem cannot be unbounded
            REQUIRE(std::holds_alternative<LpInfeasible>(r));
            CHECK_FALSE(ref.has_value());
            CHECK(is_farkas_certificate(p, std::get<LpInfeasible>(r).certificate, 1e-9));
            ++infeasible;
        }
    }
    CHECK(infeasible > 50);
}

TEST_CASE("solve_lp: degenerate problem terminates")
{
    // classic cycling example for Dantzig's rule, rewritten as A x >= b
    const LpProblem p{Matrix{{-0.25, 8, 1, -9}, {-0.5, 12, 0.5, -3}, {0, 0, -1, 0}},
                      {0, 0, -1},
                      {-0.75, 20, -0.5, 6}};
    const LpOutcome r = solve_lp(p);
    REQUIRE(std::holds_alternative<LpOptimal>(r));
    CHECK(std::get<LpOptimal>(r).objective == doctest::Approx(-1.25));
}
