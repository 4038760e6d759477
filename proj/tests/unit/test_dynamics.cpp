// Copyright 2026 The orthoreflect Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <variant>

#include "doctest.h"
#include "oracles.hpp"
#include "orthoreflect/dynamics.hpp"

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

// Random 1-D path with dyadic data, so every sum along the path is exact.
DrivingPath dyadic_path_1d(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> count(0, 40);
    std::uniform_int_distribution<int> gap(1, 8);
    std::uniform_int_distribution<int> size(-8, 64);
    std::uniform_int_distribution<int> small(0, 16);
    DrivingPath p;
    p.x0 = {small(rng) / 4.0};
    p.c = {small(rng) / 8.0};
    double t = 0.0;
    const int k = count(rng);
    for (int e = 0; e < k; ++e) {
        t += gap(rng) / 4.0;
        int dz = size(rng);
        if (dz == 0) {
            dz = 1;
        }
        p.events.push_back({t, {dz / 8.0}});
    }
    p.horizon = t + 1.0;
    return p;
}

}  // namespace

TEST_CASE("pure drift")
{
    const DrivingPath p{{5, 5}, {1.2, 1.2}, {}, 10};
    const ReflectedSolution s = solve_reflected(ReflectionMatrix::symmetric_pair(1.05), p);
    CHECK(s.records.empty());
    CHECK_FALSE(s.tau_star.has_value());
    CHECK(s.final_state[0] == doctest::Approx(17.0));
    CHECK(s.final_state[1] == doctest::Approx(17.0));
    CHECK(s.final_l == Vector{0, 0});
}

TEST_CASE("single continuable event")
{
    const DrivingPath p{{0, 5}, {0, 0}, {{1.0, {1, -1}}}, 2};
    const ReflectedSolution s = solve_reflected(ReflectionMatrix::symmetric_pair(2.0), p);
    REQUIRE(s.records.size() == 1);
    const ReflectionRecord& r = s.records[0];
    CHECK(r.t == 1.0);
    CHECK(r.x_pre == Vector{-1, 6});
    CHECK(r.dl == Vector{1, 0});
    CHECK(r.x_post == Vector{0, 4});
    CHECK(r.l_cum == Vector{1, 0});
    CHECK(r.continued);
    CHECK_FALSE(s.tau_star.has_value());
    CHECK(s.final_state == Vector{0, 4});
}

TEST_CASE("single failing event")
{
    const ReflectionMatrix q = ReflectionMatrix::symmetric_pair(2.0);
    const DrivingPath p{{0, 2}, {0, 0}, {{1.0, {1, 1}}, {1.5, {1, 0}}}, 2};
    const ReflectedSolution s = solve_reflected(q, p);
    REQUIRE(s.tau_star.has_value());
    CHECK(*s.tau_star == 1.0);
    REQUIRE(s.records.size() == 1);
    const ReflectionRecord& r = s.records[0];
    CHECK(r.x_pre == Vector{-1, 1});
    CHECK_FALSE(r.continued);
    CHECK(r.dl == Vector{0, 0});
    CHECK(r.witness[1] == doctest::Approx(0.5 * r.witness[0]));
    CHECK(is_cone_witness(q, r.x_pre, r.witness));
    CHECK(s.final_state == Vector{0, 2});
}

TEST_CASE("event at t = 0 uses X_{0-}")
{
    const DrivingPath p{{1, 1}, {1, 1}, {{0.0, {3, 0}}}, 1};
    const ReflectedSolution s = solve_reflected(ReflectionMatrix::symmetric_pair(0.5), p);
    REQUIRE(s.records.size() == 1);
    CHECK(s.records[0].x_pre == Vector{-2, 1});
    CHECK(s.records[0].dl == Vector{2, 0});
    CHECK(s.records[0].x_post == Vector{0, 0});
}

TEST_CASE("keep_records = false still reports tau*")
{
    const DrivingPath p{{0, 2}, {0, 0}, {{1.0, {1, 1}}}, 2};
    ReflectOptions opts;
    opts.keep_records = false;
    const ReflectedSolution s = solve_reflected(ReflectionMatrix::symmetric_pair(2.0), p, opts);
    CHECK(s.records.empty());
    REQUIRE(s.tau_star.has_value());
    CHECK(*s.tau_star == 1.0);
}

TEST_CASE("path validation")
{
    const ReflectionMatrix q = ReflectionMatrix::symmetric_pair(1.0);
    CHECK(code_of([&] { solve_reflected(q, {{-1, 1}, {0, 0}, {}, 1}); }) ==
          ErrorCode::InvalidPath);
    CHECK(code_of([&] { solve_reflected(q, {{1, 1}, {-1, 0}, {}, 1}); }) ==
          ErrorCode::InvalidPath);
    CHECK(code_of([&] {
              solve_reflected(q, {{1, 1}, {0, 0}, {{1, {1, 0}}, {1, {0, 1}}}, 2});
          }) == ErrorCode::InvalidPath);
    CHECK(code_of([&] {
              solve_reflected(q, {{1, 1}, {0, 0}, {{2, {1, 0}}, {1, {0, 1}}}, 3});
          }) == ErrorCode::InvalidPath);
    CHECK(code_of([&] { solve_reflected(q, {{1, 1}, {0, 0}, {{3, {1, 0}}}, 2}); }) ==
          ErrorCode::InvalidPath);
    CHECK(code_of([&] { solve_reflected(q, {{1, 1}, {0, 0}, {{1, {0, 0}}}, 2}); }) ==
          ErrorCode::InvalidPath);
    CHECK(code_of([&] { solve_reflected(q, {{1, 1}, {0}, {}, 1}); }) ==
          ErrorCode::DimensionError);
    CHECK(code_of([&] { solve_reflected(q, {{1, 1, 1}, {0, 0, 0}, {}, 1}); }) ==
          ErrorCode::DimensionError);
}

TEST_CASE("solve_unreflected examples")
{
    const auto t = [](double c, double dz) {
        return solve_unreflected({{5}, {c}, {{2, {dz}}}, 10}).ruin_times[0];
    };
    CHECK(t(1, 8) == 2.0);
    CHECK_FALSE(t(1, 6).has_value());
    CHECK(t(0, 5) == 2.0);

    const UnreflectedSolution s = solve_unreflected({{5}, {1}, {{2, {6}}}, 10});
    REQUIRE(s.records.size() == 1);
    CHECK(s.records[0].x == Vector{1});
    CHECK(s.final_state == Vector{9});

    CHECK(solve_unreflected({{0, 3}, {1, 1}, {}, 1}).ruin_times[0] == 0.0);
}

TEST_CASE("one-dimensional regulator equals the running sup, exactly")
{
    std::mt19937_64 rng(101);
    const ReflectionMatrix q1 = validate_reflection_matrix(Matrix(1, 1));
    for (int k = 0; k < 300; ++k) {
        const DrivingPath p = dyadic_path_1d(rng);
        const ReflectedSolution s = solve_reflected(q1, p);
        const Vector expected = oracle::skorokhod_regulator_1d(p);
        REQUIRE(s.records.size() == expected.size());
        for (std::size_t e = 0; e < expected.size(); ++e) {
            CHECK(s.records[e].l_cum[0] == expected[e]);
        }
    }
}

TEST_CASE("records are non-negative and conserve mass")
{
    std::mt19937_64 rng(103);
    std::exponential_distribution<double> gap(1.0);
    std::exponential_distribution<double> claim(0.5);
    for (int k = 0; k < 300; ++k) {
        const std::size_t n = 2 + static_cast<std::size_t>(k % 4);
        const ReflectionMatrix q = oracle::random_q(rng, n, 1.5);
        DrivingPath p;
        p.x0 = oracle::random_vector(rng, n, 0, 5);
        p.c = oracle::random_vector(rng, n, 0, 1);
        double t = 0.0;
        for (int e = 0; e < 20; ++e) {
            t += gap(rng);
            Vector dz(n);
            for (double& d : dz) {
                d = claim(rng);
            }
            p.events.push_back({t, dz});
        }
        p.horizon = t;
        const ReflectedSolution s = solve_reflected(q, p);
        for (const ReflectionRecord& r : s.records) {
            if (!r.continued) {
                CHECK(&r == &s.records.back());
                continue;
            }
            CHECK(all_nonnegative(r.x_post));
            const Vector move = q.identity_minus().multiply(r.dl);
            double lhs = 0.0;
            double rhs = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                lhs += r.x_post[i];
                rhs += r.x_pre[i] + move[i];
            }
            CHECK(std::abs(lhs - rhs) <= 1e-9 * (1 + sup_norm(r.l_cum)));
        }
    }
}

TEST_CASE("any feasible jump sequence pushes at least as hard as the minimal one")
{
    std::mt19937_64 rng(107);
    std::exponential_distribution<double> gap(1.0);
    std::exponential_distribution<double> claim(0.7);
    std::uniform_real_distribution<double> extra(0.0, 2.0);
    int compared = 0;
    for (int k = 0; k < 300; ++k) {
        const ReflectionMatrix q = oracle::random_q(rng, 2, 2.0);
        DrivingPath p;
        p.x0 = oracle::random_vector(rng, 2, 0, 3);
        p.c = oracle::random_vector(rng, 2, 0, 1);
        double t = 0.0;
        for (int e = 0; e < 15; ++e) {
            t += gap(rng);
            p.events.push_back({t, {claim(rng), claim(rng)}});
        }
        p.horizon = t;
        const ReflectedSolution s = solve_reflected(q, p);

        // alternative: minimal jump at the alternative state plus a random
        // extra push, shrunk until the post-jump state stays in the orthant
        Vector x = p.x0;
        Vector l_alt{0, 0};
        double t_prev = 0.0;
        for (std::size_t e = 0; e < s.records.size() && s.records[e].continued; ++e) {
            const JumpEvent& ev = p.events[e];
            Vector y(2);
            for (std::size_t i = 0; i < 2; ++i) {
                y[i] = x[i] + p.c[i] * (ev.t - t_prev) - ev.dz[i];
            }
            const MinimalJumpResult mj = minimal_jump(q, y);
            if (!std::holds_alternative<ReflectionJump>(mj)) {
                break;
            }
            Vector dl = std::get<ReflectionJump>(mj).dl;
            Vector push{extra(rng), extra(rng)};
            Vector cand(2);
            for (int shrink = 0; shrink < 60; ++shrink) {
                cand = {dl[0] + push[0], dl[1] + push[1]};
                if (oracle::reflection_feasible(q, y, cand, 0.0)) {
                    break;
                }
                push = {push[0] / 2, push[1] / 2};
                cand = dl;
            }
            const Vector move = q.identity_minus().multiply(cand);
            for (std::size_t i = 0; i < 2; ++i) {
                x[i] = std::max(0.0, y[i] + move[i]);
                l_alt[i] += cand[i];
                CHECK(l_alt[i] >= s.records[e].l_cum[i] - 1e-9 * (1 + l_alt[i]));
            }
            t_prev = ev.t;
            ++compared;
        }
    }
    CHECK(compared > 1000);
}

TEST_CASE("write_path_csv")
{
    const DrivingPath p{{0, 5}, {0, 0}, {{1.0, {1, -1}}}, 2};
    const ReflectedSolution s = solve_reflected(ReflectionMatrix::symmetric_pair(2.0), p);
    std::ostringstream os;
    write_path_csv(os, s);
    CHECK(os.str() ==
          "t,i,x_pre_i,dl_i,x_post_i,l_cum_i\n"
          "1,0,-1,1,0,1\n"
          "1,1,6,0,4,0\n");
}
