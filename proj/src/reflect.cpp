// Copyright 2026 The orthoreflect Authors.
// SPDX-License-Identifier: Apache-2.0

#include "orthoreflect/reflect.hpp"

#include <algorithm>
#include <cmath>

namespace orthoreflect {

namespace {

void check_state(const ReflectionMatrix& q, std::span<const double> y, const char* who)
{
    if (y.size() != q.size()) {
        throw Error(ErrorCode::DimensionError,
                    std::string(who) + ": vector length does not match Q");
    }
    if (!all_finite(y)) {
        throw Error(ErrorCode::InvalidArgument, std::string(who) + ": non-finite input");
    }
}

}  // namespace

double jump_increment_1d(double x_minus, double dy)
{
    return negative_part(x_minus + dy);
}

LpProblem reflection_lp(const ReflectionMatrix& q, std::span<const double> y,
                        std::span<const double> weights)
{
    LpProblem p;
    p.a = q.identity_minus();
    p.b.resize(y.size());
    std::transform(y.begin(), y.end(), p.b.begin(), [](double v) { return -v; });
    p.c.assign(weights.begin(), weights.end());
    return p;
}

bool is_cone_witness(const ReflectionMatrix& q, std::span<const double> y,
                     std::span<const double> u, double eps)
{
    if (u.size() != q.size() || y.size() != q.size()) {
        return false;
    }
    if (std::any_of(u.begin(), u.end(), [eps](double v) { return v < -eps; })) {
        return false;
    }
    const Vector ua = q.identity_minus().left_multiply(u);
    if (std::any_of(ua.begin(), ua.end(), [eps](double v) { return v > eps; })) {
        return false;
    }
    return dot(u, y) < -eps;
}

ConeTestResult in_dual_cone(const ReflectionMatrix& q, std::span<const double> y, double eps)
{
    check_state(q, y, "in_dual_cone");
    if (all_nonnegative(y)) {
        return ConeMember{};
    }
    const Vector zero(q.size(), 0.0);
    const LpOutcome out = solve_lp(reflection_lp(q, y, zero), LpOptions{.eps = eps});
    if (const auto* inf = std::get_if<LpInfeasible>(&out)) {
        return ConeNotMember{inf->certificate};
    }
    return ConeMember{};
}

std::optional<std::array<std::array<double, 2>, 2>> dual_cone_generators_2d(
    const ReflectionMatrix& q)
{
    if (q.size() != 2) {
        throw Error(ErrorCode::DimensionError, "dual_cone_generators_2d requires n = 2");
    }
    const double q12 = q(0, 1);
    const double q21 = q(1, 0);
    if (q12 * q21 < 1.0) {
        return std::nullopt;
    }
    return std::array<std::array<double, 2>, 2>{{{1.0, q12}, {q21, 1.0}}};
}

bool in_dual_cone_2d(const ReflectionMatrix& q, std::span<const double> y, double eps)
{
    const auto gens = dual_cone_generators_2d(q);
    if (y.size() != 2) {
        throw Error(ErrorCode::DimensionError, "in_dual_cone_2d requires a 2-vector");
    }
    if (!gens) {
        return true;
    }
    for (const auto& g : *gens) {
        if (g[0] * y[0] + g[1] * y[1] < -eps) {
            return false;
        }
    }
    return true;
}

MinimalJumpResult minimal_jump(const ReflectionMatrix& q, std::span<const double> y, double eps)
{
    const Vector ones(q.size(), 1.0);
    return minimal_jump(q, y, ones, eps);
}

MinimalJumpResult minimal_jump(const ReflectionMatrix& q, std::span<const double> y,
                               std::span<const double> weights, double eps)
{
    check_state(q, y, "minimal_jump");
    if (weights.size() != q.size()
        || std::any_of(weights.begin(), weights.end(),
                       [](double a) { return !(a > 0.0) || !std::isfinite(a); })) {
        throw Error(ErrorCode::InvalidArgument,
                    "minimal_jump: weights must be finite and strictly positive");
    }
    if (all_nonnegative(y)) {
        return ReflectionJump{Vector(q.size(), 0.0)};
    }
    const LpOutcome out = solve_lp(reflection_lp(q, y, weights), LpOptions{.eps = eps});
    if (const auto* opt = std::get_if<LpOptimal>(&out)) {
        return ReflectionJump{opt->x};
    }
    if (const auto* inf = std::get_if<LpInfeasible>(&out)) {
        return ReflectionFailure{inf->certificate};
    }
    // The objective is bounded below by 0 on dL >= 0.
    throw Error(ErrorCode::NumericalBreakdown, "minimal_jump: LP reported unbounded");
}

Vector gamma_operator(const ReflectionMatrix& q, std::span<const double> y,
                      std::span<const double> z)
{
    check_state(q, y, "gamma_operator");
    if (z.size() != q.size()) {
        throw Error(ErrorCode::DimensionError, "gamma_operator: z has wrong length");
    }
    const std::size_t n = q.size();
    Vector out(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = y[i];
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) {
                s -= q(i, j) * z[j];
            }
        }
        out[i] = negative_part(s);
    }
    return out;
}

FixedPointResult least_fixed_point(const ReflectionMatrix& q, std::span<const double> y,
                                   FixedPointOptions opts)
{
    check_state(q, y, "least_fixed_point");
    if (!(opts.tol > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "least_fixed_point: tol must be positive");
    }
    const double bound = opts.divergence_factor * (1.0 + sup_norm(y));
    FixedPointResult res;
    res.z.assign(q.size(), 0.0);
    while (res.iterations < opts.max_iter) {
        Vector next = gamma_operator(q, y, res.z);
        ++res.iterations;
        double step = 0.0;
        for (std::size_t i = 0; i < next.size(); ++i) {
            step = std::max(step, std::abs(next[i] - res.z[i]));
        }
        res.z = std::move(next);
        if (step <= opts.tol) {
            res.status = FixedPointResult::Status::Converged;
            return res;
        }
        if (sup_norm(res.z) > bound) {
            res.status = FixedPointResult::Status::Diverged;
            return res;
        }
    }
    res.status = FixedPointResult::Status::MaxIterations;
    return res;
}

}  // namespace orthoreflect
