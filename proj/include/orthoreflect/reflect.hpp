// Copyright 2026 The orthoreflect Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <variant>

#include "orthoreflect/core.hpp"
#include "orthoreflect/lp.hpp"

namespace orthoreflect {

// Cone geometry used throughout:
//   C  = { u >= 0 : u^T (I - Q) <= 0 }
//   C* = { y : u^T y >= 0 for all u in C }
// A pre-reflection state y = X_{t-} - dZ_t can be reflected back into the
// orthant iff y is in C*.

inline constexpr double kDefaultConeEps = 1e-9;

struct ConeMember {};

/// u in C with u^T y < 0, certifying y is not in C*.
struct ConeNotMember {
    Vector witness;
};

using ConeTestResult = std::variant<ConeMember, ConeNotMember>;

inline bool is_member(const ConeTestResult& r) noexcept
{
    return std::holds_alternative<ConeMember>(r);
}

/// Minimal reflection jump dL >= 0.
struct ReflectionJump {
    Vector dl;
};

/// The jump cannot be absorbed; carries the same witness as ConeNotMember.
struct ReflectionFailure {
    Vector witness;
};

using MinimalJumpResult = std::variant<ReflectionJump, ReflectionFailure>;

/// Increment of the one-dimensional Skorokhod regulator at a jump:
/// dL = (x_minus + dy)_-.
double jump_increment_1d(double x_minus, double dy);

/// The LP behind both the membership test and the minimal jump:
/// minimize weights.dL  s.t.  (I - Q) dL >= -y,  dL >= 0.
LpProblem reflection_lp(const ReflectionMatrix& q, std::span<const double> y,
                        std::span<const double> weights);

/// Membership of y in the closed dual cone C*, decided by Phase I
/// feasibility of reflection_lp. A NotMember witness is the Farkas
/// certificate of that LP; its stacked form [u; v] with v = -u^T (I - Q)
/// annihilates [I - Q; I].
ConeTestResult in_dual_cone(const ReflectionMatrix& q, std::span<const double> y,
                            double eps = kDefaultConeEps);

/// True when u >= -eps, u^T (I - Q) <= eps and u^T y < -eps.
bool is_cone_witness(const ReflectionMatrix& q, std::span<const double> y,
                     std::span<const double> u, double eps = kDefaultConeEps);

/// Extreme rays (1, q12) and (q21, 1) of C for n = 2 when q12 * q21 >= 1;
/// empty when C = {0}. Throws DimensionError for n != 2.
std::optional<std::array<std::array<double, 2>, 2>> dual_cone_generators_2d(
    const ReflectionMatrix& q);

/// n = 2 membership from the generator inequalities
/// y1 + q12 y2 >= -eps and q21 y1 + y2 >= -eps.
bool in_dual_cone_2d(const ReflectionMatrix& q, std::span<const double> y,
                     double eps = kDefaultConeEps);

/// Componentwise-minimal reflection jump for the pre-reflection state y.
/// y >= 0 returns the zero jump without solving anything.
MinimalJumpResult minimal_jump(const ReflectionMatrix& q, std::span<const double> y,
                               double eps = kDefaultConeEps);

/// Same, with objective weights a > 0 replacing the all-ones vector. The
/// optimizer does not depend on a.
MinimalJumpResult minimal_jump(const ReflectionMatrix& q, std::span<const double> y,
                               std::span<const double> weights, double eps);

/// Gamma[z]_i = (y_i - sum_{j != i} q_ij z_j)_-.
Vector gamma_operator(const ReflectionMatrix& q, std::span<const double> y,
                      std::span<const double> z);

struct FixedPointOptions {
    double tol = 1e-12;
    std::size_t max_iter = 1000000;
    /// Abort once ||z||_inf > divergence_factor * (1 + ||y||_inf).
    double divergence_factor = 1e6;
};

struct FixedPointResult {
    enum class Status { Converged, Diverged, MaxIterations };

    Status status = Status::MaxIterations;
    Vector z;
    std::size_t iterations = 0;

    bool converged() const noexcept { return status == Status::Converged; }
};

/// Iterates z <- Gamma[z] from z = 0 until successive iterates differ by at
/// most tol in sup-norm. The orbit is non-decreasing, bounded by the minimal
/// jump when one exists and unbounded otherwise.
FixedPointResult least_fixed_point(const ReflectionMatrix& q, std::span<const double> y,
                                   FixedPointOptions opts = {});

}  // namespace orthoreflect
