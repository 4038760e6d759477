// Copyright 2026 The orthoreflect Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <variant>

#include "orthoreflect/core.hpp"

namespace orthoreflect {

/// minimize c.x  subject to  A x >= b,  x >= 0.
struct LpProblem {
    Matrix a;
    Vector b;
    Vector c;
};

struct LpOptimal {
    Vector x;
    double objective = 0.0;
};

/// Farkas certificate for {A x >= b, x >= 0}: y >= 0, y^T A <= 0, y^T b > 0.
struct LpInfeasible {
    Vector certificate;
};

struct LpUnbounded {};

using LpOutcome = std::variant<LpOptimal, LpInfeasible, LpUnbounded>;

struct LpOptions {
    /// Pivot admission, reduced-cost and feasibility tolerance.
    double eps = 1e-9;
    std::size_t max_pivots = 50000;
};

/// Dense two-phase simplex with Bland's rule.
///
/// Phase I minimizes the sum of artificial variables over rows with b_i > 0;
/// rows with b_i <= 0 start with their surplus variable basic. When the
/// Phase I optimum exceeds eps, the certificate is read off the Phase I
/// duals. Throws NumericalBreakdown if the pivot limit is hit or a returned
/// point/certificate fails its own re-check.
LpOutcome solve_lp(const LpProblem& p, LpOptions opts = {});

/// max_i (b_i - (A x)_i, -x_j) clipped at 0: how far x is from feasibility.
double lp_infeasibility(const LpProblem& p, std::span<const double> x);

/// True when y is a valid infeasibility certificate at tolerance eps:
/// y >= -eps, y^T A <= eps componentwise, y^T b > eps.
bool is_farkas_certificate(const LpProblem& p, std::span<const double> y, double eps);

}  // namespace orthoreflect
