// Copyright 2026 The orthoreflect Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "orthoreflect/core.hpp"
#include "orthoreflect/reflect.hpp"

namespace orthoreflect {

/// Initial capital, premium rates and the jump skeleton of Z on [0, horizon].
struct DrivingPath {
    Vector x0;
    Vector c;
    std::vector<JumpEvent> events;
    double horizon = 0.0;

    std::size_t dimension() const noexcept { return x0.size(); }
};

/// Throws InvalidPath (or DimensionError) unless x0 >= 0, c >= 0, event
/// times are strictly increasing inside [0, horizon] and every jump is
/// non-zero with the right dimension.
void validate_path(const DrivingPath& path);

struct ReflectionRecord {
    double t = 0.0;
    /// X_{t-} - dZ_t.
    Vector x_pre;
    Vector dl;
    /// X_t = x_pre + (I - Q) dl. On the terminal record of a failed path this
    /// mirrors x_pre and dl is zero.
    Vector x_post;
    Vector l_cum;
    bool continued = true;
    /// Cone witness, set only on the terminal record of a failed path.
    Vector witness;
};

struct ReflectedSolution {
    std::vector<ReflectionRecord> records;
    std::optional<double> tau_star;
    /// X at the horizon, or the left limit X_{tau*-} when the path failed.
    Vector final_state;
    Vector final_l;
};

struct ReflectOptions {
    double eps = kDefaultConeEps;
    /// Monte Carlo callers only need tau*; skip the per-event records.
    bool keep_records = true;
};

/// Minimal strong solution built jump by jump. Between events X drifts at
/// rate c >= 0 and L is flat; at each event the minimal jump is applied, and
/// the first event whose pre-reflection state leaves C* sets tau* and stops.
ReflectedSolution solve_reflected(const ReflectionMatrix& q, const DrivingPath& path,
                                  ReflectOptions opts = {});

struct UnreflectedRecord {
    double t = 0.0;
    /// X_t after the jump, with no reflection applied.
    Vector x;
};

struct UnreflectedSolution {
    std::vector<UnreflectedRecord> records;
    /// T^i = inf{t >= 0 : X^i_t <= 0}; empty when not ruined by the horizon.
    std::vector<std::optional<double>> ruin_times;
    Vector final_state;
};

UnreflectedSolution solve_unreflected(const DrivingPath& path);

/// One row per (record, coordinate): t,i,x_pre_i,dl_i,x_post_i,l_cum_i.
void write_path_csv(std::ostream& os, const ReflectedSolution& sol);

}  // namespace orthoreflect
