// Copyright 2026 The orthoreflect Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>

#include "orthoreflect/core.hpp"
#include "orthoreflect/dynamics.hpp"
#include "orthoreflect/rng.hpp"

namespace orthoreflect {

/// Two firms with compound Poisson claims driven by three independent
/// Poisson streams: stream 1 hits firm 1, stream 2 hits firm 2 and the
/// common-shock stream 3 hits both. Claims are exponential.
struct ScenarioConfig {
    std::array<double, 2> x0{5.0, 5.0};
    std::array<double, 2> c{1.2, 1.2};
    std::array<double, 3> lambda{0.6, 0.6, 0.6};
    std::array<double, 2> claim_rate{1.0, 1.0};
    /// Reinsurance friction: q12 = q21 = 1 + alpha.
    double alpha = 0.05;
    double horizon = 500.0;
    std::uint64_t n_trials = 20000;
    std::uint64_t seed = 0;
    std::size_t grid_points = 501;

    bool operator==(const ScenarioConfig&) const = default;
};

/// Throws ConfigError naming the offending field.
void validate_config(const ScenarioConfig& cfg);

ReflectionMatrix reinsurance_matrix(const ScenarioConfig& cfg);

/// Superposition sampling: Exp(sum lambda) inter-arrivals, categorical event
/// type, fresh exponential claims per event; events past the horizon are
/// dropped.
DrivingPath sample_driving(CounterRng& rng, const ScenarioConfig& cfg);

struct TrialOutcome {
    std::optional<double> t1;
    std::optional<double> t2;
    std::optional<double> tau_star;
};

/// One driving path shared by the unreflected firms and the reflected
/// system.
TrialOutcome run_trial(CounterRng& rng, const ScenarioConfig& cfg);
TrialOutcome evaluate_trial(const DrivingPath& path, const ReflectionMatrix& q);

/// Curve order in RuinCurves and in the CSV.
enum class RuinEvent : std::size_t {
    FirstFirm = 0,   ///< T1 <= t
    SecondFirm = 1,  ///< T2 <= t
    Both = 2,        ///< T1 <= t and T2 <= t
    Either = 3,      ///< T1 <= t or T2 <= t
    Reinsured = 4,   ///< tau* <= t
};

inline constexpr std::size_t kNumRuinEvents = 5;
const char* to_string(RuinEvent e) noexcept;

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double half_width() const noexcept { return 0.5 * (hi - lo); }
};

/// 95% Wilson score interval for k successes out of n.
Interval wilson_interval(std::uint64_t k, std::uint64_t n, double z = 1.959963984540054);

struct RuinCurves {
    Vector grid;
    /// counts[e][g]: trials with event e by time grid[g].
    std::array<std::vector<std::uint64_t>, kNumRuinEvents> counts;
    std::array<Vector, kNumRuinEvents> curves;
    std::array<Vector, kNumRuinEvents> ci_half_width;
    std::uint64_t n_trials = 0;

    Interval band(RuinEvent e, std::size_t g) const;
};

struct RunOptions {
    /// 0 means std::thread::hardware_concurrency().
    unsigned threads = 0;
    std::function<void(std::uint64_t done, std::uint64_t total)> progress;
};

/// Uniform grid of grid_points times on [0, horizon].
Vector time_grid(const ScenarioConfig& cfg);

/// Monte Carlo estimates of the five ruin-time CDFs. Trial i always uses
/// CounterRng(seed, i), and counts are merged by integer addition, so the
/// result does not depend on the thread count.
RuinCurves ruin_curves(const ScenarioConfig& cfg, const RunOptions& run = {});

/// Header t,p_t1,ci_t1,...,p_tau,ci_tau; 10 significant digits.
void write_ruin_curves_csv(std::ostream& os, const RuinCurves& rc);

/// Rate at which X_{0-} - Z_t jumps into the ruin event at t = 0, i.e. the
/// slope at the origin of the corresponding CDF. Reinsured uses the n = 2
/// generator inequalities of C* and adaptive Gauss-Kronrod quadrature for
/// the common-shock term; the others are closed-form exponential tails.
double initial_intensity(RuinEvent e, const ScenarioConfig& cfg, double quad_tol = 1e-10);

struct SlopeEstimate {
    double slope = 0.0;
    double std_error = 0.0;
};

/// Slope at t = 0 of the empirical CDF from the counts at grid points h and
/// 2h (Richardson extrapolation (4F(h) - F(2h)) / 2h, which cancels the
/// O(h) curvature term). The standard error is exact for this estimator
/// since both counts come from the same trials.
SlopeEstimate empirical_initial_slope(const RuinCurves& rc, RuinEvent e,
                                      std::size_t h_index);

/// Full event log of one trial for both systems:
/// system,t,i,x_pre_i,dl_i,x_post_i,l_cum_i,marker. Unreflected rows mark
/// ruin events with "ruin"; the failing reflected event is marked
/// "tau_star". Returns true when tau* was hit.
bool write_trial_log(std::ostream& os, const ScenarioConfig& cfg, std::uint64_t seed);

}  // namespace orthoreflect
